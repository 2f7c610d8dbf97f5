#pragma once

#include <vector>

#include "modcat/cyclotomic.hpp"

namespace modcat {

// Dense row-major matrix of exact cyclotomic entries.
class CycMatrix {
public:
    CycMatrix() = default;
    CycMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static CycMatrix identity(long n);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Cyclotomic& at(long i, long j) { return a_[i * cols_ + j]; }
    const Cyclotomic& at(long i, long j) const { return a_[i * cols_ + j]; }

    CycMatrix operator*(const CycMatrix& o) const;
    CycMatrix operator+(const CycMatrix& o) const;
    CycMatrix operator-(const CycMatrix& o) const;
    bool operator==(const CycMatrix& o) const;
    bool operator!=(const CycMatrix& o) const { return !(*this == o); }

    CycMatrix transposed() const;
    CycMatrix scaled(const Cyclotomic& c) const;
    CycMatrix pow(long e) const;  // e >= 0, square matrices

    // P * A * P^T for the permutation matrix P with P[perm[i], i] = 1, i.e.
    // result(perm[i], perm[j]) = A(i, j).
    CycMatrix conjugated_by_permutation(const std::vector<int>& perm) const;

    static CycMatrix kronecker(const CycMatrix& a, const CycMatrix& b);

    bool is_symmetric() const;
    bool is_diagonal() const;

    // Exact rank over the cyclotomic field (cross-multiplication
    // elimination, no inverses needed).
    long rank() const;
    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

    CycMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

private:
    long rows_ = 0, cols_ = 0;
    std::vector<Cyclotomic> a_;
};

// Basis of {M : M*A = A*M for all A in mats}, where the t-style first
// element may be diagonal for fast blocking. Returns the dimension of the
// commutant; used for irreducibility tests.
long commutant_dimension(const CycMatrix& s, const std::vector<long>& t_exponents,
                         long t_modulus);

}  // namespace modcat
