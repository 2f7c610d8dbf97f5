#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modcat/numtheory.hpp"

namespace modcat {

// Result of a floating embedding together with a rigorous absolute error
// bound on both components.
struct ComplexApprox {
    double re = 0.0;
    double im = 0.0;
    double err = 0.0;
};

// An exact element of Q(zeta_M), stored as a length-M vector of rational
// coefficients of zeta_M^i and kept reduced modulo the M-th cyclotomic
// polynomial: indices >= phi(M) are always zero. Equality of canonical
// forms is exact equality in the field. Values are immutable after
// construction; all operations return new values.
class Cyclotomic {
public:
    Cyclotomic() : conductor_(1), coeff_(1, BigRational(0)) {}
    explicit Cyclotomic(const BigRational& q) : conductor_(1), coeff_(1, q) {}
    explicit Cyclotomic(long n) : conductor_(1), coeff_(1, BigRational(n)) {}

    // zeta_M^e, stored at the minimal conductor M/gcd(M, e)
    static Cyclotomic zeta(long M, long e);
    static Cyclotomic zero() { return Cyclotomic(); }
    static Cyclotomic one() { return Cyclotomic(1); }
    // Reduces the given length-M vector to canonical form.
    static Cyclotomic from_coefficients(long M, std::vector<BigRational> c);

    long conductor() const { return conductor_; }
    const std::vector<BigRational>& coefficients() const { return coeff_; }

    bool is_zero() const;
    bool is_rational() const;
    // Requires is_rational().
    BigRational rational_value() const;
    bool is_integer() const;

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic scaled(const BigRational& q) const;
    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // Multiplicative inverse by the extended Euclidean algorithm against
    // Phi_M; throws on zero.
    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;  // e may be negative (uses inverse)

    // Image under zeta_M -> zeta_M^a; requires gcd(a, M) = 1.
    Cyclotomic galois(long a) const;
    Cyclotomic conjugate() const { return galois(-1); }
    bool is_real() const { return conjugate() == *this; }

    // Re-express at conductor L; requires conductor | L.
    Cyclotomic promoted(long L) const;

    // Floating embedding of sum coeff_i * exp(2*pi*i*idx/M) at >= `bits`
    // precision, with a rigorous error bound.
    ComplexApprox embed(long bits = 53) const;

    // Decides sign of a known-real value by interval arithmetic with
    // precision doubling until the interval excludes zero. Requires
    // is_real(); returns 0 only for the exact zero.
    int sign_real() const;
    bool is_positive_real() const { return is_real() && sign_real() > 0; }

    // If this value is a root of unity, returns (order, exponent) with
    // value = zeta_order^exponent and gcd handled so the order is exact.
    // Uses a numeric prefilter over candidates in Q(zeta_{2M}) followed by
    // exact verification.
    std::optional<std::pair<long, long>> as_root_of_unity() const;

    // True iff the value lies in Q(zeta_D); decided exactly by invariance
    // under Gal(Q_M / Q_D). Requires D | conductor.
    bool lies_in(long D) const;

    std::string to_string() const;  // human-readable, deterministic

private:
    Cyclotomic(long M, std::vector<BigRational> c) : conductor_(M), coeff_(std::move(c)) {}
    void reduce();  // canonical form: reduce mod Phi_M in place

    long conductor_;
    std::vector<BigRational> coeff_;

    friend Cyclotomic unreduced(long M, std::vector<BigRational> c);
};

// Helpers used across modules.
Cyclotomic cyc_add(const Cyclotomic& x, const Cyclotomic& y);
Cyclotomic cyc_mul(const Cyclotomic& x, const Cyclotomic& y);
Cyclotomic cyc_inv(const Cyclotomic& x);
Cyclotomic cyc_galois(const Cyclotomic& x, long a);

// [n]_root = root^{n-1} + root^{n-3} + ... + root^{-(n-1)}; requires the
// argument to be a root of unity distinct from +-1 and n >= 0.
Cyclotomic quantum_integer(long n, const Cyclotomic& root);

// sum_{t=1}^{p-1} legendre(t, p) zeta_p^t; squares to p for p = 1 (mod 4)
// and to -p for p = 3 (mod 4).
Cyclotomic gauss_sum_sqrt(long p);

}  // namespace modcat
