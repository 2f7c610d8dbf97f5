#include "modcat/matrix.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "modcat/util.hpp"

namespace modcat {

CycMatrix CycMatrix::identity(long n) {
    CycMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = Cyclotomic::one();
    return m;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
    MODCAT_CHECK(cols_ == o.rows_, "matrix shape mismatch");
    CycMatrix r(rows_, o.cols_);
    // Common conductor for the whole product; cells accumulate raw cyclic
    // convolutions into a reused scratch buffer and reduce once.
    long L = 1;
    for (const auto& v : a_)
        if (!v.is_zero()) L = lcm_long(L, v.conductor());
    for (long i = 0; i < o.rows_ * o.cols_; ++i)
        if (!o.a_[i].is_zero()) L = lcm_long(L, o.a_[i].conductor());

    // Integer-coefficient fast path: with the scalar parts factored out,
    // matrix entries are Z-combinations of roots of unity, so the raw
    // convolutions can run on mpz with fused multiply-add.
    bool all_int = true;
    auto int_scan = [&](const std::vector<Cyclotomic>& entries) {
        for (const auto& v : entries)
            for (const auto& c : v.coefficients())
                if (c.get_den() != 1) return false;
        return true;
    };
    all_int = int_scan(a_) && int_scan(o.a_);

    std::vector<long> touched;
    std::vector<char> marked(L, 0);
    // sparse views: nonzero (index, value) lists per entry
    auto nonzeros = [](const Cyclotomic& v) {
        std::vector<std::pair<long, const BigRational*>> nz;
        const auto& c = v.coefficients();
        for (long i = 0; i < (long)c.size(); ++i)
            if (c[i] != 0) nz.emplace_back(i, &c[i]);
        return nz;
    };
    std::vector<std::vector<std::pair<long, const BigRational*>>> lhs_nz(rows_ * cols_),
        rhs_nz(o.rows_ * o.cols_);
    for (long i = 0; i < rows_ * cols_; ++i)
        if (!a_[i].is_zero()) lhs_nz[i] = nonzeros(a_[i]);
    for (long i = 0; i < o.rows_ * o.cols_; ++i)
        if (!o.a_[i].is_zero()) rhs_nz[i] = nonzeros(o.a_[i]);

    std::vector<BigRational> buf;
    std::vector<BigInt> bufz;
    if (all_int)
        bufz.assign(L, BigInt(0));
    else
        buf.assign(L, BigRational(0));
    mpq_t prod;
    mpq_init(prod);

    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < o.cols_; ++j) {
            touched.clear();
            for (long k = 0; k < cols_; ++k) {
                const Cyclotomic& x = at(i, k);
                const Cyclotomic& y = o.at(k, j);
                if (x.is_zero() || y.is_zero()) continue;
                long fx = L / x.conductor(), fy = L / y.conductor();
                for (auto& [xi, xv] : lhs_nz[i * cols_ + k])
                    for (auto& [yj, yv] : rhs_nz[k * o.cols_ + j]) {
                        long idx = (xi * fx + yj * fy) % L;
                        if (!marked[idx]) {
                            marked[idx] = 1;
                            touched.push_back(idx);
                        }
                        if (all_int) {
                            mpz_addmul(bufz[idx].get_mpz_t(),
                                       mpq_numref(xv->get_mpq_t()),
                                       mpq_numref(yv->get_mpq_t()));
                        } else {
                            mpq_mul(prod, xv->get_mpq_t(), yv->get_mpq_t());
                            mpq_add(buf[idx].get_mpq_t(), buf[idx].get_mpq_t(), prod);
                        }
                    }
            }
            if (!touched.empty()) {
                std::vector<BigRational> cell(L, BigRational(0));
                for (long t : touched) {
                    if (all_int) {
                        cell[t] = BigRational(bufz[t]);
                        bufz[t] = 0;
                    } else {
                        std::swap(cell[t], buf[t]);
                    }
                    marked[t] = 0;
                }
                r.at(i, j) = Cyclotomic::from_coefficients(L, std::move(cell));
            }
        }
    mpq_clear(prod);
    return r;
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
    MODCAT_CHECK(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
    CycMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

CycMatrix CycMatrix::operator-(const CycMatrix& o) const {
    MODCAT_CHECK(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
    CycMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i]) return false;
    return true;
}

CycMatrix CycMatrix::transposed() const {
    CycMatrix r(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

CycMatrix CycMatrix::scaled(const Cyclotomic& c) const {
    CycMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

CycMatrix CycMatrix::pow(long e) const {
    MODCAT_CHECK(rows_ == cols_ && e >= 0, "pow requires a square matrix and e >= 0");
    CycMatrix r = identity(rows_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

CycMatrix CycMatrix::conjugated_by_permutation(const std::vector<int>& perm) const {
    MODCAT_CHECK((long)perm.size() == rows_ && rows_ == cols_, "permutation size mismatch");
    CycMatrix r(rows_, cols_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(perm[i], perm[j]) = at(i, j);
    return r;
}

CycMatrix CycMatrix::kronecker(const CycMatrix& a, const CycMatrix& b) {
    CycMatrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (long i = 0; i < a.rows_; ++i)
        for (long j = 0; j < a.cols_; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (long k = 0; k < b.rows_; ++k)
                for (long l = 0; l < b.cols_; ++l) {
                    if (b.at(k, l).is_zero()) continue;
                    r.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
                }
        }
    return r;
}

bool CycMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool CycMatrix::is_diagonal() const {
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j)
            if (i != j && !at(i, j).is_zero()) return false;
    return true;
}

CycMatrix CycMatrix::submatrix(const std::vector<int>& rows,
                               const std::vector<int>& cols) const {
    CycMatrix r((long)rows.size(), (long)cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(rows[i], cols[j]);
    return r;
}

long CycMatrix::rank() const {
    std::vector<std::vector<Cyclotomic>> m(rows_, std::vector<Cyclotomic>(cols_));
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) m[i][j] = at(i, j);
    long rank = 0;
    for (long col = 0; col < cols_ && rank < rows_; ++col) {
        long piv = -1;
        for (long i = rank; i < rows_; ++i)
            if (!m[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        Cyclotomic inv = m[rank][col].inverse();
        for (long j = col; j < cols_; ++j) m[rank][j] = m[rank][j] * inv;
        for (long i = 0; i < rows_; ++i) {
            if (i == rank || m[i][col].is_zero()) continue;
            Cyclotomic f = m[i][col];
            for (long j = col; j < cols_; ++j) m[i][j] = m[i][j] - f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

long commutant_dimension(const CycMatrix& s, const std::vector<long>& t_exponents,
                         long t_modulus) {
    long n = s.rows();
    MODCAT_CHECK((long)t_exponents.size() == n, "t spectrum size mismatch");
    auto norm = [&](long e) { return ((e % t_modulus) + t_modulus) % t_modulus; };

    // Multiplicity-free t: the commutant is diagonal, and Ms = sM reduces
    // to m_i = m_j on the support of s. Its dimension is the number of
    // connected components of that support graph.
    {
        std::set<long> distinct;
        for (long e : t_exponents) distinct.insert(norm(e));
        if ((long)distinct.size() == n) {
            std::vector<long> parent(n);
            std::iota(parent.begin(), parent.end(), 0);
            std::function<long(long)> find = [&](long x) {
                return parent[x] == x ? x : parent[x] = find(parent[x]);
            };
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j)
                    if (!s.at(i, j).is_zero()) parent[find(i)] = find(j);
            std::set<long> roots;
            for (long i = 0; i < n; ++i) roots.insert(find(i));
            return (long)roots.size();
        }
    }

    // Commuting with the diagonal t restricts M to blocks of equal
    // t-eigenvalue; order the variables by exponent.
    std::vector<std::pair<long, long>> vars;  // (i, j) with e_i = e_j
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (norm(t_exponents[i]) == norm(t_exponents[j])) vars.emplace_back(i, j);
    std::map<std::pair<long, long>, long> var_index;
    for (size_t v = 0; v < vars.size(); ++v) var_index[vars[v]] = (long)v;

    // Equations: (M s - s M)_{ij} = 0.
    CycMatrix sys(n * n, (long)vars.size());
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            long row = i * n + j;
            for (size_t v = 0; v < vars.size(); ++v) {
                auto [a, b] = vars[v];
                Cyclotomic coef = Cyclotomic::zero();
                if (a == i) coef = coef + s.at(b, j);       // M_{ik} s_{kj}, k = b
                if (b == j) coef = coef - s.at(i, a);       // s_{ik} M_{kj}, k = a
                sys.at(row, (long)v) = coef;
            }
        }
    return (long)vars.size() - sys.rank();
}

}  // namespace modcat
