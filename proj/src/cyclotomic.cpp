#include "modcat/cyclotomic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <numeric>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "modcat/util.hpp"

namespace modcat {

namespace {

struct ReductionTable {
    long phi = 0;
    // rows[j - phi] = coefficients of x^j mod Phi_M, integer entries,
    // for j in [phi, M).
    std::vector<std::vector<BigInt>> rows;
};

const ReductionTable& reduction_table(long M) {
    static std::map<long, ReductionTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;

    const auto& Phi = cyclotomic_polynomial(M);
    long phi = (long)Phi.size() - 1;
    ReductionTable t;
    t.phi = phi;
    if (M > phi) {
        std::vector<BigInt> cur(phi, BigInt(0));
        // x^phi = -(Phi - x^phi)
        for (long i = 0; i < phi; ++i) cur[i] = -Phi[i];
        t.rows.push_back(cur);
        for (long j = phi + 1; j < M; ++j) {
            std::vector<BigInt> nxt(phi, BigInt(0));
            // multiply by x, fold the top coefficient back in
            BigInt top = cur[phi - 1];
            for (long i = phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
            nxt[0] = 0;
            if (top != 0)
                for (long i = 0; i < phi; ++i) nxt[i] += top * t.rows[0][i];
            t.rows.push_back(nxt);
            cur = std::move(nxt);
        }
    }
    return cache.emplace(M, std::move(t)).first->second;
}

using Poly = std::vector<BigRational>;

long poly_deg(const Poly& p) {
    for (long i = (long)p.size() - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

// Remainder-producing division: returns quotient, leaves remainder in num.
Poly poly_divmod(Poly& num, const Poly& den) {
    long dd = poly_deg(den);
    MODCAT_CHECK(dd >= 0, "polynomial division by zero");
    long dn = poly_deg(num);
    if (dn < dd) return {};
    Poly q(dn - dd + 1, BigRational(0));
    const BigRational& lead = den[dd];
    for (long d = dn; d >= dd; --d) {
        if (num[d] == 0) continue;
        BigRational c = num[d] / lead;
        q[d - dd] = c;
        for (long i = 0; i <= dd; ++i) num[d - dd + i] -= c * den[i];
    }
    return q;
}

Poly poly_sub_mul(const Poly& a, const Poly& q, const Poly& b) {
    // a - q*b
    long n = std::max((long)a.size(), (long)(q.size() + b.size()));
    Poly r(std::max(n, 1L), BigRational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] -= q[i] * b[j];
        }
    }
    return r;
}

}  // namespace

void Cyclotomic::reduce() {
    const auto& t = reduction_table(conductor_);
    for (long j = conductor_ - 1; j >= t.phi; --j) {
        if (coeff_[j] == 0) continue;
        BigRational c = coeff_[j];
        coeff_[j] = 0;
        const auto& row = t.rows[j - t.phi];
        for (long i = 0; i < t.phi; ++i) {
            if (row[i] != 0) coeff_[i] += c * BigRational(row[i]);
        }
    }
}

Cyclotomic unreduced(long M, std::vector<BigRational> c) {
    Cyclotomic x(M, std::move(c));
    x.reduce();
    return x;
}

Cyclotomic Cyclotomic::zeta(long M, long e) {
    MODCAT_CHECK(M >= 1, "zeta requires M >= 1");
    e %= M;
    if (e < 0) e += M;
    if (e == 0) return Cyclotomic::one();
    long g = std::gcd(e, M);
    M /= g;
    e /= g;
    std::vector<BigRational> c(M, BigRational(0));
    c[e] = 1;
    return unreduced(M, std::move(c));
}

Cyclotomic Cyclotomic::from_coefficients(long M, std::vector<BigRational> c) {
    MODCAT_CHECK((long)c.size() == M && M >= 1, "coefficient vector must have length M");
    return unreduced(M, std::move(c));
}

bool Cyclotomic::is_zero() const {
    for (auto& c : coeff_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < coeff_.size(); ++i)
        if (coeff_[i] != 0) return false;
    return true;
}

BigRational Cyclotomic::rational_value() const {
    MODCAT_CHECK(is_rational(), "rational_value on non-rational element");
    return coeff_[0];
}

bool Cyclotomic::is_integer() const {
    return is_rational() && coeff_[0].get_den() == 1;
}

Cyclotomic Cyclotomic::promoted(long L) const {
    MODCAT_CHECK(L % conductor_ == 0, "promotion target must be a multiple of the conductor");
    if (L == conductor_) return *this;
    long k = L / conductor_;
    std::vector<BigRational> c(L, BigRational(0));
    for (long i = 0; i < conductor_; ++i)
        if (coeff_[i] != 0) c[i * k] = coeff_[i];
    return unreduced(L, std::move(c));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    long L = lcm_long(conductor_, o.conductor_);
    Cyclotomic a = promoted(L), b = o.promoted(L);
    for (long i = 0; i < L; ++i) a.coeff_[i] += b.coeff_[i];
    return a;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic a = *this;
    for (auto& c : a.coeff_) c = -c;
    return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::scaled(const BigRational& q) const {
    Cyclotomic a = *this;
    for (auto& c : a.coeff_) c *= q;
    return a;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    long L = lcm_long(conductor_, o.conductor_);
    long fa = L / conductor_, fb = L / o.conductor_;
    std::vector<std::pair<long, const BigRational*>> na, nb;
    bool all_int = true;
    for (long i = 0; i < conductor_; ++i)
        if (coeff_[i] != 0) {
            na.emplace_back(i * fa, &coeff_[i]);
            if (coeff_[i].get_den() != 1) all_int = false;
        }
    for (long i = 0; i < o.conductor_; ++i)
        if (o.coeff_[i] != 0) {
            nb.emplace_back(i * fb, &o.coeff_[i]);
            if (o.coeff_[i].get_den() != 1) all_int = false;
        }
    std::vector<BigRational> c(L, BigRational(0));
    if (all_int) {
        // integer coefficients: accumulate with fused mpz multiply-add
        for (auto& [i, ca] : na)
            for (auto& [j, cb] : nb) {
                long k = i + j;
                if (k >= L) k -= L;
                mpz_addmul(mpq_numref(c[k].get_mpq_t()), mpq_numref(ca->get_mpq_t()),
                           mpq_numref(cb->get_mpq_t()));
            }
    } else {
        mpq_t prod;
        mpq_init(prod);
        for (auto& [i, ca] : na)
            for (auto& [j, cb] : nb) {
                long k = i + j;
                if (k >= L) k -= L;
                mpq_mul(prod, ca->get_mpq_t(), cb->get_mpq_t());
                mpq_add(c[k].get_mpq_t(), c[k].get_mpq_t(), prod);
            }
        mpq_clear(prod);
    }
    return unreduced(L, std::move(c));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    long L = lcm_long(conductor_, o.conductor_);
    Cyclotomic a = promoted(L), b = o.promoted(L);
    return a.coeff_ == b.coeff_;
}

Cyclotomic Cyclotomic::galois(long a) const {
    long M = conductor_;
    long r = a % M;
    if (r < 0) r += M;
    if (M == 1) return *this;
    MODCAT_CHECK(std::gcd(r, M) == 1, "galois exponent must be coprime to the conductor");
    std::vector<BigRational> c(M, BigRational(0));
    for (long i = 0; i < M; ++i)
        if (coeff_[i] != 0) c[(i * r) % M] += coeff_[i];
    return unreduced(M, std::move(c));
}

Cyclotomic Cyclotomic::inverse() const {
    MODCAT_CHECK(!is_zero(), "division by zero in Q(zeta_M)");
    long M = conductor_;
    if (M == 1) return Cyclotomic(BigRational(1) / coeff_[0]);
    const auto& PhiZ = cyclotomic_polynomial(M);
    Poly r0(PhiZ.size());
    for (size_t i = 0; i < PhiZ.size(); ++i) r0[i] = BigRational(PhiZ[i]);
    Poly r1(coeff_.begin(), coeff_.end());
    Poly t0 = {BigRational(0)}, t1 = {BigRational(1)};
    while (poly_deg(r1) >= 0) {
        Poly rem = r0;
        Poly q = poly_divmod(rem, r1);
        Poly t2 = poly_sub_mul(t0, q, t1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    long d = poly_deg(r0);
    MODCAT_CHECK(d == 0, "inverse: gcd with Phi_M is not constant");
    BigRational c = r0[0];
    std::vector<BigRational> out(M, BigRational(0));
    for (size_t i = 0; i < t0.size() && i < (size_t)M; ++i) out[i] = t0[i] / c;
    return unreduced(M, std::move(out));
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic r = Cyclotomic::one(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = (e >>= 1) ? b * b : b;
    }
    return r;
}

ComplexApprox Cyclotomic::embed(long bits) const {
    MODCAT_CHECK(bits >= 53, "embed requires precision >= 53 bits");
    mpfr_prec_t p = (mpfr_prec_t)bits + 16;
    mpfr_t re, im, ang, c, s, tmp, pi;
    mpfr_inits2(p, re, im, ang, c, s, tmp, pi, (mpfr_ptr) nullptr);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    mpfr_const_pi(pi, MPFR_RNDN);
    long nnz = 0;
    BigRational abs_sum(0);
    for (long i = 0; i < conductor_; ++i) {
        if (coeff_[i] == 0) continue;
        ++nnz;
        abs_sum += abs(coeff_[i]);
        mpfr_set_q(tmp, coeff_[i].get_mpq_t(), MPFR_RNDN);
        // angle 2*pi*i/M
        mpfr_mul_si(ang, pi, 2 * i, MPFR_RNDN);
        mpfr_div_si(ang, ang, conductor_, MPFR_RNDN);
        mpfr_sin_cos(s, c, ang, MPFR_RNDN);
        mpfr_mul(c, c, tmp, MPFR_RNDN);
        mpfr_mul(s, s, tmp, MPFR_RNDN);
        mpfr_add(re, re, c, MPFR_RNDN);
        mpfr_add(im, im, s, MPFR_RNDN);
    }
    ComplexApprox out;
    out.re = mpfr_get_d(re, MPFR_RNDN);
    out.im = mpfr_get_d(im, MPFR_RNDN);
    // Each term contributes O(1) roundings at relative error 2^-p; the
    // angle argument is bounded by 2*pi*M/M. A generous constant keeps the
    // bound sound for p >= 53.
    double mag = abs_sum.get_d() * 1.0000001 + 1.0;
    out.err = 64.0 * (double)(nnz + 2) * mag * std::ldexp(1.0, -(int)bits);
    mpfr_clears(re, im, ang, c, s, tmp, pi, (mpfr_ptr) nullptr);
    return out;
}

int Cyclotomic::sign_real() const {
    MODCAT_CHECK(is_real(), "sign_real requires a conjugation-fixed value");
    if (is_zero()) return 0;
    for (long bits = 64; bits <= (1 << 16); bits *= 2) {
        ComplexApprox a = embed(bits);
        if (std::fabs(a.re) > a.err) return a.re > 0 ? 1 : -1;
    }
    throw ModcatError("sign_real: interval did not separate from zero");
}

std::optional<std::pair<long, long>> Cyclotomic::as_root_of_unity() const {
    if (is_zero()) return std::nullopt;
    long K = lcm_long(2, conductor_);
    ComplexApprox a = embed(128);
    double mod = std::hypot(a.re, a.im);
    if (std::fabs(mod - 1.0) > 1e-9 + a.err) return std::nullopt;
    double phase = std::atan2(a.im, a.re);
    double turns = phase / (2.0 * M_PI);
    long e0 = (long)std::llround(turns * (double)K);
    for (long delta : {0L, 1L, -1L}) {
        long e = ((e0 + delta) % K + K) % K;
        if (*this == zeta(K, e)) {
            long g = std::gcd(e, K);
            if (e == 0) return std::make_pair(1L, 0L);
            return std::make_pair(K / g, e / g);
        }
    }
    return std::nullopt;
}

bool Cyclotomic::lies_in(long D) const {
    MODCAT_CHECK(D >= 1 && conductor_ % D == 0, "lies_in requires D | conductor");
    if (D == conductor_) return true;
    for (long a : units_mod(conductor_)) {
        if (a % D != 1 % D) continue;
        if (galois(a) != *this) return false;
    }
    return true;
}

std::string Cyclotomic::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (long i = 0; i < conductor_; ++i) {
        if (coeff_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << coeff_[i];
        if (i > 0) os << "*z" << conductor_ << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

Cyclotomic cyc_add(const Cyclotomic& x, const Cyclotomic& y) { return x + y; }
Cyclotomic cyc_mul(const Cyclotomic& x, const Cyclotomic& y) { return x * y; }
Cyclotomic cyc_inv(const Cyclotomic& x) { return x.inverse(); }
Cyclotomic cyc_galois(const Cyclotomic& x, long a) { return x.galois(a); }

Cyclotomic quantum_integer(long n, const Cyclotomic& root) {
    MODCAT_CHECK(n >= 0, "quantum_integer requires n >= 0");
    auto rou = root.as_root_of_unity();
    MODCAT_CHECK(rou.has_value(), "quantum_integer requires a root of unity");
    auto [K, e] = *rou;
    MODCAT_CHECK(K > 2, "quantum_integer is undefined at +-1");
    std::vector<BigRational> c(K, BigRational(0));
    for (long i = 0; i < n; ++i) {
        long ex = ((e * (n - 1 - 2 * i)) % K + K) % K;
        c[ex] += 1;
    }
    return unreduced(K, std::move(c));
}

Cyclotomic gauss_sum_sqrt(long p) {
    MODCAT_CHECK(p > 2 && is_prime(p), "gauss_sum_sqrt requires an odd prime");
    std::vector<BigRational> c(p, BigRational(0));
    for (long t = 1; t < p; ++t) c[t] = legendre(t, p);
    return unreduced(p, std::move(c));
}

}  // namespace modcat
