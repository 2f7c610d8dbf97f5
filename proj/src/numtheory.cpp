#include "modcat/numtheory.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "modcat/util.hpp"

namespace modcat {

long gcd_long(long a, long b) { return std::gcd(a, b); }

long lcm_long(long a, long b) {
    MODCAT_CHECK(a != 0 && b != 0, "lcm of zero");
    return std::lcm(a, b);
}

std::vector<std::pair<long, int>> factorize(long n) {
    MODCAT_CHECK(n >= 1, "factorize requires n >= 1");
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

bool is_squarefree(long n) {
    MODCAT_CHECK(n >= 1, "is_squarefree requires n >= 1");
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

long euler_phi(long n) {
    MODCAT_CHECK(n >= 1, "euler_phi requires n >= 1");
    long r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

long phi2(long m) {
    MODCAT_CHECK(m >= 1, "phi2 requires m >= 1");
    long r = 1;
    for (auto& [p, e] : factorize(m)) {
        if (p == 2) {
            r *= (e >= 3) ? (1L << (e - 3)) : 1;
        } else {
            long pe = 1;
            for (int i = 0; i < e - 1; ++i) pe *= p;
            r *= (p - 1) / 2 * pe;
        }
    }
    return r;
}

int legendre(long a, long p) {
    MODCAT_CHECK(p > 2 && is_prime(p), "legendre requires an odd prime");
    long r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    long s = pow_mod(r, (p - 1) / 2, p);
    return s == 1 ? 1 : -1;
}

long pow_mod(long a, long e, long m) {
    MODCAT_CHECK(m >= 1 && e >= 0, "pow_mod domain");
    unsigned long long r = 1, b = ((a % m) + m) % m;
    while (e) {
        if (e & 1) r = r * b % (unsigned long long)m;
        b = b * b % (unsigned long long)m;
        e >>= 1;
    }
    return (long)r;
}

long inv_mod(long a, long m) {
    long g = std::gcd(((a % m) + m) % m, m);
    MODCAT_CHECK(g == 1, "inv_mod requires gcd(a, m) = 1");
    long old_r = ((a % m) + m) % m, r = m;
    long old_s = 1, s = 0;
    while (r != 0) {
        long q = old_r / r;
        std::swap(old_r -= q * r, r);
        std::swap(old_s -= q * s, s);
    }
    return ((old_s % m) + m) % m;
}

std::vector<long> units_mod(long m) {
    if (m == 1) return {1};
    std::vector<long> out;
    for (long a = 1; a < m; ++a)
        if (std::gcd(a, m) == 1) out.push_back(a);
    return out;
}

namespace {

// Exact division of integer polynomials, remainder must vanish.
std::vector<BigInt> poly_div_exact(const std::vector<BigInt>& num,
                                   const std::vector<BigInt>& den) {
    std::vector<BigInt> rem = num;
    MODCAT_CHECK(!den.empty() && den.back() != 0, "division by zero polynomial");
    long dn = (long)rem.size() - 1, dd = (long)den.size() - 1;
    std::vector<BigInt> q(dn - dd + 1, BigInt(0));
    for (long d = dn; d >= dd; --d) {
        if (rem[d] == 0) continue;
        BigInt c = rem[d] / den.back();
        MODCAT_CHECK(c * den.back() == rem[d], "non-exact polynomial division");
        q[d - dd] = c;
        for (long i = 0; i <= dd; ++i) rem[d - dd + i] -= c * den[i];
    }
    for (auto& c : rem) MODCAT_CHECK(c == 0, "nonzero remainder in exact division");
    return q;
}

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(long M) {
    MODCAT_CHECK(M >= 1, "cyclotomic_polynomial requires M >= 1");
    static std::map<long, std::vector<BigInt>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;

    // x^M - 1 divided by prod of Phi_d over proper divisors d of M.
    std::vector<BigInt> num(M + 1, BigInt(0));
    num[0] = -1;
    num[M] = 1;
    std::function<const std::vector<BigInt>&(long)> get = [&](long d) -> const std::vector<BigInt>& {
        auto jt = cache.find(d);
        if (jt != cache.end()) return jt->second;
        std::vector<BigInt> n2(d + 1, BigInt(0));
        n2[0] = -1;
        n2[d] = 1;
        for (long e = 1; e < d; ++e)
            if (d % e == 0) n2 = poly_div_exact(n2, get(e));
        return cache.emplace(d, std::move(n2)).first->second;
    };
    for (long d = 1; d < M; ++d)
        if (M % d == 0) num = poly_div_exact(num, get(d));
    return cache.emplace(M, std::move(num)).first->second;
}

}  // namespace modcat
