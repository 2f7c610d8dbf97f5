#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "modcat/cyclotomic.hpp"
#include "modcat/numtheory.hpp"

using namespace modcat;

namespace {

// Independent oracle: multiply two coefficient vectors mod x^M - 1 and
// reduce by explicit long division against Phi_M, with naive rational
// polynomial arithmetic. Used to freeze expected values without going
// through Cyclotomic's internals.
std::vector<BigRational> oracle_mul_mod_phi(long M, std::vector<BigRational> a,
                                            std::vector<BigRational> b) {
    std::vector<BigRational> c(M, BigRational(0));
    for (long i = 0; i < M; ++i)
        for (long j = 0; j < M; ++j)
            if (a[i] != 0 && b[j] != 0) c[(i + j) % M] += a[i] * b[j];
    const auto& Phi = cyclotomic_polynomial(M);
    long d = (long)Phi.size() - 1;
    for (long k = M - 1; k >= d; --k) {
        if (c[k] == 0) continue;
        BigRational q = c[k];  // Phi is monic
        for (long i = 0; i <= d; ++i) c[k - d + i] -= q * BigRational(Phi[i]);
    }
    c.resize(M, BigRational(0));
    return c;
}

Cyclotomic random_element(std::mt19937_64& rng, long M, int terms = 4) {
    std::uniform_int_distribution<long> idx(0, M - 1), num(-5, 5), den(1, 4);
    std::vector<BigRational> c(M, BigRational(0));
    for (int i = 0; i < terms; ++i) {
        BigRational q(num(rng), den(rng));
        q.canonicalize();
        c[idx(rng)] += q;
    }
    return Cyclotomic::from_coefficients(M, std::move(c));
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical") {
    Cyclotomic half{BigRational(1, 2)}, third{BigRational(1, 3)};
    Cyclotomic s = half + third;
    CHECK(s.is_rational());
    CHECK(s.rational_value() == BigRational(5, 6));
}

TEST_CASE("additive identity and the zeta_5 relation") {
    Cyclotomic z5 = Cyclotomic::zeta(5, 1);
    CHECK(z5 + Cyclotomic::zero() == z5);
    // zeta_5 + zeta_5^2 + zeta_5^3 + zeta_5^4 = -1, from Phi_5 = x^4+x^3+x^2+x+1
    Cyclotomic s = z5;
    for (long e = 2; e <= 4; ++e) s = s + Cyclotomic::zeta(5, e);
    CHECK(s == Cyclotomic(-1));
}

TEST_CASE("multiplication matches the independent polynomial oracle") {
    std::mt19937_64 rng(20260811);
    for (long M : {5L, 8L, 12L, 20L, 36L}) {
        for (int rep = 0; rep < 8; ++rep) {
            Cyclotomic x = random_element(rng, M), y = random_element(rng, M);
            auto expect = oracle_mul_mod_phi(M, x.coefficients(), y.coefficients());
            CHECK((x * y) == Cyclotomic::from_coefficients(M, expect));
        }
    }
}

TEST_CASE("i squared is -1, roots of unity invert by exponent") {
    CHECK(Cyclotomic::zeta(4, 1) * Cyclotomic::zeta(4, 1) == Cyclotomic(-1));
    for (long M : {5L, 12L, 16L}) {
        for (long k = 1; k < M; ++k) {
            if (std::gcd(k, M) != 1) continue;
            CHECK(cyc_inv(Cyclotomic::zeta(M, k)) == Cyclotomic::zeta(M, M - k));
        }
    }
}

TEST_CASE("field inverse: (1 + zeta_5) and random elements") {
    Cyclotomic x = Cyclotomic::one() + Cyclotomic::zeta(5, 1);
    CHECK(cyc_mul(x, cyc_inv(x)) == Cyclotomic::one());

    std::mt19937_64 rng(7);
    for (long M : {7L, 20L, 45L, 60L}) {
        for (int rep = 0; rep < 4; ++rep) {
            Cyclotomic y = random_element(rng, M);
            if (y.is_zero()) continue;
            CHECK(cyc_mul(y, cyc_inv(y)) == Cyclotomic::one());
        }
    }
    CHECK_THROWS(cyc_inv(Cyclotomic::zero()));
}

TEST_CASE("galois action: definition, automorphism, homomorphism") {
    CHECK(cyc_galois(Cyclotomic::zeta(5, 1), 2) == Cyclotomic::zeta(5, 2));

    // sqrt(5) as a Gauss sum maps to -sqrt(5) under zeta_5 -> zeta_5^2
    Cyclotomic r5 = gauss_sum_sqrt(5);
    CHECK(cyc_galois(r5, 2) == -r5);

    std::mt19937_64 rng(99);
    for (long M : {5L, 12L, 21L}) {
        for (long a : units_mod(M)) {
            for (long b : units_mod(M)) {
                Cyclotomic x = random_element(rng, M);
                CHECK(cyc_galois(cyc_galois(x, a), b) == cyc_galois(x, (a * b) % M));
            }
            Cyclotomic x = random_element(rng, M), y = random_element(rng, M);
            CHECK(cyc_galois(x + y, a) == cyc_galois(x, a) + cyc_galois(y, a));
            CHECK(cyc_galois(x * y, a) == cyc_galois(x, a) * cyc_galois(y, a));
        }
    }
    CHECK_THROWS(cyc_galois(Cyclotomic::zeta(10, 1), 5));
}

TEST_CASE("canonical form idempotence and cross-conductor equality") {
    std::mt19937_64 rng(3);
    for (long M : {9L, 24L}) {
        Cyclotomic x = random_element(rng, M);
        CHECK(Cyclotomic::from_coefficients(M, x.coefficients()) == x);
        CHECK(x.promoted(3 * M) == x);
    }
    CHECK(Cyclotomic::zeta(6, 2) == Cyclotomic::zeta(3, 1));
}

TEST_CASE("embedding: sums and products agree with componentwise floats") {
    std::mt19937_64 rng(5);
    for (long M : {7L, 16L}) {
        Cyclotomic x = random_element(rng, M), y = random_element(rng, M);
        auto ex = x.embed(), ey = y.embed(), es = (x + y).embed(), ep = (x * y).embed();
        CHECK(std::abs(es.re - (ex.re + ey.re)) < 1e-9);
        CHECK(std::abs(es.im - (ex.im + ey.im)) < 1e-9);
        CHECK(std::abs(ep.re - (ex.re * ey.re - ex.im * ey.im)) < 1e-8);
        CHECK(std::abs(ep.im - (ex.re * ey.im + ex.im * ey.re)) < 1e-8);
    }
}

TEST_CASE("quantum integers") {
    Cyclotomic q10 = Cyclotomic::zeta(10, 1);
    CHECK(quantum_integer(1, q10) == Cyclotomic::one());

    // [3]_q at q = zeta_10 is the golden ratio (1 + sqrt(5)) / 2
    Cyclotomic golden = (Cyclotomic::one() + gauss_sum_sqrt(5)).scaled(BigRational(1, 2));
    CHECK(quantum_integer(3, q10) == golden);

    CHECK_THROWS(quantum_integer(3, Cyclotomic::one()));
    CHECK_THROWS(quantum_integer(3, Cyclotomic(-1)));

    // numeric cross-check against the sin ratio formula
    for (long M : {10L, 14L, 40L}) {
        for (long n = 1; n <= 20; ++n) {
            Cyclotomic v = quantum_integer(n, Cyclotomic::zeta(M, 1));
            double expect = std::sin(M_PI * 2.0 * n / M) / std::sin(M_PI * 2.0 / M);
            auto e = v.embed();
            CHECK(std::abs(e.re - expect) < 1e-8);
            CHECK(std::abs(e.im) < 1e-8);
        }
    }
}

TEST_CASE("phi2: multiplicative formula and brute force agreement") {
    CHECK(phi2(5) == 2);
    CHECK(phi2(8) == 1);
    CHECK(phi2(1) == 1);
    for (long m = 1; m <= 500; ++m) {
        std::set<long> squares;
        for (long a = 1; a <= m; ++a)
            if (std::gcd(a, m) == 1) squares.insert((a * a) % m);
        if (m == 1) squares = {0};
        CHECK(phi2(m) == (long)squares.size());
    }
}

TEST_CASE("legendre, euler_phi, squarefree, cyclotomic polynomials") {
    // brute force: squares mod 5 are {1, 4}
    CHECK(legendre(2, 5) == -1);
    for (long p : {5L, 7L, 11L}) {
        std::set<long> sq;
        for (long a = 1; a < p; ++a) sq.insert(a * a % p);
        for (long a = 1; a < p; ++a) CHECK(legendre(a, p) == (sq.count(a) ? 1 : -1));
    }
    CHECK_THROWS(legendre(2, 9));
    CHECK_THROWS(legendre(2, 2));

    CHECK(euler_phi(12) == 4);
    CHECK(is_squarefree(30));
    CHECK(!is_squarefree(12));

    const auto& phi5 = cyclotomic_polynomial(5);
    CHECK(phi5 == std::vector<BigInt>{1, 1, 1, 1, 1});
    for (long M = 1; M <= 200; ++M)
        CHECK((long)cyclotomic_polynomial(M).size() - 1 == euler_phi(M));
}

TEST_CASE("gauss sum squares and positivity") {
    CHECK(gauss_sum_sqrt(5) * gauss_sum_sqrt(5) == Cyclotomic(5));
    CHECK(gauss_sum_sqrt(7) * gauss_sum_sqrt(7) == Cyclotomic(-7));
    CHECK(gauss_sum_sqrt(13) * gauss_sum_sqrt(13) == Cyclotomic(13));
    auto e = gauss_sum_sqrt(5).embed();
    CHECK(std::abs(e.re - 2.2360679) < 1e-6);
    CHECK(gauss_sum_sqrt(5).is_positive_real());
    CHECK((-gauss_sum_sqrt(13)).sign_real() == -1);
}

TEST_CASE("root of unity detection") {
    auto r = Cyclotomic::zeta(20, 12).as_root_of_unity();
    REQUIRE(r.has_value());
    CHECK(r->first == 5);
    CHECK(r->second == 3);
    CHECK((-Cyclotomic::zeta(5, 1)).as_root_of_unity()->first == 10);
    CHECK(!gauss_sum_sqrt(5).as_root_of_unity().has_value());
    CHECK(Cyclotomic::one().as_root_of_unity()->first == 1);
}
