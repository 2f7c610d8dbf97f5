#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "modcat/galois.hpp"
#include "modcat/sl2z.hpp"
#include "modcat/util.hpp"

using namespace modcat;

namespace {

ModularData fib() { return build_sl2_adjoint(3, 1); }
ModularData pointed_z5() { return build_pointed(PointedSpec{{5}, 5, {1}, {}}); }

SL2ZRep level_lift(const ModularData& c, long level) {
    for (auto& l : lift_projective(c))
        if (l.level() == level) return l;
    throw ModcatError("no lift of the requested level");
}

// block-diagonal direct sum, for synthetic reducible examples
SL2ZRep direct_sum(const SL2ZRep& a, const SL2ZRep& b) {
    SL2ZRep r;
    r.dim = a.dim + b.dim;
    r.t_modulus = lcm_long(a.t_modulus, b.t_modulus);
    for (long i = 0; i < a.dim; ++i)
        r.t_exponents.push_back(a.t_exponents[i] * (r.t_modulus / a.t_modulus));
    for (long i = 0; i < b.dim; ++i)
        r.t_exponents.push_back(b.t_exponents[i] * (r.t_modulus / b.t_modulus));
    r.s_scalar = Cyclotomic::one();
    r.s_mat = CycMatrix(r.dim, r.dim);
    for (long i = 0; i < a.dim; ++i)
        for (long j = 0; j < a.dim; ++j) r.s_mat.at(i, j) = a.s_entry(i, j);
    for (long i = 0; i < b.dim; ++i)
        for (long j = 0; j < b.dim; ++j) r.s_mat.at(a.dim + i, a.dim + j) = b.s_entry(i, j);
    return r;
}

}  // namespace

TEST_CASE("sqrt_global_dim") {
    ModularData f = fib();
    Cyclotomic r = sqrt_global_dim(f);
    CHECK(r * r == f.global_dim());
    CHECK(r.is_positive_real());

    CHECK(sqrt_global_dim(build_trivial()) == Cyclotomic::one());

    CHECK(sqrt_global_dim(pointed_z5()) == gauss_sum_sqrt(5));
}

TEST_CASE("lift_projective: trivial data gives the 12 characters") {
    auto lifts = lift_projective(build_trivial());
    REQUIRE(lifts.size() == 12);
    std::set<long> seen_levels;
    for (long x = 0; x < 12; ++x) {
        // lift x has t = zeta_12^x, s = zeta_12^{-3x}
        CHECK(lifts[x].dim == 1);
        CHECK(lifts[x].t_entry(0) == Cyclotomic::zeta(12, x));
        CHECK(lifts[x].s_entry(0, 0) == Cyclotomic::zeta(12, -3 * x));
        CHECK(verify_relations(lifts[x]));
        seen_levels.insert(lifts[x].level());
    }
    CHECK(seen_levels == std::set<long>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("lift_projective: Fibonacci") {
    ModularData f = fib();
    auto lifts = lift_projective(f);
    REQUIRE(lifts.size() == 12);
    bool has_level5 = false;
    for (auto& l : lifts) {
        CHECK(verify_relations(l));
        if (l.level() == 5) {
            has_level5 = true;
            CHECK(l.dim == 2);
        }
    }
    CHECK(has_level5);
}

TEST_CASE("chi_rep and eta_rep") {
    SL2ZRep chi0 = chi_rep(0);
    CHECK(chi0.s_entry(0, 0) == Cyclotomic::one());
    CHECK(chi0.t_entry(0) == Cyclotomic::one());
    CHECK(chi0.level() == 1);
    CHECK(is_minimal(chi0).has_value());
    CHECK(is_irreducible(chi0));
    for (long e = 0; e < 12; ++e) {
        SL2ZRep chi = chi_rep(e);
        CHECK(verify_relations(chi));
        CHECK(is_minimal(chi).has_value());
    }

    SL2ZRep e5 = eta_rep(5, 1);
    CHECK(e5.dim == 2);
    auto exps = e5.t_exponents_mod_level();
    std::sort(exps.begin(), exps.end());
    CHECK(exps == std::vector<long>{1, 4});

    for (long p : {5L, 7L, 11L, 13L}) {
        for (int j : {1, -1}) {
            SL2ZRep eta = eta_rep(p, j);
            CHECK(eta.dim == (p - 1) / 2);
            CHECK(eta.dim == phi2(p));
            CHECK(is_irreducible(eta));
            auto md = is_minimal(eta);
            REQUIRE(md.has_value());
            REQUIRE(md->parts.size() == 1);
            CHECK(md->parts[0].j == j);
        }
    }
    CHECK_THROWS(eta_rep(3, 1));
    CHECK_THROWS(eta_rep(9, 1));
}

TEST_CASE("minimality: direct sums are not minimal; commutants detect reducibility") {
    SL2ZRep ee = direct_sum(eta_rep(5, 1), eta_rep(5, 1));
    CHECK(ee.dim == 4);
    CHECK(ee.dim != phi2(ee.level()));
    CHECK(!is_minimal(ee).has_value());

    SL2ZRep epm = direct_sum(eta_rep(5, 1), eta_rep(5, -1));
    CHECK(!is_irreducible(epm));
    CHECK(commutant_dimension(epm.s_mat, epm.t_exponents, epm.t_modulus) == 2);
}

TEST_CASE("minimal_decomposition") {
    MinimalTypeDescriptor md = minimal_decomposition(35, 1);
    CHECK(md.d == 1);
    REQUIRE(md.parts.size() == 2);
    CHECK(md.parts[0].p == 5);
    CHECK(md.parts[0].lp == 3);
    CHECK(md.parts[1].p == 7);
    CHECK(md.parts[1].lp == 3);

    MinimalTypeDescriptor m5 = minimal_decomposition(5, 2);
    CHECK(m5.d == 1);
    REQUIRE(m5.parts.size() == 1);
    CHECK(m5.parts[0].p == 5);
    CHECK(m5.parts[0].lp == 2);
    CHECK(m5.parts[0].j == -1);

    MinimalTypeDescriptor m12 = minimal_decomposition(12, 1);
    CHECK(m12.d == 12);
    CHECK(m12.parts.empty());

    CHECK_THROWS_WITH_AS(minimal_decomposition(25, 1), doctest::Contains("ShapeError"), ModcatError);
    CHECK_THROWS_WITH_AS(minimal_decomposition(8, 1), doctest::Contains("ShapeError"), ModcatError);
    CHECK_THROWS_WITH_AS(minimal_decomposition(9, 1), doctest::Contains("ShapeError"), ModcatError);
}

TEST_CASE("g_sigma: identity, Fibonacci swap, exhaustive eta checks") {
    ModularData f = fib();
    SL2ZRep l5 = level_lift(f, 5);
    SignedPermutation id = g_sigma(l5, 1);
    CHECK(id.perm == std::vector<int>{0, 1});
    CHECK(id.signs == std::vector<int>{1, 1});

    SignedPermutation g2 = g_sigma(l5, 2);
    CHECK(g2.perm == std::vector<int>{1, 0});
    CHECK(g2.perm == galois_permutation(f, 2));

    // the Galois symmetry identities are verified inside g_sigma
    SL2ZRep e5 = eta_rep(5, 1);
    for (long a : {1L, 2L, 3L, 4L}) CHECK_NOTHROW(g_sigma(e5, a));
}

TEST_CASE("g_sigma homomorphism phi_rho") {
    for (const SL2ZRep& rho : {eta_rep(5, 1), eta_rep(7, -1)}) {
        long n = rho.level();
        REQUIRE(n <= 35);
        for (long a : units_mod(n))
            for (long b : units_mod(n)) {
                SignedPermutation ga = g_sigma(rho, a), gb = g_sigma(rho, b);
                SignedPermutation gab = g_sigma(rho, (a * b) % n);
                for (long x = 0; x < rho.dim; ++x) {
                    // (g_a g_b)(row x): row x of g_a hits perm_a[x], then perm_b
                    CHECK(gab.perm[x] == gb.perm[ga.perm[x]]);
                    CHECK(gab.signs[x] == ga.signs[x] * gb.signs[ga.perm[x]]);
                }
            }
    }
}

TEST_CASE("epsilon signs") {
    ModularData f = fib();
    SL2ZRep l5 = level_lift(f, 5);
    auto e1 = epsilon_signs(l5, 1);
    CHECK(e1 == std::vector<int>{1, 1});
    CHECK_NOTHROW(epsilon_signs(l5, 2));  // cross-check runs inside

    ModularData z5 = pointed_z5();
    SL2ZRep lz = level_lift(z5, 5);
    auto em = epsilon_signs(lz, 4);  // a = -1: complex conjugation behaviour
    for (int s : em) CHECK((s == 1 || s == -1));
}

TEST_CASE("isotypic decomposition") {
    ModularData f = fib();
    SL2ZRep l5 = level_lift(f, 5);
    auto comps = isotypic_decomposition(l5, f);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].dimension == 2);

    ModularData z5 = pointed_z5();
    SL2ZRep lz = level_lift(z5, 5);
    auto zc = isotypic_decomposition(lz, z5);
    REQUIRE(zc.size() == 2);
    CHECK(zc[0].dimension + zc[1].dimension == 5);

    ModularData t = build_trivial();
    auto lifts = lift_projective(t);
    auto tc = isotypic_decomposition(lifts[0], t);
    REQUIRE(tc.size() == 1);
    CHECK(tc[0].dimension == 1);
}

TEST_CASE("reps_equivalent") {
    SL2ZRep e7 = eta_rep(7, 1);
    auto self = reps_equivalent(e7, e7);
    REQUIRE(self.has_value());
    CHECK(self->perm == std::vector<int>{0, 1, 2});

    ModularData f = fib();
    SL2ZRep l5 = level_lift(f, 5);
    auto md = is_minimal(l5);
    REQUIRE(md.has_value());
    int j = legendre(md->type_l, 5);
    CHECK(reps_equivalent(l5, eta_rep(5, j)).has_value());
    CHECK(!reps_equivalent(l5, eta_rep(5, -j)).has_value());

    CHECK(!reps_equivalent(eta_rep(5, 1), eta_rep(5, -1)).has_value());

    SL2ZRep dup = direct_sum(eta_rep(5, 1), eta_rep(5, 1));
    CHECK_THROWS_WITH_AS(reps_equivalent(dup, dup), doctest::Contains("MultiplicityError"),
                         ModcatError);
}

TEST_CASE("transitive data: all 12 lifts minimal and irreducible") {
    for (const ModularData& c : {fib(), build_sl2_adjoint(5, 1)}) {
        for (auto& rho : lift_projective(c)) {
            CHECK(is_minimal(rho).has_value());
            CHECK(is_irreducible(rho));
        }
    }
}

TEST_CASE("tensor factorization consistency for a product lift") {
    ModularData a = build_sl2_adjoint(3, 1), b = build_sl2_adjoint(5, 1);
    fusion_ring(a);
    fusion_ring(b);
    ModularData prod = deligne_product(a, b);
    SL2ZRep l35 = level_lift(prod, 35);
    auto md = is_minimal(l35);
    REQUIRE(md.has_value());
    REQUIRE(md->parts.size() == 2);
    bool first = true;
    SL2ZRep built = chi_rep(0);
    for (auto& part : md->parts) {
        SL2ZRep eta = eta_rep(part.p, part.j);
        built = first ? eta : tensor_rep(built, eta);
        first = false;
    }
    if (md->d > 1) built = tensor_rep(built, chi_rep(0));
    CHECK(reps_equivalent(l35, built).has_value());
}

TEST_CASE("lift entries lie in Q_n when 4 does not divide N") {
    ModularData f = fib();
    SL2ZRep l5 = level_lift(f, 5);
    CHECK(entries_lie_in(l5, 5));
    ModularData z5 = pointed_z5();
    CHECK(entries_lie_in(level_lift(z5, 5), 5));
}
