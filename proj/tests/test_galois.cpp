#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "modcat/galois.hpp"
#include "modcat/util.hpp"

using namespace modcat;

namespace {

ModularData fib() { return build_sl2_adjoint(3, 1); }
ModularData pointed_z5() { return build_pointed(PointedSpec{{5}, 5, {1}, {}}); }
ModularData semion() { return build_pointed(PointedSpec{{2}, 4, {1}, {}}); }

// Brute-force column matching oracle, written directly against the
// definition sigma(S_{X,Y}/d_Y) = S_{X,Y'}/d_{Y'}.
std::vector<int> brute_force_perm(const ModularData& c, long a) {
    std::vector<int> perm(c.rank, -1);
    for (int y = 0; y < c.rank; ++y) {
        int match = -1;
        for (int cand = 0; cand < c.rank; ++cand) {
            bool ok = true;
            for (int x = 0; x < c.rank && ok; ++x) {
                Cyclotomic lhs = (c.S.at(x, y) * c.dim_of(y).inverse()).galois(a);
                Cyclotomic rhs = c.S.at(x, cand) * c.dim_of(cand).inverse();
                if (lhs != rhs) ok = false;
            }
            if (ok) {
                REQUIRE(match < 0);
                match = cand;
            }
        }
        REQUIRE(match >= 0);
        perm[y] = match;
    }
    return perm;
}

}  // namespace

TEST_CASE("galois_permutation: Fibonacci generator and identity") {
    ModularData c = fib();
    CHECK(galois_permutation(c, 1) == std::vector<int>{0, 1});
    CHECK(galois_permutation(c, 2) == std::vector<int>{1, 0});
    CHECK_THROWS(galois_permutation(c, 5));
}

TEST_CASE("galois_permutation agrees with the ratio-definition oracle") {
    for (const ModularData& c : {fib(), pointed_z5(), build_sl2_adjoint(5, 3)}) {
        long Mp = lcm_long(c.conductor, c.ord_T());
        for (long a : units_mod(Mp)) CHECK(galois_permutation(c, a) == brute_force_perm(c, a));
    }
}

TEST_CASE("pointed Z/5: sigma_2 doubles labels; unit orbit is fixed") {
    ModularData c = pointed_z5();
    auto p = galois_permutation(c, 2);
    // sigma(chi_b) = chi_{2b}: 0->0, 1->2, 2->4, 3->1, 4->3
    CHECK(p == std::vector<int>{0, 2, 4, 1, 3});

    // 2 generates (Z/5)^x, so the nonzero labels form a single orbit
    GaloisProfile g = galois_group(c);
    CHECK(g.group_order == 4);
    CHECK(g.orbits.size() == 2);
    CHECK(!g.transitive);
    std::set<std::vector<int>> orb(g.orbits.begin(), g.orbits.end());
    CHECK(orb.count({0}) == 1);
    CHECK(orb.count({1, 2, 3, 4}) == 1);
}

TEST_CASE("galois_group: Fibonacci and trivial") {
    GaloisProfile g = galois_group(fib());
    CHECK(g.group_order == 2);
    CHECK(g.transitive);
    CHECK(g.regular);

    GaloisProfile t = galois_group(build_trivial());
    CHECK(t.group_order == 1);
    CHECK(t.transitive);
}

TEST_CASE("prime family transitive and regular with |G| = rank") {
    for (long p : {5L, 7L, 11L, 13L}) {
        for (long l : units_mod(2 * p)) {
            ModularData c = build_sl2_adjoint(p - 2, l);
            GaloisProfile g = galois_group(c);
            CHECK(g.transitive);
            CHECK(g.regular);
            CHECK(g.group_order == c.rank);
            CHECK(g.group_order == (p - 1) / 2);
            // regularity literally on the action table: trivial stabilizers
            for (auto& [a, perm] : g.action_table) {
                bool is_id = true;
                for (int x = 0; x < c.rank; ++x)
                    if (perm[x] != x) is_id = false;
                if (!is_id)
                    for (int x = 0; x < c.rank; ++x) CHECK(perm[x] != x);
            }
        }
    }
}

TEST_CASE("homomorphism: sigma_{ab} = sigma_a o sigma_b") {
    for (const ModularData& c : {fib(), pointed_z5(), semion(), build_sl2(2, 1)}) {
        long Mp = lcm_long(c.conductor, c.ord_T());
        REQUIRE(Mp <= 120);
        auto units = units_mod(Mp);
        std::map<long, std::vector<int>> perms;
        for (long a : units) perms[a] = galois_permutation(c, a);
        for (long a : units)
            for (long b : units) {
                long ab = (a * b) % Mp;
                if (Mp == 1) ab = 1;
                std::vector<int> composed(c.rank);
                for (int x = 0; x < c.rank; ++x) composed[x] = perms[a][perms[b][x]];
                CHECK(perms.at(ab) == composed);
            }
    }
}

TEST_CASE("Galois conjugate product is not transitive; orbit counts match") {
    ModularData f1 = build_sl2_adjoint(3, 1);
    ModularData f3 = build_sl2_adjoint(3, 3);
    ModularData prod = deligne_product(f1, f3);
    GaloisProfile g = galois_group(prod);
    CHECK(!g.transitive);

    GaloisProfile g1 = galois_group(f1), g3 = galois_group(f3);
    CHECK((long)g.orbits.size() == g1.group_order * g3.group_order / g.group_order);

    // |Orb(A)| |Orb(B)| <= |Orb(A x B)| for several products
    ModularData z5 = pointed_z5();
    for (auto [A, B] : {std::pair<const ModularData&, const ModularData&>{f1, f3},
                        {f1, z5},
                        {z5, z5}}) {
        GaloisProfile ga = galois_group(A), gb = galois_group(B);
        GaloisProfile gab = galois_group(deligne_product(A, B));
        CHECK(ga.orbits.size() * gb.orbits.size() <= gab.orbits.size());
    }
}

TEST_CASE("characteristic 2-group") {
    CHECK((long)characteristic_two_group(pointed_z5()).size() == 2);
    CHECK((long)characteristic_two_group(semion()).size() == 1);
    CHECK((long)characteristic_two_group(fib()).size() == 1);
    // |G_C| / |H_C| = phi2(n) for a level-n lift (here N = 5 odd: n = N)
    GaloisProfile g = galois_group(pointed_z5());
    CHECK(g.group_order / g.h2_order() == phi2(5));
}

TEST_CASE("transitive structure checks") {
    ValidationReport ok = transitive_structure_checks(fib());
    CHECK(ok.ok());

    // non-transitive input with an invertible object V_3
    ValidationReport bad = transitive_structure_checks(build_sl2(3, 1));
    bool invertible_check_failed = false;
    for (auto& ch : bad.checks)
        if (ch.name == "no nontrivial invertible objects" && !ch.pass)
            invertible_check_failed = true;
    CHECK(invertible_check_failed);
    CHECK(!bad.ok());

    ValidationReport triv = transitive_structure_checks(build_trivial());
    CHECK(triv.ok());
}

TEST_CASE("corrupted S-matrix raises NoMatch") {
    ModularData bad = build_sl2_adjoint(3, 1);
    bad.S.at(1, 1) = Cyclotomic(3);
    bad.fusion_cache.reset();
    bool nomatch = false;
    try {
        for (long a : units_mod(5)) galois_permutation(bad, a);
    } catch (const ModcatError& e) {
        nomatch = std::string(e.what()).find("NoMatch") != std::string::npos;
    }
    CHECK(nomatch);
}

TEST_CASE("transitive dims are algebraic units") {
    for (long p : {5L, 7L}) {
        ModularData c = build_sl2_adjoint(p - 2, 1);
        for (int x = 0; x < c.rank; ++x) {
            Cyclotomic norm = Cyclotomic::one();
            for (long a : units_mod(p)) norm = norm * c.dim_of(x).galois(a);
            CHECK((norm == Cyclotomic::one() || norm == Cyclotomic(-1)));
        }
    }
}
