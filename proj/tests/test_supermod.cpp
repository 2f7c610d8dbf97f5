#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "modcat/supermod.hpp"
#include "modcat/util.hpp"

using namespace modcat;

namespace {

Cyclotomic sqrt2() { return Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, -1); }

SuperModularData split_fib(int eps = 1) {
    ModularData fib = build_sl2_adjoint(3, 1);
    fusion_ring(fib);
    return make_super(deligne_product(fib, build_svec(eps)));
}

}  // namespace

TEST_CASE("build_sl2_super: k = 1 reduced matrix, k = 0 sVec-like") {
    SuperModularData s1 = build_sl2_super(1, 1);
    CHECK(s1.ambient.rank == 4);
    REQUIRE(s1.pi.size() == 2);
    CHECK(s1.reduced_S.at(0, 0) == Cyclotomic::one());
    CHECK(s1.reduced_S.at(0, 1) == Cyclotomic::one() + sqrt2());
    CHECK(s1.reduced_S.at(1, 1) == Cyclotomic(-1));
    CHECK(s1.reduced_S.at(0, 1) == quantum_integer(3, Cyclotomic::zeta(16, 1)));
    CHECK(Cyclotomic(-1) == quantum_integer(9, Cyclotomic::zeta(16, 1)));

    SuperModularData s0 = build_sl2_super(0, 1);
    CHECK(s0.ambient.rank == 2);
    for (int x = 0; x < 2; ++x)
        CHECK(s0.ambient.dim_of(x) * s0.ambient.dim_of(x) == Cyclotomic::one());

    CHECK_THROWS(build_sl2_super(1, 2));
}

TEST_CASE("fermion transparency for k <= 4") {
    for (long k = 0; k <= 4; ++k) {
        SuperModularData s = build_sl2_super(k, 1);
        CHECK(s.fermion == (int)(2 * k + 1));
        const ModularData& c = s.ambient;
        for (int x = 0; x < c.rank; ++x)
            CHECK(c.S.at(s.fermion, x) == c.dim_of(s.fermion) * c.dim_of(x));
    }
}

TEST_CASE("detect_fermion") {
    // sVec x Fib: fermion (f|1) with eps recovered
    ModularData fib = build_sl2_adjoint(3, 1);
    fusion_ring(fib);
    ModularData prod = deligne_product(build_svec(1), fib);
    auto f = detect_fermion(prod);
    REQUIRE(f.has_value());
    CHECK(prod.labels[f->first] == "(f|V0)");
    CHECK(f->second == 1);

    CHECK(!detect_fermion(fib).has_value());

    SuperModularData s2 = build_sl2_super(2, 1);
    CHECK(s2.ambient.labels[s2.fermion] == "V10");
}

TEST_CASE("basic subset: dual-closed, unit first, alternative choice") {
    SuperModularData s2 = build_sl2_super(2, 1);
    auto pi = basic_subset(s2.ambient, s2.fermion);
    CHECK(pi[0] == 0);
    std::set<int> in(pi.begin(), pi.end());
    for (int x : pi) CHECK(in.count(s2.ambient.dual_perm[x]));
    auto pi2 = basic_subset(s2.ambient, s2.fermion, /*prefer_larger=*/true);
    CHECK(pi != pi2);
    CHECK(pi2[0] == 0);
}

TEST_CASE("super transitivity: k = 1 yes (|G| = 2), k = 2 no, split Fib yes") {
    SuperModularData s1 = build_sl2_super(1, 1);
    SuperProfile p1 = super_galois_orbits(s1);
    CHECK(p1.transitive);
    CHECK(p1.group_order == 2);

    CHECK(!is_super_transitive(build_sl2_super(2, 1)));
    CHECK(is_super_transitive(split_fib()));
    CHECK(is_super_transitive(split_fib(-1)));
}

TEST_CASE("svec_product: unit, Kronecker structure, orbit count") {
    SuperModularData s1 = build_sl2_super(1, 1);
    SuperModularData unit = make_super(build_svec(1));
    CHECK(unit.pi.size() == 1);
    SuperModularData prod = svec_product(s1, unit);
    CHECK(prod.pi.size() == s1.pi.size());
    CHECK(prod.reduced_S == s1.reduced_S);

    SuperModularData sq = svec_product(s1, s1);
    CHECK(sq.pi.size() == s1.pi.size() * s1.pi.size());
    CHECK(sq.reduced_S == CycMatrix::kronecker(s1.reduced_S, s1.reduced_S));
    SuperProfile p = super_galois_orbits(sq);
    CHECK(p.orbits.size() == 2);  // Galois-conjugate-like field intersection

    SuperModularData sm = make_super(build_svec(-1));
    CHECK_THROWS_WITH_AS(svec_product(s1, sm), doctest::Contains("EpsilonMismatch"), ModcatError);
}

TEST_CASE("more than one fermion is rejected") {
    // sVec x sVec has a transparent Z/2 x Z/2, not a single fermion
    ModularData two = deligne_product(build_svec(1), build_svec(1));
    CHECK_THROWS_WITH_AS(detect_fermion(two), doctest::Contains("MultipleFermions"), ModcatError);
}

TEST_CASE("orbit-count bounds for sVec products") {
    SuperModularData s1 = build_sl2_super(1, 1);
    SuperModularData s3 = build_sl2_super(3, 1);
    for (auto [A, B] : {std::pair<const SuperModularData&, const SuperModularData&>{s1, s1},
                        {s1, s3}}) {
        SuperProfile pa = super_galois_orbits(A), pb = super_galois_orbits(B);
        SuperProfile pc = super_galois_orbits(svec_product(A, B));
        CHECK(pa.orbits.size() * pb.orbits.size() <= pc.orbits.size());
        if (pa.transitive && pb.transitive) {
            // transitive factors: |Orb| = |G_A||G_B| / |G_C|
            CHECK(pc.orbits.size() == pa.group_order * pb.group_order / pc.group_order);
        }
    }
}

TEST_CASE("block form reconstruction") {
    for (long k : {1L, 2L}) {
        SuperModularData s = build_sl2_super(k, 1);
        const FusionRing& ring = fusion_ring(s.ambient);
        Cyclotomic eps(s.epsilon);
        for (size_t i = 0; i < s.pi.size(); ++i)
            for (size_t j = 0; j < s.pi.size(); ++j) {
                int fx = -1, fy = -1;
                for (int z = 0; z < s.ambient.rank; ++z) {
                    if (ring.N[s.fermion][s.pi[i]][z]) fx = z;
                    if (ring.N[s.fermion][s.pi[j]][z]) fy = z;
                }
                CHECK(s.ambient.S.at(s.pi[i], s.pi[j]) == s.reduced_S.at(i, j));
                CHECK(s.ambient.S.at(fx, s.pi[j]) == eps * s.reduced_S.at(i, j));
                CHECK(s.ambient.S.at(fx, fy) == s.reduced_S.at(i, j));
            }
    }
}

TEST_CASE("s-simplicity and split detection") {
    for (long k : {1L, 2L, 3L}) CHECK(is_s_simple(build_sl2_super(k, 1)));

    SuperModularData sf = split_fib();
    SplitResult sr = split_check(sf);
    REQUIRE(sr.status == SplitResult::Split);
    // the split factor is the Fibonacci copy
    ModularData d = restrict_to(sf.ambient, sr.modular_factor);
    CHECK(data_equivalent(d, build_sl2_adjoint(3, 1)).has_value());

    CHECK(split_check(build_sl2_super(1, 1)).status == SplitResult::NonSplit);
    // Fib x sVec has no proper fusion subcategory containing f beyond {1,f},
    // and it is not pointed, so it is itself s-simple.
    CHECK(is_s_simple(split_fib()));
}

TEST_CASE("unit dims on the sigma(1) orbit") {
    SuperModularData s1 = build_sl2_super(3, 1);
    SuperProfile p = super_galois_orbits(s1);
    long m = s1.ambient.conductor;
    for (auto& [a, perm] : p.action_table) {
        int img = s1.pi[perm[0]];
        Cyclotomic norm = Cyclotomic::one();
        for (long u : units_mod(m)) norm = norm * s1.ambient.dim_of(img).galois(u);
        CHECK((norm == Cyclotomic::one() || norm == Cyclotomic(-1)));
    }
}

TEST_CASE("|G_C| = |Pi| for transitive super data") {
    for (long k : {1L, 3L}) {
        SuperModularData s = build_sl2_super(k, 1);
        SuperProfile p = super_galois_orbits(s);
        CHECK(p.transitive);
        CHECK(p.group_order == (long)s.pi.size());
    }
}

TEST_CASE("verify_super_theorems up to k = 4") {
    ValidationReport rep = verify_super_theorems(4);
    if (!rep.ok()) MESSAGE(rep.summary());
    CHECK(rep.ok());
}
