#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "modcat/classify.hpp"
#include "modcat/util.hpp"

using namespace modcat;

TEST_CASE("verify_transitivity_theorems") {
    ModularData a7 = build_sl2_adjoint(5, 1);  // ord(T) = 7
    CHECK(a7.ord_T() == 7);
    CHECK(verify_transitivity_theorems(a7).ok());

    ModularData fib = build_sl2_adjoint(3, 1);
    ModularData a5 = build_sl2_adjoint(5, 1);
    fusion_ring(fib);
    fusion_ring(a5);
    ModularData prod = deligne_product(fib, a5);
    CHECK(prod.ord_T() == 35);
    CHECK(verify_transitivity_theorems(prod).ok());

    CHECK(verify_transitivity_theorems(build_trivial()).ok());
}

TEST_CASE("product transitivity orbit counts") {
    ModularData fib = build_sl2_adjoint(3, 1);
    ModularData a5 = build_sl2_adjoint(5, 1);
    ProductTransitivity pt = product_transitivity(fib, a5);
    CHECK(pt.agree);
    CHECK(pt.observed_orbits == 1);

    ProductTransitivity conj = product_transitivity(build_sl2_adjoint(3, 1), build_sl2_adjoint(3, 3));
    CHECK(conj.agree);
    CHECK(conj.observed_orbits == 2);

    ProductTransitivity unit = product_transitivity(fib, build_trivial());
    CHECK(unit.agree);
    CHECK(unit.observed_orbits == 1);
}

TEST_CASE("prime transitive catalog at p = 5 and 7") {
    CatalogCheck c5 = check_prime_transitive_catalog(5);
    CHECK(c5.count == 4);
    CHECK(c5.all_prime);
    CHECK(c5.all_transitive);
    CHECK(c5.pairwise_inequivalent);
    CHECK(c5.anomalies_distinct);
    for (long o : c5.anomaly_orders) CHECK((o == 5 || o == 10));

    CatalogCheck c7 = check_prime_transitive_catalog(7);
    CHECK(c7.count == 6);
    CHECK(c7.all_prime);
    CHECK(c7.all_transitive);
    CHECK(c7.pairwise_inequivalent);
    CHECK(c7.anomalies_distinct);
}

TEST_CASE("primality of the adjoint family") {
    for (long p : {5L, 7L, 11L, 13L})
        for (long l : units_mod(2 * p)) CHECK(is_prime_category(build_sl2_adjoint(p - 2, l)));
}

TEST_CASE("unique factorization: prime input and a two-factor product") {
    ModularData fib = build_sl2_adjoint(3, 1);
    FactorizationCheck fc = unique_factorization_check(fib);
    CHECK(fc.factors.size() == 1);
    CHECK(fc.factors_prime_transitive);
    CHECK(fc.order_independent);

    ModularData a5 = build_sl2_adjoint(5, 1);
    fusion_ring(fib);
    fusion_ring(a5);
    ModularData prod = deligne_product(fib, a5);
    FactorizationCheck pc = unique_factorization_check(prod);
    CHECK(pc.factors.size() == 2);
    CHECK(pc.factors_prime_transitive);
    CHECK(pc.order_independent);
}

TEST_CASE("classify: small bounds") {
    Catalog c4 = classify_transitive(4);
    REQUIRE(c4.entries.size() == 1);
    CHECK(c4.entries[0].ord_t == 1);
    CHECK(c4.entries[0].rank == 1);

    Catalog c7 = classify_transitive(7);
    std::map<long, long> counts;
    for (auto& e : c7.entries) counts[e.ord_t]++;
    CHECK(c7.entries.size() == 11);
    CHECK(counts[1] == 1);
    CHECK(counts[5] == 4);
    CHECK(counts[7] == 6);

    // count check against the direct formula: prod over primes of phi(2p)
    for (auto& [n, cnt] : counts) {
        long expect = 1;
        for (auto& [p, e] : factorize(n)) expect *= euler_phi(2 * p);
        CHECK(cnt == expect);
    }

    CHECK_THROWS(classify_transitive(500));
}

TEST_CASE("classify entries pass the transitivity suite") {
    Catalog c7 = classify_transitive(7);
    for (auto& e : c7.entries) {
        ModularData c = build_catalog_entry(e);
        CHECK(verify_transitivity_theorems(c).ok());
    }
}

TEST_CASE("catalog dedup consistency: equivalence iff equal anomaly and theta multiset") {
    Catalog c7 = classify_transitive(7);
    for (size_t i = 0; i < c7.entries.size(); ++i)
        for (size_t j = i + 1; j < c7.entries.size(); ++j) {
            if (c7.entries[i].ord_t != c7.entries[j].ord_t) continue;
            ModularData a = build_catalog_entry(c7.entries[i]);
            ModularData b = build_catalog_entry(c7.entries[j]);
            bool equiv = data_equivalent(a, b).has_value();
            CHECK(!equiv);  // catalog is deduplicated
            bool same_anomaly = c7.entries[i].anomaly == c7.entries[j].anomaly;
            std::multiset<long> ta(a.theta_exponents.begin(), a.theta_exponents.end());
            std::multiset<long> tb(b.theta_exponents.begin(), b.theta_exponents.end());
            CHECK((equiv == (same_anomaly && ta == tb)));
        }
}
