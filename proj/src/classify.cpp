#include "modcat/classify.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "modcat/sl2z.hpp"
#include "modcat/util.hpp"

namespace modcat {

namespace {
constexpr long kMaxOrdTBound = 100;
}

ValidationReport verify_transitivity_theorems(const ModularData& C) {
    MODCAT_CHECK(is_transitive(C), "verify_transitivity_theorems requires a transitive input");
    ValidationReport rep;
    auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
        rep.checks.push_back({name, pass, false, detail});
    };

    long N = C.ord_T();
    bool trivial = (C.rank == 1);
    add("ord(T) odd", trivial || N % 2 == 1);
    add("ord(T) square-free", is_squarefree(N));
    bool factors_ok = true;
    for (auto& [p, e] : factorize(N))
        if (p <= 3) factors_ok = false;
    add("prime factors of ord(T) exceed 3", trivial || factors_ok);

    add("H_C trivial", (long)characteristic_two_group(C).size() == 1);

    bool all_minimal = true, all_irreducible = true;
    auto lifts = lift_projective(C);
    for (auto& rho : lifts) {
        if (!is_minimal(rho).has_value()) all_minimal = false;
        if (!is_irreducible(rho)) all_irreducible = false;
    }
    add("all 12 lifts minimal", all_minimal);
    add("all 12 lifts irreducible", all_irreducible);

    bool subcats_ok = true;
    for (auto& sup : all_fusion_subcategories(C)) {
        if (!C.S.submatrix(sup, sup).is_invertible()) {
            subcats_ok = false;
            break;
        }
        if (sup.size() > 1 && (long)sup.size() < C.rank) {
            ModularData D = restrict_to(C, sup);
            if (!is_transitive(D)) subcats_ok = false;
        }
    }
    add("every fusion subcategory is a transitive modular subcategory", subcats_ok);
    return rep;
}

ProductTransitivity product_transitivity(const ModularData& A, const ModularData& B) {
    GaloisProfile ga = galois_group(A), gb = galois_group(B);
    MODCAT_CHECK(ga.transitive && gb.transitive,
                 "product_transitivity requires transitive factors");
    ModularData C = deligne_product(A, B);
    GaloisProfile gc = galois_group(C);
    ProductTransitivity out;
    MODCAT_CHECK(ga.group_order * gb.group_order % gc.group_order == 0,
                 "|G_C| does not divide |G_A||G_B|");
    out.predicted_orbits = ga.group_order * gb.group_order / gc.group_order;
    out.observed_orbits = (long)gc.orbits.size();
    out.agree = out.predicted_orbits == out.observed_orbits;
    return out;
}

CatalogCheck check_prime_transitive_catalog(long p) {
    MODCAT_CHECK(p > 3 && is_prime(p), "catalog check requires a prime p > 3");
    CatalogCheck out;
    out.p = p;
    std::vector<ModularData> cats;
    std::vector<Cyclotomic> anomalies;
    for (long l : units_mod(2 * p)) cats.push_back(build_sl2_adjoint(p - 2, l));
    out.count = (long)cats.size();
    out.all_prime = true;
    out.all_transitive = true;
    out.pairwise_inequivalent = true;
    out.anomalies_distinct = true;
    for (auto& c : cats) {
        if (!is_prime_category(c)) out.all_prime = false;
        if (!is_transitive(c)) out.all_transitive = false;
        Cyclotomic a1 = c.anomaly(1);
        auto rou = a1.as_root_of_unity();
        MODCAT_CHECK(rou.has_value(), "catalog anomaly is not a root of unity");
        out.anomaly_orders.push_back(rou->first);
        anomalies.push_back(a1);
    }
    for (size_t i = 0; i < cats.size(); ++i)
        for (size_t j = i + 1; j < cats.size(); ++j) {
            if (data_equivalent(cats[i], cats[j]).has_value()) out.pairwise_inequivalent = false;
            if (anomalies[i] == anomalies[j]) out.anomalies_distinct = false;
        }
    return out;
}

FactorizationCheck unique_factorization_check(const ModularData& C) {
    // The transitivity precondition is re-verified here only at desk scale;
    // for larger products it is the caller's obligation (the factors are
    // still checked below).
    if (C.rank <= 12) {
        MODCAT_CHECK(is_transitive(C), "unique_factorization_check requires a transitive input");
    }
    FactorizationCheck out;
    out.factors = prime_factorization(C);

    out.factors_prime_transitive = true;
    for (auto& sup : out.factors) {
        if (sup.size() == 1 && out.factors.size() > 1) continue;
        ModularData D = restrict_to(C, sup);
        if ((long)sup.size() < C.rank) {
            if (!is_prime_category(D) || !is_transitive(D)) out.factors_prime_transitive = false;
        } else {
            if (!is_prime_category(D)) out.factors_prime_transitive = false;
        }
    }

    out.order_independent = true;
    std::mt19937_64 rng(0x5eed);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<int> order((size_t)C.rank);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        if (prime_factorization_ordered(C, order) != out.factors) out.order_independent = false;
    }
    return out;
}

namespace {

void enum_square_free(long maxN, std::vector<long>& out) {
    for (long n = 1; n <= maxN; ++n) {
        if (n % 2 == 0 || n % 3 == 0) continue;
        if (!is_squarefree(n)) continue;
        bool ok = true;
        for (auto& [p, e] : factorize(n))
            if (p <= 3) ok = false;
        if (ok) out.push_back(n);
    }
}

}  // namespace

ModularData build_catalog_entry(const CatalogEntry& e) {
    if (e.primes.empty()) return build_trivial();
    ModularData c = build_sl2_adjoint(e.primes[0] - 2, e.l_tuple[0]);
    fusion_ring(c);
    for (size_t i = 1; i < e.primes.size(); ++i) {
        ModularData f = build_sl2_adjoint(e.primes[i] - 2, e.l_tuple[i]);
        fusion_ring(f);
        c = deligne_product(c, f);
    }
    return c;
}

Catalog classify_transitive(long maxN) {
    MODCAT_CHECK(maxN >= 1 && maxN <= kMaxOrdTBound,
                 "classify_transitive: maxN exceeds the configured resource bound");
    Catalog cat;
    cat.max_ord_t = maxN;
    std::vector<long> ns;
    enum_square_free(maxN, ns);

    for (long n : ns) {
        std::vector<long> primes;
        for (auto& [p, e] : factorize(n))
            if (p > 1) primes.push_back(p);
        // all l-tuples, lexicographic
        std::vector<std::vector<long>> tuples = {{}};
        for (long p : primes) {
            std::vector<std::vector<long>> next;
            for (auto& t : tuples)
                for (long l : units_mod(2 * p)) {
                    auto t2 = t;
                    t2.push_back(l);
                    next.push_back(t2);
                }
            tuples = next;
        }

        // build and verify tuples in parallel; dedupe sequentially for a
        // deterministic catalog order
        std::vector<CatalogEntry> candidates(tuples.size());
        std::vector<ModularData> built(tuples.size());
        std::exception_ptr bad;
        std::mutex mu;
        parallel_for(tuples.size(), [&](size_t ti) {
            try {
                CatalogEntry e;
                e.ord_t = n;
                e.primes = primes;
                e.l_tuple = tuples[ti];
                ModularData c = build_catalog_entry(e);
                MODCAT_CHECK(c.ord_T() == n, "catalog entry has unexpected ord(T)");
                MODCAT_CHECK(is_transitive(c), "catalog entry is not transitive");
                e.rank = c.rank;
                if (n == 1) {
                    e.anomaly = "1";
                    e.anomaly_order = 1;
                } else {
                    Cyclotomic a1 = c.anomaly(1);
                    e.anomaly = a1.to_string();
                    e.anomaly_order = a1.as_root_of_unity()->first;
                }
                candidates[ti] = e;
                built[ti] = std::move(c);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!bad) bad = std::current_exception();
            }
        });
        if (bad) std::rethrow_exception(bad);

        std::vector<size_t> kept;
        for (size_t ti = 0; ti < tuples.size(); ++ti) {
            bool dup = false;
            for (size_t pi : kept)
                if (data_equivalent(built[pi], built[ti]).has_value()) dup = true;
            if (!dup) {
                kept.push_back(ti);
                cat.entries.push_back(candidates[ti]);
            }
        }
    }
    return cat;
}

}  // namespace modcat
