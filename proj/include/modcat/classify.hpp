#pragma once

#include <string>
#include <vector>

#include "modcat/galois.hpp"
#include "modcat/modular_data.hpp"

namespace modcat {

// Exact structural checks for a transitive input: ord(T) odd, square-free,
// prime factors > 3; trivial H_C; all 12 lifts minimal and irreducible;
// every fusion subcategory modular and transitive.
ValidationReport verify_transitivity_theorems(const ModularData& C);

struct ProductTransitivity {
    long predicted_orbits = 0;  // [F:Q] = |G_A| |G_B| / |G_{A x B}|
    long observed_orbits = 0;
    bool agree = false;
};
ProductTransitivity product_transitivity(const ModularData& A, const ModularData& B);

struct CatalogCheck {
    long p = 0;
    long count = 0;  // number of inequivalent categories found
    bool all_prime = false;
    bool all_transitive = false;
    bool pairwise_inequivalent = false;
    bool anomalies_distinct = false;
    std::vector<long> anomaly_orders;
};
// Builds A^{(0)}_{p-2,l} for every l in (Z/2p)^x and certifies the
// prime-transitive catalog at order p.
CatalogCheck check_prime_transitive_catalog(long p);

struct FactorizationCheck {
    std::vector<std::vector<int>> factors;
    bool factors_prime_transitive = false;
    bool order_independent = false;  // same supports under permuted scans
};
FactorizationCheck unique_factorization_check(const ModularData& C);

struct CatalogEntry {
    long ord_t = 1;
    std::vector<long> primes;
    std::vector<long> l_tuple;
    long rank = 1;
    std::string anomaly;     // exact serialized value
    long anomaly_order = 1;  // order of the root of unity alpha_1
};
struct Catalog {
    long max_ord_t = 0;
    std::vector<CatalogEntry> entries;
};
// Enumerates all transitive modular categories with ord(T) <= maxN:
// square-free N coprime to 6, one entry per l-tuple, deduplicated by
// data_equivalent. maxN is capped by a resource bound.
Catalog classify_transitive(long maxN);

// The category of a catalog entry (used by consumers to re-verify entries).
ModularData build_catalog_entry(const CatalogEntry& e);

}  // namespace modcat
