#pragma once

#include <map>
#include <vector>

#include "modcat/modular_data.hpp"

namespace modcat {

// The Galois group of Q(S) as a faithful permutation group on the labels,
// together with the homomorphism table from (Z/M')^x.
struct GaloisProfile {
    long ambient_modulus = 1;  // M' = lcm(data conductor, ord T)
    std::map<long, std::vector<int>> action_table;  // residue -> permutation
    long group_order = 0;
    std::vector<std::vector<int>> orbits;  // partition of labels, sorted
    bool transitive = false;
    bool regular = false;
    std::vector<std::vector<int>> h2_elements;  // H_C as a set of permutations
    long h2_order() const { return (long)h2_elements.size(); }

    // Smallest residue per distinct permutation, ascending.
    std::vector<long> element_residues() const;
};

// Permutation sigma-hat for the automorphism zeta_{M'} -> zeta_{M'}^a;
// requires gcd(a, M') = 1 and validated modular data. Columns are matched
// by the exact cross-multiplied ratio identity
//   sigma(S_{X,Y}) d_{Y'} = S_{X,Y'} sigma(d_Y) for all X.
// Throws NoMatch when no unique column matches (non-modular input).
std::vector<int> galois_permutation(const ModularData& C, long a);

// Restriction to Q(S) of any sigma in Gal(Qbar/Q) with sigma(zeta_m) =
// zeta_m^a. Requires ord(T) | m and gcd(a, m) = 1; the result is
// independent of the chosen extension of sigma to the entry conductors.
std::vector<int> sigma_perm(const ModularData& C, long a, long m);

GaloisProfile galois_group(const ModularData& C);
bool is_transitive(const ModularData& C);
bool check_regularity(const ModularData& C);

// H_C: image in G_C of the elementary 2-subgroup of the ambient cyclotomic
// Galois group. Uses the direct route for 4 !| ord(T) and a level-n lift
// otherwise; cross-checks the two when both apply.
std::vector<std::vector<int>> characteristic_two_group(const ModularData& C);

// Exact structural consequences of transitivity (self-duality, the
// S = sigma(d) d identity, distinct squared dims, trivial dim stabilizer,
// unit norms).
ValidationReport transitive_structure_checks(const ModularData& C);

}  // namespace modcat
