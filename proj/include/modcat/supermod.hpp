#pragma once

#include <map>
#include <optional>
#include <vector>

#include "modcat/modular_data.hpp"

namespace modcat {

// Super-modular data: premodular ambient data with a transparent fermion,
// a basic subset Pi of fermion-orbit representatives (unit first, closed
// under duals) and the invertible reduced S-matrix indexed by Pi.
struct SuperModularData {
    ModularData ambient;
    int fermion = -1;
    int epsilon = 0;  // d_f
    std::vector<int> pi;
    CycMatrix reduced_S;
};

// A^{(0)}_{4k+2, l}: rank 2k+2 premodular data with fermion V_{4k+2} and
// Pi_0 = {V_0, V_2, ..., V_{2k}}. Requires gcd(l, 8(k+1)) = 1.
SuperModularData build_sl2_super(long k, long l);

// The transparent invertible non-unit with X (x) X = 1 and f (x) X != X
// for all X. Returns nullopt when no fermion exists; throws
// MultipleFermions when the transparent subcategory is larger than sVec.
std::optional<std::pair<int, int>> detect_fermion(const ModularData& C);

// Greedy dual-closed orbit representatives, unit first. `prefer_larger`
// flips the free choices (used to check basic-subset independence).
std::vector<int> basic_subset(const ModularData& C, int fermion, bool prefer_larger = false);

// Assembles SuperModularData from ambient premodular data; verifies the
// fermion, the block structure of S, and invertibility of the reduced
// S-matrix.
SuperModularData make_super(const ModularData& ambient);

struct SuperProfile {
    long ambient_modulus = 1;
    std::map<long, std::vector<int>> action_table;  // residue -> permutation of pi
    long group_order = 0;
    std::vector<std::vector<int>> orbits;  // partition of pi positions
    bool transitive = false;
};
// Galois action on the reduced S-matrix via the exact ratio identity;
// asserts the orbit structure is unchanged under an alternative basic
// subset.
SuperProfile super_galois_orbits(const SuperModularData& C);
bool is_super_transitive(const SuperModularData& C);

// C = A x_sVec B: ambient simples are fermion-orbit representatives of
// pairs, Pi_C = Pi_A x Pi_B, reduced S the Kronecker product. Requires
// matching epsilon (EpsilonMismatch otherwise).
SuperModularData svec_product(const SuperModularData& A, const SuperModularData& B);

bool is_s_simple(const SuperModularData& C);

struct SplitResult {
    enum Status { Split, NonSplit, Undetermined } status = Undetermined;
    std::vector<int> modular_factor;  // ambient support when Split
};
SplitResult split_check(const SuperModularData& C);

// Theorem suite over k <= kmax (sampled l): transitivity iff k+1 is a
// power of 2; reduced-S structure theorems for the transitive cases; split
// and s-simple behaviour; factor recovery for a small split product.
ValidationReport verify_super_theorems(long kmax);

}  // namespace modcat
