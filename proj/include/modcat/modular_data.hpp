#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modcat/matrix.hpp"

namespace modcat {

// Fusion coefficients N_{x,y}^z of a fusion ring with a distinguished unit
// and duality.
struct FusionRing {
    long rank = 0;
    int unit = 0;
    std::vector<int> dual_perm;
    std::vector<std::vector<std::vector<long>>> N;  // N[x][y][z]

    long coeff(int x, int y, int z) const { return N[x][y][z]; }
    // Throws on violated ring axioms (unit, commutativity, duality,
    // associativity).
    void check_invariants() const;

    // Closure of {unit, x} under fusion summands and duals, ascending.
    std::vector<int> tensor_generated(int x) const;
    std::vector<int> closure(std::vector<int> seed) const;
    std::vector<std::vector<int>> all_subring_supports() const;

    static FusionRing tensor(const FusionRing& a, const FusionRing& b);
    FusionRing restricted(const std::vector<int>& support) const;
};

// Exact (pre)modular data: S-matrix over Q(zeta_conductor), twists as
// root-of-unity exponents, duality permutation. Immutable after
// construction; the fusion ring member is a memoization slot.
struct ModularData {
    long rank = 0;
    std::vector<std::string> labels;
    long conductor = 1;
    CycMatrix S;
    std::vector<long> theta_exponents;
    std::vector<int> dual_perm;
    bool degenerate_ok = false;  // premodular data where singular S is expected

    mutable std::shared_ptr<const FusionRing> fusion_cache;
    // memoized transparency table: central[x][y] iff S_{x,y} = d_x d_y
    mutable std::shared_ptr<const std::vector<std::vector<char>>> central_cache;

    const Cyclotomic& dim_of(int x) const { return S.at(0, x); }
    Cyclotomic theta_of(int x) const { return Cyclotomic::zeta(conductor, theta_exponents[x]); }
    long ord_T() const;
    Cyclotomic global_dim() const;
    Cyclotomic gauss_sum(long m) const;
    // tau_m / conj(tau_m), exactly; verified to be a root of unity.
    // Requires gcd(m, ord(T)) = 1 and tau_m != 0.
    Cyclotomic anomaly(long m) const;
};

ModularData build_trivial();

// C(sl2, k) at q^l, q = zeta_{2(k+2)}: rank k+1, conductor 4(k+2).
// Requires gcd(l, 2(k+2)) = 1.
ModularData build_sl2(long k, long l);

// Adjoint subcategory A^{(0)}_{k,l} for odd k: rank (k+1)/2; all entries
// and twists lie in Q(zeta_{k+2}).
ModularData build_sl2_adjoint(long k, long l);

// Pointed data C(A, q) for A = prod Z/orders[i] and the quadratic form
// q(a) = zeta_modulus^{Q(a)}, Q(a) = sum qdiag[i] a_i^2 + sum_{i<j}
// qoff[...] a_i a_j. Well-definedness and nondegeneracy are checked.
struct PointedSpec {
    std::vector<long> orders;
    long modulus = 1;
    std::vector<long> qdiag;
    std::vector<long> qoff;  // row-major upper triangle, i < j
};
ModularData build_pointed(const PointedSpec& spec);

// sVec_eps: rank 2 degenerate premodular data, d_f = eps, theta_f = -eps.
ModularData build_svec(int eps);

ModularData deligne_product(const ModularData& A, const ModularData& B);

// The Verlinde sum, computed from scratch and verified entrywise to be a
// nonnegative integer. Throws SingularS / NotModular errors.
FusionRing verlinde_fusion(const ModularData& C);

// Cached fusion ring: returns the attached/composed ring when present,
// otherwise computes via verlinde_fusion and memoizes.
const FusionRing& fusion_ring(const ModularData& C);

// Exact check that `ring` satisfies the Verlinde identity
// sum_Z N_{X,Y}^Z S_{Z,W} S_{1,W} = S_{X,W} S_{Y,W} for all X, Y, W.
// Together with invertibility of S this pins the ring uniquely.
bool verlinde_identity_holds(const ModularData& C, const FusionRing& ring);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    bool warning_only = false;
    std::string detail;
};
struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const;
    std::string summary() const;
};
enum class VerlindeMode { Full, ViaCachedRing, Skip };
ValidationReport validate_modular(const ModularData& C, VerlindeMode mode = VerlindeMode::Full);

// Frobenius-Perron dimensions (numeric) with the Galois realizer of
// Cor. "FPdim": the unique residue whose image of the d-vector is totally
// >= 1, cross-checked against fusion-matrix eigenvalues.
struct FpDims {
    std::vector<double> approx;
    long realizer_residue = 1;
    bool realizer_is_identity = true;
};
FpDims fp_dims(const ModularData& C);

std::vector<int> tensor_generated(const ModularData& C, int x);
std::vector<std::vector<int>> all_fusion_subcategories(const ModularData& C);
// Muger centralizer at data level: {X : S_{X,Y} = d_X d_Y for all Y in D}.
std::vector<int> centralizer(const ModularData& C, const std::vector<int>& D);
bool is_prime_category(const ModularData& C);
// Factor supports, each sorted ascending; the list sorted for determinism.
std::vector<std::vector<int>> prime_factorization(const ModularData& C);
// Same, but candidate generators are scanned in the given label order
// (determinism/permutation-independence tests).
std::vector<std::vector<int>> prime_factorization_ordered(const ModularData& C,
                                                          const std::vector<int>& scan_order);

// Sub-data on a dual-closed, fusion-closed support containing the unit.
ModularData restrict_to(const ModularData& C, const std::vector<int>& support);

// Modular-data isomorphism: a bijection pi with pi(1) = 1 matching S and
// theta exactly; nullopt when none exists.
std::optional<std::vector<int>> data_equivalent(const ModularData& A, const ModularData& B);

}  // namespace modcat
