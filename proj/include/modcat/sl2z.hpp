#pragma once

#include <optional>
#include <vector>

#include "modcat/modular_data.hpp"

namespace modcat {

struct SignedPermutation {
    std::vector<int> perm;   // row X has its nonzero entry in column perm[X]
    std::vector<int> signs;  // that entry, +1 or -1
};

// Unique CRT factorization of a minimal type: zeta_n^l =
// zeta_d^{l0} * prod zeta_{p_i}^{l_i} with n = d * p_1 ... p_k, d | 12.
struct MinimalTypeDescriptor {
    long level = 1;
    long type_l = 0;
    long d = 1;
    long l0 = 0;
    struct PrimePart {
        long p;
        long lp;
        int j;  // legendre(lp, p)
    };
    std::vector<PrimePart> parts;
};

// An exact pair (s, t) satisfying s^4 = 1 and (st)^3 = s^2. t is diagonal
// and stored by root-of-unity exponents; s is kept factored as
// s_scalar * s_mat so that word evaluations stay in small conductors.
struct SL2ZRep {
    long dim = 0;
    long t_modulus = 1;
    std::vector<long> t_exponents;  // t_ii = zeta_{t_modulus}^{t_exponents[i]}
    Cyclotomic s_scalar;
    CycMatrix s_mat;

    long level() const;  // ord(t)
    std::vector<long> t_exponents_mod_level() const;
    Cyclotomic t_entry(int i) const { return Cyclotomic::zeta(t_modulus, t_exponents[i]); }
    Cyclotomic s_entry(int i, int j) const { return s_scalar * s_mat.at(i, j); }
    CycMatrix s_full() const;
    CycMatrix t_full() const;

    mutable std::shared_ptr<const CycMatrix> s_mat_cubed_cache;
    const CycMatrix& s_mat_cubed() const;
};

// Positive square root of dim(C): tau_1 / xi with xi searched among roots
// of unity in conductors widened by factors {2, 3}; the result is verified
// exactly (square equals dim, conjugation-fixed) and numerically positive.
Cyclotomic sqrt_global_dim(const ModularData& C);

// The 12 linear lifts of the projective (S, T) representation: base lift
// s = S / sqrt(dim), t = T / gamma with gamma^3 = xi_1, tensored with the
// twelve 1-dimensional characters. Lift i has t = zeta_12^i * t_base.
std::vector<SL2ZRep> lift_projective(const ModularData& C);

// chi_x for x = zeta_12^e: the 1-dimensional representation t -> x,
// s -> x^{-3}.
SL2ZRep chi_rep(long zeta12_exponent);

// Level-p irreducible representation eta^p_j of dimension (p-1)/2, built
// exactly inside Q(zeta_p); requires p prime > 3, j in {+1, -1}.
SL2ZRep eta_rep(long p, int j);

SL2ZRep tensor_rep(const SL2ZRep& a, const SL2ZRep& b);

long rep_level(const SL2ZRep& rho);

// Minimal iff dim = phi2(n) and the t-spectrum is the squared-Galois orbit
// of zeta_n^l for some unit l, each eigenvalue once.
std::optional<MinimalTypeDescriptor> is_minimal(const SL2ZRep& rho);

// CRT factorization of a minimal type; throws ShapeError when n has
// a forbidden prime-power factor (8, 9, or p^2 with p >= 5).
MinimalTypeDescriptor minimal_decomposition(long n, long l);

// Commutant dimension = 1, computed exactly with t-eigenspace blocking.
bool is_irreducible(const SL2ZRep& rho);

// g_sigma = rho(t^a s t^b s t^a s^{-1}), b = a^{-1} mod level; asserts the
// result is a signed permutation and verifies sigma(s) = g s = s g^{-1}
// and sigma^2(t) = g t g^{-1} exactly.
SignedPermutation g_sigma(const SL2ZRep& rho, long a);

// epsilon_sigma(X) = sigma(s_{X,1}) / s_{sigma(X),1}, cross-checked against
// the signs of g_sigma; throws on disagreement.
std::vector<int> epsilon_signs(const SL2ZRep& rho, long a);

struct IsotypicComponent {
    std::vector<int> character;  // character value (+-1) on each section generator
    long dimension = 0;
};
// Exact projector decomposition of V_C under a section of H_C inside the
// elementary 2-group of (Z/level)^x; each component is verified to be s-
// and t-invariant.
std::vector<IsotypicComponent> isotypic_decomposition(const SL2ZRep& rho, const ModularData& C);

struct Intertwiner {
    std::vector<int> perm;
    std::vector<int> signs;  // U = diag(signs) * P; U rho U^{-1} = rho'
};
// Requires multiplicity-free t-spectra on both sides (MultiplicityError
// otherwise); matches eigenvectors by t-exponent and searches signed
// diagonal conjugations.
std::optional<Intertwiner> reps_equivalent(const SL2ZRep& a, const SL2ZRep& b);

// Direct matrix verification of s^4 = 1 and (st)^3 = s^2.
bool verify_relations(const SL2ZRep& rho);

// True iff every entry of s lies in Q(zeta_n).
bool entries_lie_in(const SL2ZRep& rho, long n);

}  // namespace modcat
