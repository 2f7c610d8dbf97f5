#include "modcat/sl2z.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "modcat/galois.hpp"
#include "modcat/util.hpp"

namespace modcat {

namespace {

long norm_mod(long x, long m) { return ((x % m) + m) % m; }

// Unit residue modulo L extending a (mod m), m | L.
long lift_unit(long a, long m, long L) {
    a = norm_mod(a, m);
    for (long t = a; t < a + L; t += m) {
        long c = (t == 0) ? L : t;
        if (std::gcd(c, L) == 1) return c % L == 0 ? 1 : c % L;
    }
    throw ModcatError("no unit lift of residue");
}

long conductor_span(const SL2ZRep& r) {
    long L = lcm_long(r.t_modulus, r.s_scalar.conductor());
    for (long i = 0; i < r.dim; ++i)
        for (long j = 0; j < r.dim; ++j) L = lcm_long(L, r.s_mat.at(i, j).conductor());
    return L;
}

}  // namespace

long SL2ZRep::level() const {
    long n = 1;
    for (long e : t_exponents) {
        long g = std::gcd(norm_mod(e, t_modulus), t_modulus);
        n = std::lcm(n, t_modulus / (g == 0 ? t_modulus : g));
    }
    return n;
}

std::vector<long> SL2ZRep::t_exponents_mod_level() const {
    long n = level();
    std::vector<long> out;
    for (long e : t_exponents) {
        long num = norm_mod(e, t_modulus) * n;
        MODCAT_CHECK(num % t_modulus == 0, "t exponent does not reduce to the level");
        out.push_back((num / t_modulus) % n);
    }
    return out;
}

CycMatrix SL2ZRep::s_full() const { return s_mat.scaled(s_scalar); }

CycMatrix SL2ZRep::t_full() const {
    CycMatrix t(dim, dim);
    for (long i = 0; i < dim; ++i) t.at(i, i) = t_entry((int)i);
    return t;
}

const CycMatrix& SL2ZRep::s_mat_cubed() const {
    if (!s_mat_cubed_cache)
        s_mat_cubed_cache = std::make_shared<CycMatrix>(s_mat * s_mat * s_mat);
    return *s_mat_cubed_cache;
}

Cyclotomic sqrt_global_dim(const ModularData& C) {
    Cyclotomic dim = C.global_dim();
    Cyclotomic tau = C.gauss_sum(1);
    MODCAT_CHECK(!tau.is_zero(), "sqrt_global_dim: tau_1 = 0");
    auto e = tau.embed(128);
    double phase = std::atan2(e.im, e.re);
    long base = lcm_long(2, C.conductor);
    for (long f : {1L, 2L, 3L, 4L, 6L, 12L}) {
        long K = f * base;
        double turns = phase / (2.0 * M_PI);
        long e0 = (long)std::llround(turns * (double)K);
        for (long delta : {0L, 1L, -1L}) {
            long exp = norm_mod(e0 + delta, K);
            // candidate xi = zeta_K^exp; r = tau * xi^{-1}
            Cyclotomic r = tau * Cyclotomic::zeta(K, -exp);
            if (r * r != dim) continue;
            if (!r.is_real()) continue;
            if (r.sign_real() > 0) return r;
        }
    }
    throw ModcatError(
        "sqrt_global_dim: NotFound after widening the conductor by factors {2,3}; "
        "tau_1 phase did not match a root of unity");
}

std::vector<SL2ZRep> lift_projective(const ModularData& C) {
    MODCAT_CHECK(!C.degenerate_ok, "LiftFailure: lifts require modular (nondegenerate) data");

    // Exact certificates at the unnormalized level. With r^2 = dim,
    // gamma^3 = xi_1, these imply s^4 = 1 and (st)^3 = s^2 for every lift.
    Cyclotomic dim = C.global_dim();
    Cyclotomic tau = C.gauss_sum(1);
    long n = C.rank;
    {
        std::vector<char> ok(n, 1);
        parallel_for(n, [&](size_t x) {
            for (long y = 0; y < n && ok[x]; ++y) {
                Cyclotomic acc = Cyclotomic::zero();
                for (long k = 0; k < n; ++k) acc = acc + C.S.at((long)x, k) * C.S.at(k, y);
                if (acc != ((C.dual_perm[x] == y) ? dim : Cyclotomic::zero())) ok[x] = 0;
            }
        });
        MODCAT_CHECK(std::all_of(ok.begin(), ok.end(), [](char c) { return c; }),
                     "LiftFailure: S^2 != dim(C) * C");
        // (S T)^3 = tau_1 S^2
        CycMatrix ST(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                ST.at(i, j) = C.S.at(i, j) * C.theta_of((int)j);
        CycMatrix ST3 = ST * ST * ST;
        std::vector<char> ok3(n, 1);
        parallel_for(n, [&](size_t x) {
            for (long y = 0; y < n && ok3[x]; ++y) {
                Cyclotomic expect = (C.dual_perm[x] == y) ? dim * tau : Cyclotomic::zero();
                if (ST3.at((long)x, y) != expect) ok3[x] = 0;
            }
        });
        MODCAT_CHECK(std::all_of(ok3.begin(), ok3.end(), [](char c) { return c; }),
                     "LiftFailure: (ST)^3 != tau_1 S^2");
    }

    Cyclotomic r = sqrt_global_dim(C);
    Cyclotomic r_inv = r * dim.inverse();  // 1/r = r/dim
    Cyclotomic xi = tau * r_inv;
    auto rou = xi.as_root_of_unity();
    MODCAT_CHECK(rou.has_value(), "LiftFailure: central charge xi_1 is not a root of unity");
    auto [m, eexp] = *rou;

    Cyclotomic gamma;
    long gK, gE;
    if (m % 3 != 0) {
        gK = m;
        gE = (eexp * inv_mod(3, m)) % m;
    } else {
        gK = 3 * m;
        gE = eexp;
    }
    gamma = Cyclotomic::zeta(gK, gE);
    MODCAT_CHECK(gamma.pow(3) == xi, "LiftFailure: gamma^3 != xi_1");

    long n_amb = lcm_long(lcm_long(C.conductor, gK), 12);
    std::vector<SL2ZRep> lifts;
    for (long c12 = 0; c12 < 12; ++c12) {
        SL2ZRep rep;
        rep.dim = C.rank;
        rep.t_modulus = n_amb;
        for (int x = 0; x < C.rank; ++x) {
            // t_XX = zeta_12^c12 * gamma^{-1} * theta_X
            long e = norm_mod(C.theta_exponents[x] * (n_amb / C.conductor) -
                                  gE * (n_amb / gK) + c12 * (n_amb / 12),
                              n_amb);
            rep.t_exponents.push_back(e);
        }
        rep.s_scalar = r_inv * Cyclotomic::zeta(12, -3 * c12);
        rep.s_mat = C.S;
        lifts.push_back(std::move(rep));
    }

    long N = C.ord_T();
    if (N % 4 != 0) {
        long minlev = lifts[0].level();
        for (auto& l : lifts) minlev = std::min(minlev, l.level());
        MODCAT_CHECK(minlev == N, "LiftFailure: no level-N lift although 4 does not divide N");
    }
    return lifts;
}

SL2ZRep chi_rep(long zeta12_exponent) {
    SL2ZRep rep;
    rep.dim = 1;
    rep.t_modulus = 12;
    rep.t_exponents = {norm_mod(zeta12_exponent, 12)};
    rep.s_scalar = Cyclotomic::zeta(12, -3 * zeta12_exponent);
    rep.s_mat = CycMatrix::identity(1);
    return rep;
}

SL2ZRep eta_rep(long p, int j) {
    MODCAT_CHECK(p > 3 && is_prime(p), "eta_rep requires a prime p > 3");
    MODCAT_CHECK(j == 1 || j == -1, "eta_rep requires j in {+1, -1}");
    long a = 0;
    for (long c = 1; c < p; ++c)
        if (legendre(c, p) == j) {
            a = c;
            break;
        }
    long d = (p - 1) / 2;
    SL2ZRep rep;
    rep.dim = d;
    rep.t_modulus = p;
    for (long x = 1; x <= d; ++x) rep.t_exponents.push_back(norm_mod(a * x * x, p));

    // s = (j / sqrt(p*)) * (zeta_p^{2axy} - zeta_p^{-2axy}) with
    // sqrt(p*)^2 = p* = (-1)^{(p-1)/2} p. With the t-spectrum fixed as
    // {a x^2}, the branch of sqrt(p*) is forced by (st)^3 = s^2: it is the
    // negative of the Gauss sum for every p (checked exactly below).
    Cyclotomic g = gauss_sum_sqrt(p);
    long pstar = (p % 4 == 1) ? p : -p;
    Cyclotomic sqrt_pstar = -g;
    BigRational inv_pstar(1, pstar);
    inv_pstar.canonicalize();  // gmp requires a positive denominator
    Cyclotomic denom_inv = sqrt_pstar.scaled(inv_pstar);  // 1/sqrt(p*)
    rep.s_scalar = denom_inv.scaled(BigRational(j));
    rep.s_mat = CycMatrix(d, d);
    for (long x = 1; x <= d; ++x)
        for (long y = 1; y <= d; ++y)
            rep.s_mat.at(x - 1, y - 1) =
                Cyclotomic::zeta(p, 2 * a * x * y) - Cyclotomic::zeta(p, -2 * a * x * y);
    MODCAT_CHECK(verify_relations(rep), "eta_rep: defining relations failed");
    return rep;
}

SL2ZRep tensor_rep(const SL2ZRep& a, const SL2ZRep& b) {
    SL2ZRep rep;
    rep.dim = a.dim * b.dim;
    rep.t_modulus = lcm_long(a.t_modulus, b.t_modulus);
    for (long i = 0; i < a.dim; ++i)
        for (long j = 0; j < b.dim; ++j)
            rep.t_exponents.push_back(norm_mod(
                a.t_exponents[i] * (rep.t_modulus / a.t_modulus) +
                    b.t_exponents[j] * (rep.t_modulus / b.t_modulus),
                rep.t_modulus));
    rep.s_scalar = a.s_scalar * b.s_scalar;
    rep.s_mat = CycMatrix::kronecker(a.s_mat, b.s_mat);
    return rep;
}

long rep_level(const SL2ZRep& rho) { return rho.level(); }

MinimalTypeDescriptor minimal_decomposition(long n, long l) {
    MODCAT_CHECK(std::gcd(norm_mod(l, n) == 0 ? n : norm_mod(l, n), n) == 1,
                 "minimal_decomposition requires gcd(l, n) = 1");
    MinimalTypeDescriptor md;
    md.level = n;
    md.type_l = norm_mod(l, n);
    long d = 1;
    for (auto& [p, e] : factorize(n)) {
        if (p == 2) {
            MODCAT_CHECK(e <= 2, "ShapeError: 8 | n");
            d <<= e;
        } else if (p == 3) {
            MODCAT_CHECK(e <= 1, "ShapeError: 9 | n");
            d *= 3;
        } else {
            MODCAT_CHECK(e == 1, "ShapeError: p^2 | n for a prime p >= 5");
            long lp = (norm_mod(l, p) * inv_mod(norm_mod(n / p, p), p)) % p;
            md.parts.push_back({p, lp, legendre(lp, p)});
        }
    }
    md.d = d;
    md.l0 = (d == 1) ? 0 : (norm_mod(l, d) * inv_mod(norm_mod(n / d, d), d)) % d;

    // exact CRT verification: zeta_n^l = zeta_d^{l0} * prod zeta_p^{lp}
    Cyclotomic lhs = Cyclotomic::zeta(n, md.type_l);
    Cyclotomic rhs = Cyclotomic::zeta(md.d, md.l0);
    for (auto& part : md.parts) rhs = rhs * Cyclotomic::zeta(part.p, part.lp);
    MODCAT_CHECK(lhs == rhs, "minimal_decomposition: CRT factorization failed exact check");
    return md;
}

std::optional<MinimalTypeDescriptor> is_minimal(const SL2ZRep& rho) {
    long n = rho.level();
    if (rho.dim != phi2(n)) return std::nullopt;
    std::vector<long> exps = rho.t_exponents_mod_level();
    std::vector<long> sorted_exps = exps;
    std::sort(sorted_exps.begin(), sorted_exps.end());
    // each eigenvalue exactly once
    for (size_t i = 1; i < sorted_exps.size(); ++i)
        if (sorted_exps[i] == sorted_exps[i - 1]) return std::nullopt;

    for (long l : sorted_exps) {
        if (std::gcd(l == 0 ? n : l, n) != 1) continue;
        std::set<long> orbit;
        for (long a : units_mod(n)) orbit.insert((a * a % n) * l % n);
        std::vector<long> target(orbit.begin(), orbit.end());
        if (target == sorted_exps) {
            try {
                return minimal_decomposition(n, l);
            } catch (const ModcatError&) {
                return std::nullopt;  // minimal spectrum shape but invalid level shape
            }
        }
    }
    return std::nullopt;
}

bool is_irreducible(const SL2ZRep& rho) {
    return commutant_dimension(rho.s_mat, rho.t_exponents, rho.t_modulus) == 1;
}

SignedPermutation g_sigma(const SL2ZRep& rho, long a) {
    long n = rho.level();
    a = norm_mod(a, n);
    if (n == 1) a = 1;
    MODCAT_CHECK(std::gcd(a == 0 ? n : a, n) == 1, "g_sigma requires gcd(a, level) = 1");
    long b = inv_mod(a, n);

    // rho(t^a s t^b s t^a s^-1) with s = c * A, s^-1 = c^3 A^3 (s^4 = 1):
    // matrix part (D_a A)(D_b A)(D_a A^3), scalar part c^5. Splitting
    // t_ii = zeta^{e_0} * zeta^{e_i - e_0} keeps the matrix arithmetic at
    // the conductor of the exponent differences (the data conductor for
    // lifts) instead of the full ambient modulus.
    long e0 = rho.t_exponents[0];
    auto row_scaled = [&](const CycMatrix& m, long mult) {
        CycMatrix r(rho.dim, rho.dim);
        for (long i = 0; i < rho.dim; ++i) {
            Cyclotomic ti = Cyclotomic::zeta(rho.t_modulus, (rho.t_exponents[i] - e0) * mult);
            for (long jj = 0; jj < rho.dim; ++jj)
                if (!m.at(i, jj).is_zero()) r.at(i, jj) = ti * m.at(i, jj);
        }
        return r;
    };
    CycMatrix W = row_scaled(rho.s_mat, a) * row_scaled(rho.s_mat, b) *
                  row_scaled(rho.s_mat_cubed(), a);
    Cyclotomic c5 = rho.s_scalar.pow(5) * Cyclotomic::zeta(rho.t_modulus, (2 * a + b) * e0);
    CycMatrix G = W.scaled(c5);

    SignedPermutation sp;
    sp.perm.assign(rho.dim, -1);
    sp.signs.assign(rho.dim, 0);
    std::vector<char> col_used(rho.dim, 0);
    for (long i = 0; i < rho.dim; ++i) {
        for (long jj = 0; jj < rho.dim; ++jj) {
            const Cyclotomic& v = G.at(i, jj);
            if (v.is_zero()) continue;
            bool plus = (v == Cyclotomic::one());
            bool minus = (v == Cyclotomic(-1));
            MODCAT_CHECK(plus || minus, "NotSignedPermutation: entry is not 0 or +-1");
            MODCAT_CHECK(sp.perm[i] < 0, "NotSignedPermutation: multiple entries in a row");
            MODCAT_CHECK(!col_used[jj], "NotSignedPermutation: multiple entries in a column");
            sp.perm[i] = (int)jj;
            sp.signs[i] = plus ? 1 : -1;
            col_used[jj] = 1;
        }
        MODCAT_CHECK(sp.perm[i] >= 0, "NotSignedPermutation: empty row");
    }

    // Verify the Galois symmetry: sigma(s) = g s = s g^{-1}, sigma^2(t) = g t g^{-1}.
    // With s = c A, the first identity reads sigma(c) sigma(A) = c (G A)
    // entrywise. It suffices to check the small-conductor proportionality
    // sigma(A)_{ij} (GA)_{i0j0} = sigma(A)_{i0j0} (GA)_{ij} for all (i, j)
    // plus the single scalar identity at a nonzero reference entry.
    long L = conductor_span(rho);
    long lifted = lift_unit(a, n, lcm_long(n, L));
    Cyclotomic sc_img = rho.s_scalar.galois(lifted);
    {
        CycMatrix B(rho.dim, rho.dim);  // sigma(A)
        for (long i = 0; i < rho.dim; ++i)
            for (long jj = 0; jj < rho.dim; ++jj) B.at(i, jj) = rho.s_mat.at(i, jj).galois(lifted);
        long i0 = -1, j0 = -1;
        for (long i = 0; i < rho.dim && i0 < 0; ++i)
            for (long jj = 0; jj < rho.dim && i0 < 0; ++jj)
                if (!B.at(i, jj).is_zero()) i0 = i, j0 = jj;
        MODCAT_CHECK(i0 >= 0, "g_sigma: zero s matrix");
        auto GA = [&](long i, long jj) {  // (G A)_{i,jj} = signs[i] A_{perm[i], jj}
            return rho.s_mat.at(sp.perm[i], jj).scaled(BigRational(sp.signs[i]));
        };
        auto AGinv = [&](long i, long jj) {  // (A G^{-1})_{i,jj} = signs[jj] A_{i, perm[jj]}
            return rho.s_mat.at(i, sp.perm[jj]).scaled(BigRational(sp.signs[jj]));
        };
        Cyclotomic b0 = B.at(i0, j0), p0 = GA(i0, j0);
        MODCAT_CHECK(sc_img * b0 == rho.s_scalar * p0, "g_sigma: sigma(s) != g s (scalar)");
        MODCAT_CHECK(p0 == AGinv(i0, j0), "g_sigma: sigma(s) != s g^{-1} (scalar)");
        for (long i = 0; i < rho.dim; ++i)
            for (long jj = 0; jj < rho.dim; ++jj) {
                const Cyclotomic& bij = B.at(i, jj);
                MODCAT_CHECK(bij * p0 == b0 * GA(i, jj), "g_sigma: sigma(s) != g s");
                MODCAT_CHECK(bij * p0 == b0 * AGinv(i, jj), "g_sigma: sigma(s) != s g^{-1}");
            }
    }
    auto exps = rho.t_exponents_mod_level();
    for (long i = 0; i < rho.dim; ++i)
        MODCAT_CHECK(norm_mod(a * a % n * exps[i], n) == exps[sp.perm[i]],
                     "g_sigma: sigma^2(t) != g t g^{-1}");
    return sp;
}

std::vector<int> epsilon_signs(const SL2ZRep& rho, long a) {
    SignedPermutation g = g_sigma(rho, a);
    long n = rho.level();
    long L = conductor_span(rho);
    long lifted = lift_unit(norm_mod(a, n) == 0 ? 1 : norm_mod(a, n), n, lcm_long(n, L));
    std::vector<int> eps(rho.dim, 0);
    for (long x = 0; x < rho.dim; ++x) {
        Cyclotomic lhs = rho.s_scalar.galois(lifted) * rho.s_mat.at(x, 0).galois(lifted);
        Cyclotomic base = rho.s_scalar * rho.s_mat.at(g.perm[x], 0);
        if (lhs == base)
            eps[x] = 1;
        else if (lhs == -base)
            eps[x] = -1;
        else
            throw ModcatError("epsilon_signs: ratio sigma(s_{X,1})/s_{sigma(X),1} is not +-1");
        MODCAT_CHECK(eps[x] == g.signs[x],
                     "epsilon_signs: sign function disagrees with g_sigma matrix signs");
    }
    return eps;
}

std::vector<IsotypicComponent> isotypic_decomposition(const SL2ZRep& rho, const ModularData& C) {
    long n = rho.level();
    auto h2 = characteristic_two_group(C);
    std::set<std::vector<int>> h2set(h2.begin(), h2.end());

    // Greedy F2-basis of a section H-tilde of H_C inside Omega_2^n.
    std::vector<long> involutions;
    for (long a : units_mod(n))
        if (norm_mod(a * a, n) == norm_mod(1, n)) involutions.push_back(a);
    std::vector<long> gens;
    std::set<long> span = {1};
    std::map<long, std::vector<int>> perm_of;
    std::set<std::vector<int>> image;
    perm_of[1] = sigma_perm(C, 1, n);
    image.insert(perm_of[1]);
    for (long a : involutions) {
        auto p = sigma_perm(C, a, n);
        if (image.count(p)) continue;
        gens.push_back(a);
        std::set<long> bigger = span;
        for (long s : span) bigger.insert(s * a % n);
        span = bigger;
        image.clear();
        for (long s : span) {
            if (!perm_of.count(s)) perm_of[s] = sigma_perm(C, s, n);
            image.insert(perm_of[s]);
        }
        if (image.size() == h2set.size()) break;
    }
    MODCAT_CHECK(image == h2set, "isotypic: section does not surject onto H_C");
    MODCAT_CHECK(span.size() == h2set.size(), "isotypic: section is not an isomorphic copy of H_C");

    // g_sigma per section element, as exact matrices.
    std::vector<long> elems(span.begin(), span.end());
    std::map<long, SignedPermutation> gmat;
    for (long s : elems) gmat[s] = g_sigma(rho, s);

    long r = (long)gens.size();
    std::vector<IsotypicComponent> out;
    for (long mask = 0; mask < (1L << r); ++mask) {
        // character: gens[i] -> (-1)^{bit i}; extend multiplicatively
        auto chi_of = [&](long s) {
            // decompose s over the generators (elementary 2-group: try all subsets)
            for (long sub = 0; sub < (1L << r); ++sub) {
                long prod = 1;
                for (long i = 0; i < r; ++i)
                    if (sub & (1L << i)) prod = prod * gens[i] % n;
                if (prod == s) {
                    int v = 1;
                    for (long i = 0; i < r; ++i)
                        if ((sub & (1L << i)) && (mask & (1L << i))) v = -v;
                    return v;
                }
            }
            throw ModcatError("isotypic: section element not in generator span");
        };

        // P = (1/|span|) sum chi(s) g_s as an exact matrix
        CycMatrix P(rho.dim, rho.dim);
        for (long s : elems) {
            int cv = chi_of(s);
            const auto& g = gmat[s];
            for (long i = 0; i < rho.dim; ++i) {
                Cyclotomic add(BigRational(cv * g.signs[i], (long)elems.size()));
                P.at(i, g.perm[i]) = P.at(i, g.perm[i]) + add;
            }
        }
        // idempotence and invariance, exactly
        MODCAT_CHECK(P * P == P, "isotypic: projector not idempotent");
        MODCAT_CHECK(P * rho.s_mat == rho.s_mat * P, "isotypic: projector does not commute with s");
        for (long i = 0; i < rho.dim; ++i)
            for (long jj = 0; jj < rho.dim; ++jj)
                if (!P.at(i, jj).is_zero())
                    MODCAT_CHECK(norm_mod(rho.t_exponents[i], rho.t_modulus) ==
                                     norm_mod(rho.t_exponents[jj], rho.t_modulus),
                                 "isotypic: projector does not commute with t");
        // dimension = trace
        Cyclotomic tr = Cyclotomic::zero();
        for (long i = 0; i < rho.dim; ++i) tr = tr + P.at(i, i);
        MODCAT_CHECK(tr.is_integer(), "isotypic: non-integral projector trace");
        long dimension = (long)tr.rational_value().get_num().get_si();
        if (dimension == 0) continue;
        IsotypicComponent comp;
        comp.dimension = dimension;
        for (long i = 0; i < r; ++i) comp.character.push_back((mask & (1L << i)) ? -1 : 1);
        out.push_back(comp);
    }
    return out;
}

std::optional<Intertwiner> reps_equivalent(const SL2ZRep& a, const SL2ZRep& b) {
    if (a.dim != b.dim) return std::nullopt;
    long n = a.level();
    if (n != b.level()) return std::nullopt;
    auto ea = a.t_exponents_mod_level(), eb = b.t_exponents_mod_level();
    auto has_dups = [](std::vector<long> v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    MODCAT_CHECK(!has_dups(ea) && !has_dups(eb),
                 "MultiplicityError: t-spectrum is not multiplicity-free");

    // permutation matching eigenvalues: column i of a corresponds to pi[i] of b
    std::vector<int> pi(a.dim, -1);
    for (long i = 0; i < a.dim; ++i) {
        for (long j = 0; j < b.dim; ++j)
            if (eb[j] == ea[i]) {
                pi[i] = (int)j;
                break;
            }
        if (pi[i] < 0) return std::nullopt;  // disjoint spectra
    }

    // want u_x u_y * s_a(i, j) == s_b(pi[i], pi[j]); propagate signs
    auto sa = [&](long i, long j) { return a.s_scalar * a.s_mat.at(i, j); };
    auto sb = [&](long i, long j) { return b.s_scalar * b.s_mat.at(i, j); };
    std::vector<int> u(a.dim, 0);
    u[0] = 1;
    std::vector<long> queue = {0};
    std::vector<char> seen(a.dim, 0);
    seen[0] = 1;
    while (!queue.empty()) {
        long x = queue.back();
        queue.pop_back();
        for (long y = 0; y < a.dim; ++y) {
            Cyclotomic lhs = sa(x, y);
            if (lhs.is_zero()) continue;
            Cyclotomic rhs = sb(pi[x], pi[y]);
            int rel;
            if (rhs == lhs)
                rel = 1;
            else if (rhs == -lhs)
                rel = -1;
            else
                return std::nullopt;
            int uy = u[x] * rel;
            if (!seen[y]) {
                u[y] = uy;
                seen[y] = 1;
                queue.push_back(y);
            } else if (u[y] != uy) {
                return std::nullopt;
            }
        }
    }
    for (long i = 0; i < a.dim; ++i)
        if (!seen[i]) u[i] = 1;  // disconnected: free sign, verified below

    // full verification, including the zero pattern
    for (long i = 0; i < a.dim; ++i)
        for (long j = 0; j < a.dim; ++j) {
            Cyclotomic lhs = sa(i, j).scaled(BigRational(u[i] * u[j]));
            if (lhs != sb(pi[i], pi[j])) return std::nullopt;
        }
    Intertwiner w;
    w.perm = pi;
    w.signs = u;
    return w;
}

bool verify_relations(const SL2ZRep& rho) {
    CycMatrix s = rho.s_full();
    if (!s.is_symmetric()) return false;
    CycMatrix s2 = s * s;
    if (s2 * s2 != CycMatrix::identity(rho.dim)) return false;
    CycMatrix st(rho.dim, rho.dim);
    for (long i = 0; i < rho.dim; ++i)
        for (long j = 0; j < rho.dim; ++j) st.at(i, j) = s.at(i, j) * rho.t_entry((int)j);
    return st * st * st == s2;
}

bool entries_lie_in(const SL2ZRep& rho, long n) {
    for (long i = 0; i < rho.dim; ++i)
        for (long j = 0; j < rho.dim; ++j) {
            Cyclotomic v = rho.s_entry((int)i, (int)j);
            long d = std::gcd(v.conductor(), n);
            if (!v.lies_in(d)) return false;
        }
    return true;
}

}  // namespace modcat
