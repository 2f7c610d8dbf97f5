// modcat: exact construction and analysis of modular and super-modular
// category data (S/T matrices over cyclotomic fields), Galois orbits,
// SL2(Z) representation lifts, and the transitive classification.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "modcat/classify.hpp"
#include "modcat/galois.hpp"
#include "modcat/serialize.hpp"
#include "modcat/sl2z.hpp"
#include "modcat/supermod.hpp"
#include "modcat/util.hpp"

using namespace modcat;

namespace {

struct OutputOptions {
    std::string format = "json";
    std::string out_path;
    long approx_bits = 0;  // 0 = no floating renderings
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    cmd->add_option("--out", o.out_path, "write output to this file (atomic)");
    cmd->add_option("--approx", o.approx_bits,
                    "also render floating approximations at this precision (bits)")
        ->check(CLI::Range(53L, 4096L));
}

// Single, atomic write: the full payload is assembled first.
void emit(const OutputOptions& o, const std::string& payload) {
    if (o.out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::string tmp = o.out_path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        MODCAT_CHECK(f.good(), "cannot open output file");
        f << payload;
        if (!payload.empty() && payload.back() != '\n') f << "\n";
    }
    MODCAT_CHECK(std::rename(tmp.c_str(), o.out_path.c_str()) == 0, "atomic rename failed");
}

std::string render(const OutputOptions& o, const Json& j) {
    if (o.format == "pretty") return j.dump(2);
    return j.dump();
}

Json load_json(const std::string& path) {
    std::ifstream f(path);
    MODCAT_CHECK(f.good(), "cannot open input file: " + path);
    Json j;
    f >> j;
    return j;
}

ModularData load_modular(const std::string& path) {
    return modular_data_from_json(load_json(path));
}

Json data_json(const ModularData& c, const OutputOptions& o) {
    Json j = to_json(c, c.degenerate_ok);
    if (o.approx_bits > 0) {
        Json rows = Json::array();
        for (long i = 0; i < c.rank; ++i) {
            Json row = Json::array();
            for (long k = 0; k < c.rank; ++k) row.push_back(approx_json(c.S.at(i, k), o.approx_bits));
            rows.push_back(row);
        }
        j["S_approx"] = rows;
        j["precision_bits"] = o.approx_bits;
    }
    return j;
}

Json profile_json(const GaloisProfile& g, const ModularData& c) {
    Json orbits = Json::array();
    for (const auto& orb : g.orbits) {
        Json names = Json::array();
        for (int x : orb) names.push_back(c.labels[x]);
        orbits.push_back(names);
    }
    return Json{{"group_order", g.group_order},
                {"orbits", orbits},
                {"transitive", g.transitive},
                {"regular", g.regular},
                {"h2_order", g.h2_order()}};
}

Json rep_record(const SL2ZRep& rho, const ModularData& C) {
    Json j;
    j["level"] = rho.level();
    j["dim"] = rho.dim;
    auto md = is_minimal(rho);
    j["minimal"] = md.has_value();
    j["type"] = md ? Json(md->type_l) : Json(nullptr);
    j["irreducible"] = is_irreducible(rho);
    Json fact = Json::array();
    if (md) {
        if (md->d > 1) fact.push_back(Json{{"d", md->d}, {"l0", md->l0}});
        for (const auto& part : md->parts)
            fact.push_back(Json{{"p", part.p}, {"l", part.lp}, {"j", part.j}});
    }
    j["factorization"] = fact;
    Json checks;
    long n = rho.level();
    for (long a : units_mod(n)) {
        bool pass = true;
        try {
            SignedPermutation g = g_sigma(rho, a);
            auto cat_perm = sigma_perm(C, a, lcm_long(n, C.ord_T()));
            if (g.perm != cat_perm) pass = false;
            epsilon_signs(rho, a);
        } catch (const ModcatError&) {
            pass = false;
        }
        checks[std::to_string(a)] = pass ? "pass" : "fail";
    }
    j["g_sigma_checks"] = checks;
    return j;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"exact modular-category data toolkit"};
    app.require_subcommand(1);

    OutputOptions out;

    // ---- construct ----
    auto* construct = app.add_subcommand("construct", "build (pre)modular data");
    construct->require_subcommand(1);
    long k = 1, l = 1;
    int eps = 1;
    PointedSpec pointed;
    std::string lhs_path, rhs_path;

    auto* c_sl2 = construct->add_subcommand("sl2", "C(sl2, k) at q^l");
    c_sl2->add_option("--k", k)->required();
    c_sl2->add_option("--l", l)->required();
    add_output_options(c_sl2, out);

    auto* c_adj = construct->add_subcommand("sl2-adjoint", "adjoint subcategory A^(0)_{k,l}");
    c_adj->add_option("--k", k)->required();
    c_adj->add_option("--l", l)->required();
    add_output_options(c_adj, out);

    auto* c_pointed = construct->add_subcommand("pointed", "pointed data C(A, q)");
    c_pointed->add_option("--orders", pointed.orders, "cyclic factor orders")->required();
    c_pointed->add_option("--modulus", pointed.modulus, "root-of-unity modulus of q")->required();
    c_pointed->add_option("--qdiag", pointed.qdiag, "diagonal exponents of the quadratic form")
        ->required();
    c_pointed->add_option("--qoff", pointed.qoff, "off-diagonal exponents (i<j, row-major)");
    add_output_options(c_pointed, out);

    auto* c_svec = construct->add_subcommand("svec", "sVec_eps premodular data");
    c_svec->add_option("--epsilon", eps)->check(CLI::IsMember({1, -1}))->required();
    add_output_options(c_svec, out);

    auto* c_prod = construct->add_subcommand("product", "Deligne product of two data files");
    c_prod->add_option("--lhs", lhs_path)->required();
    c_prod->add_option("--rhs", rhs_path)->required();
    add_output_options(c_prod, out);

    auto* c_sprod = construct->add_subcommand("sproduct", "sVec-balanced product of two super files");
    c_sprod->add_option("--lhs", lhs_path)->required();
    c_sprod->add_option("--rhs", rhs_path)->required();
    add_output_options(c_sprod, out);

    auto* c_super = construct->add_subcommand("super-sl2", "super-modular A^(0)_{4k+2,l}");
    c_super->add_option("--k", k)->required();
    c_super->add_option("--l", l)->required();
    add_output_options(c_super, out);

    // ---- analysis ----
    std::string in_path;
    auto* validate = app.add_subcommand("validate", "exact validation report");
    validate->add_option("--in", in_path)->required();
    add_output_options(validate, out);

    auto* galois = app.add_subcommand("galois", "Galois group, orbits, H_C");
    galois->add_option("--in", in_path)->required();
    add_output_options(galois, out);

    auto* rep = app.add_subcommand("rep", "SL2(Z) lifts: level, minimality, irreducibility");
    rep->add_option("--in", in_path)->required();
    add_output_options(rep, out);

    auto* factor = app.add_subcommand("factor", "prime factorization of modular data");
    factor->add_option("--in", in_path)->required();
    add_output_options(factor, out);

    long maxN = 40;
    auto* classify = app.add_subcommand("classify", "enumerate transitive modular categories");
    classify->add_option("--max-ordt", maxN, "bound on ord(T)");
    add_output_options(classify, out);

    auto* super = app.add_subcommand("super", "super-modular analysis");
    super->add_option("--in", in_path)->required();
    add_output_options(super, out);

    long kmax = 6, catalog_p = 0;
    bool theorems_super = false;
    auto* theorems = app.add_subcommand("theorems", "mechanical theorem suites");
    theorems->add_option("--in", in_path, "transitivity suite on this data file");
    theorems->add_flag("--super", theorems_super, "super-modular suite");
    theorems->add_option("--kmax", kmax, "k bound for the super suite");
    theorems->add_option("--catalog-p", catalog_p, "prime catalog check at this prime");
    add_output_options(theorems, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_sl2->parsed()) {
            emit(out, render(out, data_json(build_sl2(k, l), out)));
        } else if (c_adj->parsed()) {
            emit(out, render(out, data_json(build_sl2_adjoint(k, l), out)));
        } else if (c_pointed->parsed()) {
            emit(out, render(out, data_json(build_pointed(pointed), out)));
        } else if (c_svec->parsed()) {
            emit(out, render(out, data_json(build_svec(eps), out)));
        } else if (c_prod->parsed()) {
            ModularData a = load_modular(lhs_path), b = load_modular(rhs_path);
            if (!a.degenerate_ok) fusion_ring(a);
            if (!b.degenerate_ok) fusion_ring(b);
            emit(out, render(out, data_json(deligne_product(a, b), out)));
        } else if (c_sprod->parsed()) {
            SuperModularData a = super_from_json(load_json(lhs_path));
            SuperModularData b = super_from_json(load_json(rhs_path));
            emit(out, render(out, to_json(svec_product(a, b))));
        } else if (c_super->parsed()) {
            emit(out, render(out, to_json(build_sl2_super(k, l))));
        } else if (validate->parsed()) {
            ModularData c = load_modular(in_path);
            ValidationReport r = validate_modular(c);
            if (out.format == "pretty")
                emit(out, r.summary());
            else
                emit(out, render(out, to_json(r)));
            return r.ok() ? 0 : 1;
        } else if (galois->parsed()) {
            ModularData c = load_modular(in_path);
            emit(out, render(out, profile_json(galois_group(c), c)));
        } else if (rep->parsed()) {
            ModularData c = load_modular(in_path);
            auto lifts = lift_projective(c);
            Json arr = Json::array();
            long min_level = lifts[0].level();
            for (const auto& rho : lifts) {
                arr.push_back(rep_record(rho, c));
                min_level = std::min(min_level, rho.level());
            }
            emit(out, render(out, Json{{"min_level", min_level}, {"lifts", arr}}));
        } else if (factor->parsed()) {
            ModularData c = load_modular(in_path);
            auto factors = prime_factorization(c);
            Json arr = Json::array();
            for (const auto& sup : factors) {
                Json names = Json::array();
                for (int x : sup) names.push_back(c.labels[x]);
                arr.push_back(names);
            }
            emit(out, render(out, Json{{"prime", factors.size() == 1}, {"factors", arr}}));
        } else if (classify->parsed()) {
            Catalog cat = classify_transitive(maxN);
            if (out.format == "csv")
                emit(out, catalog_to_csv(cat));
            else
                emit(out, render(out, to_json(cat)));
        } else if (super->parsed()) {
            SuperModularData s = super_from_json(load_json(in_path));
            SuperProfile prof = super_galois_orbits(s);
            SplitResult split = split_check(s);
            Json pi_labels = Json::array();
            for (int x : s.pi) pi_labels.push_back(s.ambient.labels[x]);
            Json reduced = Json::array();
            for (long i = 0; i < (long)s.pi.size(); ++i) {
                Json row = Json::array();
                for (long j2 = 0; j2 < (long)s.pi.size(); ++j2)
                    row.push_back(to_json(s.reduced_S.at(i, j2)));
                reduced.push_back(row);
            }
            Json split_j;
            if (split.status == SplitResult::Split) {
                Json names = Json::array();
                for (int x : split.modular_factor) names.push_back(s.ambient.labels[x]);
                split_j = names;
            } else if (split.status == SplitResult::NonSplit) {
                split_j = "none";
            } else {
                split_j = "undetermined";
            }
            emit(out, render(out, Json{{"epsilon", s.epsilon},
                                       {"pi_labels", pi_labels},
                                       {"reduced_S", reduced},
                                       {"group_order", prof.group_order},
                                       {"transitive", prof.transitive},
                                       {"s_simple", is_s_simple(s)},
                                       {"split", split_j}}));
        } else if (theorems->parsed()) {
            if (theorems_super) {
                ValidationReport r = verify_super_theorems(kmax);
                emit(out, out.format == "pretty" ? r.summary() : render(out, to_json(r)));
                return r.ok() ? 0 : 1;
            } else if (catalog_p > 0) {
                CatalogCheck cc = check_prime_transitive_catalog(catalog_p);
                bool ok = cc.all_prime && cc.all_transitive && cc.pairwise_inequivalent &&
                          cc.anomalies_distinct;
                emit(out, render(out, Json{{"p", cc.p},
                                           {"count", cc.count},
                                           {"all_prime", cc.all_prime},
                                           {"all_transitive", cc.all_transitive},
                                           {"pairwise_inequivalent", cc.pairwise_inequivalent},
                                           {"anomalies_distinct", cc.anomalies_distinct},
                                           {"anomaly_orders", cc.anomaly_orders}}));
                return ok ? 0 : 1;
            } else if (!in_path.empty()) {
                ModularData c = load_modular(in_path);
                ValidationReport r = verify_transitivity_theorems(c);
                emit(out, out.format == "pretty" ? r.summary() : render(out, to_json(r)));
                return r.ok() ? 0 : 1;
            } else {
                std::cerr << "theorems: one of --in, --super, --catalog-p is required\n";
                return 2;
            }
        }
    } catch (const ModcatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
