#include "modcat/serialize.hpp"

#include <sstream>

#include "modcat/util.hpp"

namespace modcat {

namespace {

std::string rational_str(const BigRational& q) {
    std::ostringstream os;
    os << q.get_num();
    if (q.get_den() != 1) os << "/" << q.get_den();
    return os.str();
}

BigRational rational_parse(const std::string& s) {
    BigRational q(s);
    q.canonicalize();
    MODCAT_CHECK(q.get_den() > 0, "invalid rational literal");
    return q;
}

}  // namespace

Json to_json(const Cyclotomic& x) {
    Json j;
    j["conductor"] = x.conductor();
    Json coeffs = Json::array();
    for (const auto& c : x.coefficients()) coeffs.push_back(rational_str(c));
    j["coefficients"] = coeffs;
    return j;
}

Cyclotomic cyclotomic_from_json(const Json& j) {
    long M = j.at("conductor").get<long>();
    std::vector<BigRational> c;
    for (const auto& e : j.at("coefficients")) c.push_back(rational_parse(e.get<std::string>()));
    MODCAT_CHECK((long)c.size() == M, "coefficient vector length must equal the conductor");
    return Cyclotomic::from_coefficients(M, std::move(c));
}

Json approx_json(const Cyclotomic& x, long bits) {
    auto e = x.embed(bits);
    Json j;
    j["re"] = e.re;
    j["im"] = e.im;
    j["err"] = e.err;
    return j;
}

Json to_json(const ModularData& c, bool include_fusion) {
    Json j;
    j["type"] = "modular_data";
    j["rank"] = c.rank;
    j["labels"] = c.labels;
    j["conductor"] = c.conductor;
    Json rows = Json::array();
    for (long i = 0; i < c.rank; ++i) {
        Json row = Json::array();
        for (long k = 0; k < c.rank; ++k) row.push_back(to_json(c.S.at(i, k)));
        rows.push_back(row);
    }
    j["S"] = rows;
    j["theta_exponents"] = c.theta_exponents;
    j["dual_perm"] = c.dual_perm;
    j["degenerate_ok"] = c.degenerate_ok;
    if (include_fusion && c.fusion_cache) {
        const FusionRing& r = *c.fusion_cache;
        j["fusion"] = Json{{"unit", r.unit}, {"dual_perm", r.dual_perm}, {"N", r.N}};
    }
    return j;
}

ModularData modular_data_from_json(const Json& j) {
    MODCAT_CHECK(j.at("type") == "modular_data", "expected a modular_data document");
    ModularData c;
    c.rank = j.at("rank").get<long>();
    c.labels = j.at("labels").get<std::vector<std::string>>();
    c.conductor = j.at("conductor").get<long>();
    MODCAT_CHECK(c.rank >= 1 && c.conductor >= 1, "invalid rank or conductor");
    c.S = CycMatrix(c.rank, c.rank);
    const auto& rows = j.at("S");
    MODCAT_CHECK((long)rows.size() == c.rank, "S row count mismatch");
    for (long i = 0; i < c.rank; ++i) {
        MODCAT_CHECK((long)rows[i].size() == c.rank, "S column count mismatch");
        for (long k = 0; k < c.rank; ++k) {
            Cyclotomic v = cyclotomic_from_json(rows[i][k]);
            MODCAT_CHECK(c.conductor % v.conductor() == 0,
                         "S entry conductor does not divide the data conductor");
            c.S.at(i, k) = v;
        }
    }
    c.theta_exponents = j.at("theta_exponents").get<std::vector<long>>();
    c.dual_perm = j.at("dual_perm").get<std::vector<int>>();
    c.degenerate_ok = j.value("degenerate_ok", false);
    MODCAT_CHECK((long)c.theta_exponents.size() == c.rank && (long)c.dual_perm.size() == c.rank &&
                     (long)c.labels.size() == c.rank,
                 "field length mismatch");
    for (auto& e : c.theta_exponents) e = ((e % c.conductor) + c.conductor) % c.conductor;
    if (j.contains("fusion")) {
        auto ring = std::make_shared<FusionRing>();
        ring->rank = c.rank;
        ring->unit = j["fusion"].at("unit").get<int>();
        ring->dual_perm = j["fusion"].at("dual_perm").get<std::vector<int>>();
        ring->N = j["fusion"].at("N").get<std::vector<std::vector<std::vector<long>>>>();
        ring->check_invariants();
        c.fusion_cache = ring;
    }
    return c;
}

Json to_json(const SuperModularData& s) {
    Json j;
    j["type"] = "super_modular_data";
    j["ambient"] = to_json(s.ambient, /*include_fusion=*/true);
    j["fermion"] = s.fermion;
    j["epsilon"] = s.epsilon;
    j["pi"] = s.pi;
    Json rows = Json::array();
    for (long i = 0; i < (long)s.pi.size(); ++i) {
        Json row = Json::array();
        for (long k = 0; k < (long)s.pi.size(); ++k) row.push_back(to_json(s.reduced_S.at(i, k)));
        rows.push_back(row);
    }
    j["reduced_S"] = rows;
    return j;
}

SuperModularData super_from_json(const Json& j) {
    MODCAT_CHECK(j.at("type") == "super_modular_data", "expected a super_modular_data document");
    Json amb = j.at("ambient");
    amb["type"] = "modular_data";
    ModularData ambient = modular_data_from_json(amb);
    SuperModularData s = make_super(ambient);
    MODCAT_CHECK(s.fermion == j.at("fermion").get<int>(), "fermion index mismatch");
    MODCAT_CHECK(s.epsilon == j.at("epsilon").get<int>(), "epsilon mismatch");
    auto pi = j.at("pi").get<std::vector<int>>();
    if (pi != s.pi) {
        // honor the serialized basic subset when it is valid
        s.pi = pi;
        s.reduced_S = s.ambient.S.submatrix(pi, pi);
        MODCAT_CHECK(s.reduced_S.is_invertible(), "serialized basic subset is invalid");
    }
    return s;
}

Json to_json(const ValidationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (c.warning_only) jc["warning_only"] = true;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.push_back(jc);
    }
    return Json{{"ok", r.ok()}, {"checks", checks}};
}

Json to_json(const Catalog& c) {
    Json entries = Json::array();
    for (const auto& e : c.entries) {
        Json je;
        je["ord_t"] = e.ord_t;
        je["primes"] = e.primes;
        je["l_tuple"] = e.l_tuple;
        je["rank"] = e.rank;
        je["anomaly"] = e.anomaly;
        je["anomaly_order"] = e.anomaly_order;
        entries.push_back(je);
    }
    return Json{{"max_ord_t", c.max_ord_t}, {"count", (long)c.entries.size()}, {"entries", entries}};
}

std::string catalog_to_csv(const Catalog& c) {
    std::ostringstream os;
    os << "ord_t,primes,l_tuple,rank,anomaly_order,anomaly\n";
    for (const auto& e : c.entries) {
        os << e.ord_t << ",";
        for (size_t i = 0; i < e.primes.size(); ++i) os << (i ? ";" : "") << e.primes[i];
        os << ",";
        for (size_t i = 0; i < e.l_tuple.size(); ++i) os << (i ? ";" : "") << e.l_tuple[i];
        os << "," << e.rank << "," << e.anomaly_order << ",\"" << e.anomaly << "\"\n";
    }
    return os.str();
}

}  // namespace modcat
