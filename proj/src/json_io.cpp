#include "radop/json_io.hpp"

#include <fstream>

namespace radop {

Json complex_to_json(Complex v) { return Json::array({v.real(), v.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j.at(0).get<double>(), j.at(1).get<double>()};
    throw ParseError("expected a complex value [re, im]");
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

Json index_set_to_json(const IndexSet& set) {
    Json arr = Json::array();
    for (const MultiIndex& m : set.members()) arr.push_back(m.to_vector());
    return arr;
}

IndexSet index_set_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("index set must be a nonempty array");
    std::vector<MultiIndex> members;
    int dim = -1;
    for (const auto& e : j) {
        std::vector<int> v = e.get<std::vector<int>>();
        if (dim < 0) dim = static_cast<int>(v.size());
        members.emplace_back(std::span<const int>(v));
    }
    return IndexSet::from_indices(dim, std::move(members));
}

Json domain_to_json(const DomainSpec& domain, const WeightSpec& weight) {
    Json j;
    j["name"] = domain.name;
    j["dim"] = domain.dim;
    Json shadow;
    switch (domain.shadow.kind()) {
    case ShadowKind::Box: {
        shadow["kind"] = "box";
        Json iv = Json::array();
        for (const auto& [a, b] : domain.shadow.intervals()) iv.push_back(Json::array({a, b}));
        shadow["intervals"] = std::move(iv);
        break;
    }
    case ShadowKind::Ball:
        shadow["kind"] = "ball";
        break;
    case ShadowKind::OrderedSimplex:
        shadow["kind"] = "ordered-simplex";
        break;
    case ShadowKind::Custom:
        throw PreconditionError("custom shadows do not serialize to JSON");
    }
    j["shadow"] = std::move(shadow);
    Json w;
    switch (weight.kind()) {
    case WeightSpec::Kind::Constant:
        w["kind"] = "constant";
        w["value"] = weight.constant_value();
        break;
    case WeightSpec::Kind::RadialPower:
        w["kind"] = "radial-power";
        w["exponents"] = weight.exponents();
        break;
    case WeightSpec::Kind::Custom:
        throw PreconditionError("custom weights do not serialize to JSON");
    }
    j["weight"] = std::move(w);
    return j;
}

namespace {

std::pair<DomainSpec, WeightSpec> domain_from_json(const Json& j) {
    if (!j.contains("dim")) throw ParseError("domain JSON needs \"dim\"");
    const int dim = j.at("dim").get<int>();
    const std::string name = j.value("name", std::string("domain"));
    if (!j.contains("shadow")) throw ParseError("domain JSON needs \"shadow\"");
    const Json& shadow = j.at("shadow");
    const std::string kind = shadow.at("kind").get<std::string>();
    DomainSpec domain;
    if (kind == "box") {
        std::vector<std::pair<double, double>> iv;
        for (const auto& e : shadow.at("intervals"))
            iv.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        if (static_cast<int>(iv.size()) != dim) throw ParseError("box interval count != dim");
        domain = DomainSpec{name, dim, ShadowRegion::box(std::move(iv))};
    } else if (kind == "ball") {
        domain = DomainSpec{name, dim, ShadowRegion::ball(dim)};
    } else if (kind == "ordered-simplex") {
        domain = DomainSpec{name, dim, ShadowRegion::ordered_simplex(dim)};
    } else {
        throw ParseError("unknown shadow kind '" + kind + "'");
    }
    WeightSpec weight = WeightSpec::constant(1.0);
    if (j.contains("weight")) {
        const Json& w = j.at("weight");
        const std::string wkind = w.at("kind").get<std::string>();
        if (wkind == "constant")
            weight = WeightSpec::constant(w.value("value", 1.0));
        else if (wkind == "radial-power")
            weight = WeightSpec::radial_power(w.at("exponents").get<std::vector<double>>());
        else
            throw ParseError("unknown weight kind '" + wkind + "'");
    }
    return {std::move(domain), std::move(weight)};
}

} // namespace

Json space_to_json(const SpaceSpec& space) {
    switch (space.kind()) {
    case SpaceSpec::Kind::HardyDisk:
        return Json{{"space", "hardy-disk"}};
    case SpaceSpec::Kind::DirichletDisk:
        return Json{{"space", "dirichlet-disk"}};
    case SpaceSpec::Kind::Bergman:
        break;
    }
    Json j = domain_to_json(space.domain(), space.weight());
    j["space"] = "bergman";
    return j;
}

SpaceSpec space_from_json(const Json& j) {
    const std::string kind = j.value("space", std::string("bergman"));
    if (kind == "hardy-disk") return SpaceSpec::hardy_disk();
    if (kind == "dirichlet-disk") return SpaceSpec::dirichlet_disk();
    if (kind != "bergman") throw ParseError("unknown space kind '" + kind + "'");
    auto [domain, weight] = domain_from_json(j);
    return SpaceSpec::bergman(std::move(domain), std::move(weight));
}

Json symbol_to_json(const Symbol& s) {
    Json j;
    switch (s.kind()) {
    case Symbol::Kind::Finite: {
        if (s.name() == "indicator") {
            j["kind"] = "builtin";
            j["name"] = "indicator";
            Json set = Json::array();
            for (const auto& [alpha, v] : s.finite_entries()) set.push_back(alpha.to_vector());
            j["set"] = std::move(set);
            break;
        }
        j["kind"] = "finite";
        Json entries = Json::array();
        for (const auto& [alpha, v] : s.finite_entries())
            entries.push_back(Json::array({alpha.to_vector(), complex_to_json(v)}));
        j["entries"] = std::move(entries);
        break;
    }
    case Symbol::Kind::Sampled: {
        j["kind"] = "sampled";
        j["bound"] = s.sampled_box().bound;
        Json values = Json::array();
        for (Complex v : s.sampled_values()) values.push_back(complex_to_json(v));
        j["values"] = std::move(values);
        j["extension"] = s.sampled_extension() == SampledExtension::ZeroExtend ? "zero" : "error";
        break;
    }
    case Symbol::Kind::ClosedForm: {
        if (s.name().empty())
            throw PreconditionError("anonymous closed-form symbols do not serialize");
        j["kind"] = "builtin";
        j["name"] = s.name();
        break;
    }
    }
    switch (s.decay()) {
    case DecayClass::VanishingAtInfinity:
        j["decay"] = "vanishing";
        break;
    case DecayClass::BoundedNoDecay:
        j["decay"] = "bounded";
        break;
    case DecayClass::Unknown:
        j["decay"] = "unknown";
        break;
    }
    return j;
}

Symbol symbol_from_json(const Json& j, int dim) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "builtin") {
        const std::string name = j.at("name").get<std::string>();
        if (name == "one") return Symbol::one(dim);
        if (name == "reciprocal-succ") return Symbol::reciprocal_succ(dim);
        if (name == "indicator") {
            if (!j.contains("set")) throw ParseError("indicator symbol needs \"set\"");
            return Symbol::indicator(index_set_from_json(j.at("set")));
        }
        throw ParseError("unknown builtin symbol '" + name + "'");
    }
    if (kind == "finite") {
        std::map<std::vector<int>, Complex> entries;
        for (const auto& e : j.at("entries"))
            entries[e.at(0).get<std::vector<int>>()] = complex_from_json(e.at(1));
        return Symbol::finite(dim, std::move(entries));
    }
    if (kind == "sampled") {
        const IndexBox box(dim, j.at("bound").get<int>());
        std::vector<Complex> values;
        for (const auto& e : j.at("values")) values.push_back(complex_from_json(e));
        const std::string ext = j.value("extension", std::string("zero"));
        return Symbol::sampled(box, std::move(values),
                               ext == "zero" ? SampledExtension::ZeroExtend
                                             : SampledExtension::Error);
    }
    throw ParseError("unknown symbol kind '" + kind + "'");
}

Json poly_to_json(const LaurentPoly& f) {
    Json j;
    j["dim"] = f.dim();
    Json terms = Json::array();
    for (const auto& [alpha, c] : f.terms())
        terms.push_back(Json::array({alpha.to_vector(), complex_to_json(c)}));
    j["terms"] = std::move(terms);
    return j;
}

LaurentPoly poly_from_json(const Json& j) {
    const int dim = j.at("dim").get<int>();
    std::vector<LaurentPoly::Term> terms;
    for (const auto& e : j.at("terms")) {
        std::vector<int> v = e.at(0).get<std::vector<int>>();
        terms.emplace_back(MultiIndex(std::span<const int>(v)), complex_from_json(e.at(1)));
    }
    return LaurentPoly::from_terms(dim, std::move(terms));
}

Json spectrum_to_json(const SpectrumReport& report) {
    Json j;
    Json values = Json::array();
    for (Complex v : report.values) values.push_back(complex_to_json(v));
    j["values"] = std::move(values);
    Json attained = Json::array();
    for (char a : report.attained) attained.push_back(static_cast<bool>(a));
    j["attained"] = std::move(attained);
    Json limits = Json::array();
    for (Complex v : report.limit_points) limits.push_back(complex_to_json(v));
    j["limit_points"] = std::move(limits);
    Json hull = Json::array();
    for (Complex v : report.hull) hull.push_back(complex_to_json(v));
    j["hull"] = std::move(hull);
    return j;
}

namespace {

Json verdict_to_json(const MembershipVerdict& v) {
    Json j;
    switch (v.flag) {
    case MembershipFlag::CertifiedIn:
        j["flag"] = "certified-in";
        break;
    case MembershipFlag::BoundedOnProbe:
        j["flag"] = "bounded-on-probe";
        break;
    case MembershipFlag::UnboundedEvidence:
        j["flag"] = "unbounded-evidence";
        break;
    }
    j["sup"] = v.sup;
    j["head_sup"] = v.head_sup;
    j["growth_ratio"] = v.growth_ratio;
    j["value_at_last"] = v.value_at_last;
    return j;
}

} // namespace

Json membership_to_json(const MembershipReport& report) {
    Json j;
    j["probe_bound"] = report.probe_bound;
    j["dirichlet"] = verdict_to_json(report.dirichlet);
    j["hardy"] = verdict_to_json(report.hardy);
    j["bergman"] = verdict_to_json(report.bergman);
    return j;
}

Json feasibility_to_json(const FeasibilityReport& report) {
    Json j;
    j["feasible"] = report.feasible;
    Json pts = Json::array();
    for (const auto& p : report.points) {
        Json jp;
        Json zeta = Json::array();
        for (Complex v : p.zeta) zeta.push_back(complex_to_json(v));
        jp["zeta"] = std::move(zeta);
        jp["converged"] = p.converged;
        jp["value"] = complex_to_json(p.value);
        pts.push_back(std::move(jp));
    }
    j["points"] = std::move(pts);
    return j;
}

Json norm_table_to_json(const MonomialNormTable& table) {
    Json j;
    j["fingerprint"] = table.fingerprint();
    Json entries = Json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const NormEntry& e = table.entry(i);
        Json prov;
        switch (e.provenance.kind) {
        case NormProvenance::Kind::ClosedForm:
            prov["kind"] = "closed-form";
            break;
        case NormProvenance::Kind::Quadrature:
            prov["kind"] = "quadrature";
            break;
        case NormProvenance::Kind::Cache:
            prov["kind"] = "cache";
            break;
        }
        prov["error"] = e.provenance.error_estimate;
        entries.push_back(Json::array({table.set().at(i).to_vector(), e.value, prov}));
    }
    j["entries"] = std::move(entries);
    return j;
}

} // namespace radop
