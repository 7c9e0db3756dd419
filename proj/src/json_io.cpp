#include "aggar/json_io.hpp"

#include "aggar/errors.hpp"
#include "aggar/wold.hpp"
#include "overloaded.hpp"

namespace aggar::io {
namespace {

double number_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ValidationError(std::string("spec JSON: missing numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

std::vector<double> array_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw ValidationError(std::string("spec JSON: missing array field '") + key + "'");
    }
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw ValidationError(std::string("spec JSON: '") + key + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

DistributionSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
        throw ValidationError("spec JSON: expected an object with a string 'family'");
    }
    const std::string family = j.at("family").get<std::string>();
    if (family == "beta") return DistributionSpec::beta(number_field(j, "p"), number_field(j, "q"));
    if (family == "uniform") return DistributionSpec::uniform();
    if (family == "polynomial") return DistributionSpec::polynomial(array_field(j, "c"));
    if (family == "dirac") return DistributionSpec::dirac(number_field(j, "phi0"));
    if (family == "generic") return DistributionSpec::tabulated(array_field(j, "density"));
    throw ValidationError("spec JSON: unknown family '" + family + "'");
}

json spec_to_json(const DistributionSpec& spec) {
    return std::visit(detail::Overloaded{
                          [](const BetaLaw& b) { return json{{"family", "beta"}, {"p", b.p}, {"q", b.q}}; },
                          [](const UniformLaw&) { return json{{"family", "uniform"}}; },
                          [](const PolynomialLaw& p) { return json{{"family", "polynomial"}, {"c", p.coeffs}}; },
                          [](const DiracLaw& d) { return json{{"family", "dirac"}, {"phi0", d.phi0}}; },
                          [](const GenericLaw& g) {
                              if (g.table.empty()) return json{{"family", "generic"}, {"tabulated", false}};
                              return json{{"family", "generic"}, {"density", g.table}};
                          },
                      },
                      spec.law());
}

json persistence_json(const DistributionSpec& spec) {
    const double a1 = persistence(spec);
    return json{{"spec", spec_to_json(spec)},
                {"a1_limit", a1},
                {"memory_class", std::string(to_string(memory_class(spec)))},
                {"method", std::string(persistence_method(spec))}};
}

json abel_json(const AbelResult& r) {
    json rows = json::array();
    for (const auto& row : r.table) rows.push_back({{"j", row.j}, {"r", row.r}, {"a", row.a}, {"m", row.m}});
    return json{{"estimate", r.estimate},
                {"accelerated", r.accelerated},
                {"memory_class", std::string(to_string(r.memory))},
                {"table", rows}};
}

json memory_report_json(const MemoryReport& r) {
    json out;
    out["spec"] = r.spec;
    out["memory_class"] = r.memory ? json(std::string(to_string(*r.memory))) : json(nullptr);
    out["persistence"] = r.persistence ? json(*r.persistence) : json(nullptr);
    json ps = json::array();
    for (const auto& g : r.partial_sums) {
        ps.push_back({{"K", g.K},
                      {"S_K", g.partial_sum},
                      {"gap_to_one", g.gap_to_one},
                      {"gap_to_persistence", g.gap_to_persistence ? json(*g.gap_to_persistence) : json(nullptr)},
                      {"abel_at_matched_r", g.abel_at_matched_r},
                      {"discrepancy", g.discrepancy}});
    }
    out["partial_sums"] = ps;
    out["abel"] = r.abel ? abel_json(*r.abel) : json(nullptr);
    json ces = json::array();
    for (const auto& c : r.cesaro) ces.push_back({{"n", c.n}, {"value", c.value}});
    out["cesaro"] = ces;
    out["hausdorff"] = {{"passed", r.hausdorff.passed},
                        {"J", r.hausdorff.J},
                        {"worst_value", r.hausdorff.worst_value},
                        {"worst_j", r.hausdorff.worst_j},
                        {"worst_k", r.hausdorff.worst_k}};
    json ch = json::array();
    for (const auto& c : r.channels) {
        ch.push_back({{"name", c.name}, {"available", c.available}, {"agrees", c.agrees}, {"detail", c.detail}});
    }
    out["channels"] = ch;
    out["verdict"] = std::string(to_string(r.verdict));
    return out;
}

json study_json(const StudyReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels) {
        levels.push_back({{"N", l.N}, {"variance", l.variance}, {"unit_scale", l.unit_scale}});
    }
    return json{{"spec", r.spec},
                {"T", r.T},
                {"sigma_eps", r.sigma_eps},
                {"sigma_eta", r.sigma_eta},
                {"seeds", r.seeds},
                {"levels", levels},
                {"raw_slope", r.raw_slope},
                {"normalized_slope", r.normalized_slope},
                {"monotone_decreasing", r.monotone_decreasing}};
}

}  // namespace aggar::io
