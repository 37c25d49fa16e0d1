#include "els/report.hpp"

namespace els {

Json rational_json(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    Json j = Json::object();
    j["num"] = c.get_num().get_str();
    j["den"] = c.get_den().get_str();
    return j;
}

mpq_class rational_from_json(const Json& j) {
    mpq_class q(mpz_class(j.at("num").get<std::string>()), mpz_class(j.at("den").get<std::string>()));
    q.canonicalize();
    return q;
}

Json DensityReport::to_json() const {
    Json j = Json::object();
    j["command"] = command;
    j["parameters"] = parameters;
    j["results"] = results;
    j["provenance"] = provenance;
    return j;
}

DensityReport DensityReport::from_json(const Json& j) {
    DensityReport r;
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters");
    r.results = j.at("results");
    r.provenance = j.at("provenance");
    return r;
}

std::string DensityReport::dump() const { return to_json().dump(2) + "\n"; }

DensityReport make_report(const std::string& command, std::uint64_t seed) {
    DensityReport r;
    r.command = command;
    r.provenance["tool"] = kToolName;
    r.provenance["version"] = kToolVersion;
    r.provenance["seed"] = seed;
    return r;
}

Json to_json(const LocalDensity& d) {
    Json j = Json::object();
    j["prime"] = d.p;
    j["sigma"] = rational_json(d.value);
    j["sigma_float"] = d.float_value;
    return j;
}

Json to_json(const EulerProductReport& r) {
    Json j = Json::object();
    j["limit"] = r.limit;
    j["product"] = r.partial_product;
    j["factors"] = r.factors;
    j["product_at_tenth_limit"] = r.tenth_product;
    j["tail_indicator"] = r.tail_indicator;
    j["tail_bound"] = r.tail_bound;
    return j;
}

Json to_json(const McEstimate& e) {
    Json j = Json::object();
    j["prime"] = e.p;
    j["samples"] = e.samples;
    j["soluble_fraction"] = e.soluble_fraction;
    j["standard_error"] = e.standard_error;
    j["undecided_fraction"] = e.undecided_fraction;
    j["degraded"] = e.degraded;
    j["seed"] = e.seed;
    Json s = Json::object();
    s["initial_digits"] = e.schedule.initial_digits;
    s["extra_blocks"] = e.schedule.extra_blocks;
    s["max_blocks_per_coefficient"] = e.schedule.max_blocks;
    j["precision_schedule"] = s;
    return j;
}

Json to_json(const ArchimedeanDensity& d) {
    Json j = Json::object();
    j["mixed_sign_fraction"] = rational_json(d.mixed_sign_fraction);
    j["mixed_sign_fraction_float"] = d.mixed_sign_fraction.get_d();
    j["soluble_sign_patterns"] = d.soluble_patterns;
    j["total_sign_patterns"] = d.total_patterns;
    j["stated_value"] = rational_json(d.stated_value);
    j["stated_value_float"] = d.stated_value.get_d();
    j["agrees_with_stated_value"] = d.mixed_sign_fraction == d.stated_value;
    return j;
}

Json to_json(const EmpiricalDensity& e) {
    Json j = Json::object();
    j["family"] = family_name(e.family);
    j["height"] = e.height;
    j["total"] = e.total;
    j["soluble"] = e.soluble;
    j["cones"] = e.cones;
    j["fraction"] = e.fraction;
    return j;
}

Json to_json(const DecayTable& t) {
    Json rows = Json::array();
    for (const DecayRow& r : t.rows) {
        Json row = Json::object();
        row["B"] = r.B;
        row["total"] = r.total;
        row["failures"] = r.failures;
        row["fraction"] = r.fraction;
        row["fraction_times_logB"] = r.fraction_times_log_B;
        row["method"] = r.exact ? "exact" : "sampled";
        row["sampled_points"] = r.sampled_points;
        row["standard_error"] = r.standard_error;
        rows.push_back(row);
    }
    Json j = Json::object();
    j["rows"] = rows;
    j["fitted_constant"] = t.fitted_constant;
    return j;
}

}  // namespace els
