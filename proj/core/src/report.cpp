#include "g2strom/report.hpp"

#include <json.hpp>

namespace g2strom {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json check_to_json(const CheckResult& c) {
    ordered_json j;
    j["id"] = c.id;
    j["value"] = c.value;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    return j;
}

ordered_json rational_to_json(const Rational& r) {
    return ordered_json::array({r.numerator(), r.denominator()});
}

ordered_json certificate_to_json(const ConstraintCertificate& cert) {
    ordered_json j;
    j["rank"] = cert.r;
    j["q_values"] = ordered_json::array(
        {cert.q_values[0], cert.q_values[1], cert.q_values[2]});
    j["c2_base"] = cert.c2_base;
    j["exact"] = cert.exact;
    j["approx_warning"] = cert.approx_warning;
    if (cert.exact) {
        j["t2"] = rational_to_json(cert.t2);
        j["alpha"] = rational_to_json(cert.alpha);
        j["coupling_ratio"] = rational_to_json(cert.ratio);
    }
    j["coupling_ratio_value"] = cert.ratio_value;
    j["integrality_ok"] = cert.integrality_ok;
    if (cert.integrality_ok) j["c2_target"] = cert.c2_target;
    j["rank_ok"] = cert.rank_ok;
    return j;
}

ordered_json solution_to_json(const SolutionReport& rep) {
    ordered_json j;
    j["schema_version"] = 1;
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
    j["checks"] = checks;
    j["phi_norm"] = rep.phi_norm;
    j["torsion_norm"] = rep.torsion_norm;
    j["obstruction_integral"] = rep.obstruction_integral;
    j["all_pass"] = rep.all_pass();
    j["certificate"] = certificate_to_json(rep.certificate);
    return j;
}

}  // namespace

std::string to_json(const CheckResult& check) { return check_to_json(check).dump(2); }

std::string to_json(const SolutionReport& report) {
    return solution_to_json(report).dump(2);
}

std::string to_json(const ConstraintCertificate& cert) {
    return certificate_to_json(cert).dump(2);
}

std::string to_json(const ExactnessReport& report, const std::string& label) {
    ordered_json j;
    j["label"] = label;
    j["rank_in"] = report.rank_in;
    j["dim_ker_out"] = report.dim_ker_out;
    j["containment_defect"] = report.containment_defect;
    j["composition_norm"] = report.composition_norm;
    j["exact"] = report.exact;
    return j.dump(2);
}

}  // namespace g2strom
