// Batch front-end: parses scenario configs, runs the verification suites and
// writes machine-readable reports.
//
// Exit codes: 0 all residuals below tolerance, 1 a residual failed (the worst
// offender is printed), 2 configuration or usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>

#include "g2strom/config.hpp"
#include "g2strom/errors.hpp"
#include "g2strom/grid_modes.hpp"
#include "g2strom/report.hpp"
#include "g2strom/symbols.hpp"
#include "g2strom/tduality.hpp"

using namespace g2strom;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string config;
    std::string out = "report.json";
    int grid = 0;
    unsigned long long seed = 1;
    double tol_scale = 1.0;
    int samples = 0;  // 0 = command default
};

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

ordered_json check_json(const CheckResult& c) {
    return ordered_json::parse(to_json(c));
}

void append_check(ordered_json& arr, std::vector<CheckResult>& all,
                  const CheckResult& c) {
    arr.push_back(check_json(c));
    all.push_back(c);
}

AlternatingForm random_positive_3form(std::mt19937_64& gen, double spread = 0.1) {
    std::normal_distribution<double> N(0.0, spread);
    for (;;) {
        AlternatingForm cand = phi0();
        for (int i = 0; i < cand.size(); ++i) cand[i] += N(gen);
        try {
            metric_from_positive3form(cand);
            return cand;
        } catch (const NotPositiveError&) {
        }
    }
}

Eigen::VectorXd random_unit_covector(std::mt19937_64& gen) {
    std::normal_distribution<double> N(0.0, 1.0);
    Eigen::VectorXd v(7);
    for (int i = 0; i < 7; ++i) v[i] = N(gen);
    return v / v.norm();
}

// ---- suite: pointwise G2 algebra -------------------------------------------------

ordered_json run_algebra_suite(const Options& opt, std::vector<CheckResult>& all) {
    const int samples = opt.samples > 0 ? opt.samples : 50;
    std::mt19937_64 gen(opt.seed);
    std::normal_distribution<double> N(0.0, 1.0);

    double rank_defect = 0.0, idem = 0.0, complete = 0.0, closed14 = 0.0, jres = 0.0;
    double lemma1 = 0.0, lemma2 = 0.0, reduction = 0.0;
    for (int s = 0; s < samples; ++s) {
        const G2Point p(random_positive_3form(gen));
        const auto& p7 = p.proj2_matrix(7);
        const auto& p14 = p.proj2_matrix(14);
        const auto& q1 = p.proj3_matrix(1);
        const auto& q7 = p.proj3_matrix(7);
        const auto& q27 = p.proj3_matrix(27);
        rank_defect = std::max({rank_defect, std::abs(p7.trace() - 7.0),
                                std::abs(p14.trace() - 14.0), std::abs(q1.trace() - 1.0),
                                std::abs(q7.trace() - 7.0), std::abs(q27.trace() - 27.0)});
        for (const auto* m : {&p7, &p14, &q1, &q7, &q27})
            idem = std::max(idem, ((*m) * (*m) - (*m)).cwiseAbs().maxCoeff());
        complete = std::max(
            complete,
            (p7 + p14 - Eigen::MatrixXd::Identity(21, 21)).cwiseAbs().maxCoeff());
        complete = std::max(
            complete,
            (q1 + q7 + q27 - Eigen::MatrixXd::Identity(35, 35)).cwiseAbs().maxCoeff());

        // closed formula for the 14-projection
        for (int j = 0; j < 21; ++j) {
            AlternatingForm basis(7, 2);
            basis[j] = 1.0;
            const AlternatingForm img =
                (2.0 / 3.0) * basis - (1.0 / 3.0) * p.star(wedge(p.phi(), basis));
            closed14 = std::max(
                closed14,
                (img.to_vector() - p14 * basis.to_vector()).cwiseAbs().maxCoeff());
        }

        // J eigenstructure on the three type components
        AlternatingForm g(7, 3);
        for (int i = 0; i < 35; ++i) g[i] = N(gen);
        const auto split = project_three_form(p, g);
        jres = std::max(jres, (j_operator(p, split.part1) - (4.0 / 3.0) * split.part1).max_abs());
        jres = std::max(jres, (j_operator(p, split.part7) - split.part7).max_abs());
        jres = std::max(jres, (j_operator(p, split.part27) + split.part27).max_abs());

        // symbol-level identities on type-pure 2-forms
        AlternatingForm b(7, 2);
        for (int i = 0; i < 21; ++i) b[i] = N(gen);
        Eigen::VectorXd v(7);
        for (int i = 0; i < 7; ++i) v[i] = N(gen);
        const auto res = bryant_symbol_residuals(p, v, p.project2(7, b), p.project2(14, b));
        lemma1 = std::max(lemma1, res.seven_part_annihilated);
        lemma2 = std::max(lemma2, res.no_seven_leak);
        reduction = std::max(reduction, res.reduction_identity);
    }

    const double tol = 1e-10 * opt.tol_scale;
    ordered_json checks = ordered_json::array();
    append_check(checks, all, {"projector.rank_traces", rank_defect, tol, rank_defect < tol});
    append_check(checks, all, {"projector.idempotence", idem, tol, idem < tol});
    append_check(checks, all, {"projector.completeness", complete, tol, complete < tol});
    append_check(checks, all,
                 {"projector.pi14_closed_formula", closed14, tol, closed14 < tol});
    append_check(checks, all, {"j_operator.eigenstructure", jres, tol, jres < tol});
    const double stol = 1e-11 * opt.tol_scale;
    append_check(checks, all,
                 {"symbol.seven_part_annihilated", lemma1, stol, lemma1 < stol});
    append_check(checks, all, {"symbol.no_seven_leak", lemma2, stol, lemma2 < stol});
    append_check(checks, all, {"symbol.reduction_identity", reduction,
                               1e-10 * opt.tol_scale, reduction < 1e-10 * opt.tol_scale});

    ordered_json j;
    j["samples"] = samples;
    j["checks"] = checks;
    return j;
}

// ---- suite: symbol exactness -------------------------------------------------------

ordered_json run_ellipticity_suite(const Options& opt, std::vector<CheckResult>& all) {
    const int samples = opt.samples > 0 ? opt.samples : 100;
    std::mt19937_64 gen(opt.seed);

    bool exact_all = true;
    bool dims_constant = true;
    double worst_defect = 0.0;
    int manifold_dim = -1;
    std::array<int, 3> instanton_dim = {-1, -1, -1};

    for (int pt = 0; pt < 5; ++pt) {
        const G2Point p(random_positive_3form(gen));
        for (int s = 0; s < samples; ++s) {
            const Eigen::VectorXd v = random_unit_covector(gen);
            const auto rep = check_exactness(symbol_PM(p, v), symbol_LM(p, v));
            exact_all = exact_all && rep.exact;
            worst_defect = std::max(worst_defect, rep.containment_defect);
            if (manifold_dim < 0) manifold_dim = rep.dim_ker_out;
            dims_constant = dims_constant && (rep.dim_ker_out == manifold_dim);
            for (int m = 1; m <= 3; ++m) {
                const auto [s0, s1] = symbol_instanton_complex(p, v, m);
                const auto irep = check_exactness(s0, s1);
                exact_all = exact_all && irep.exact;
                worst_defect = std::max(worst_defect, irep.containment_defect);
                if (instanton_dim[m - 1] < 0) instanton_dim[m - 1] = irep.dim_ker_out;
                dims_constant =
                    dims_constant && (irep.dim_ker_out == instanton_dim[m - 1]);
            }
        }
    }

    const double tol = 1e-8 * opt.tol_scale;
    ordered_json checks = ordered_json::array();
    append_check(checks, all,
                 {"ellipticity.exact_everywhere", exact_all ? 0.0 : 1.0, 0.5, exact_all});
    append_check(checks, all,
                 {"ellipticity.kernel_dims_constant", dims_constant ? 0.0 : 1.0, 0.5,
                  dims_constant});
    append_check(checks, all,
                 {"ellipticity.containment_defect", worst_defect, tol, worst_defect < tol});

    ordered_json j;
    j["samples"] = samples;
    j["points"] = 5;
    j["manifold_kernel_dim"] = manifold_dim;
    j["instanton_kernel_dims"] = ordered_json::array(
        {instanton_dim[0], instanton_dim[1], instanton_dim[2]});
    j["checks"] = checks;
    return j;
}

// ---- scenario commands ----------------------------------------------------------------

ordered_json scenario_verify_json(const Scenario& s, const Options& opt,
                                  std::vector<CheckResult>& all) {
    const SolutionReport rep = verify_solution(s, 1e-9, opt.tol_scale);
    for (const auto& c : rep.checks) all.push_back(c);
    return ordered_json::parse(to_json(rep));
}

ordered_json run_solve(const Options& opt, std::vector<CheckResult>& all) {
    ordered_json j;
    ordered_json checks = ordered_json::array();
    const Scenario probe = load_scenario(opt.config, opt.grid);
    // re-solve the scalar equation for the configured data
    try {
        const Scenario solved = make_scenario(probe.bundle, probe.t2, probe.instantons,
                                              UMode::solved, std::nullopt, probe.h0);
        const BaseField h = pointwise_exp(solved.u, 1.0);
        j["solvable"] = true;
        j["min_h"] = h.min_value();
        j["mean_h"] = h.mean();
        const double res = bianchi_residual(solved).max_abs();
        const double tol = 1e-9 * opt.tol_scale;
        append_check(checks, all, {"solve.scalar_equation", res, tol, res < tol});
    } catch (const ObstructedSourceError& e) {
        j["solvable"] = false;
        j["obstruction_integral"] = e.integral_mismatch;
        append_check(checks, all,
                     {"solve.obstruction_integral", std::abs(e.integral_mismatch),
                      1e-9 * opt.tol_scale, false});
    }
    j["checks"] = checks;
    return j;
}

ordered_json run_tdual(const Options& opt, std::vector<CheckResult>& all) {
    const Scenario s = load_scenario(opt.config, opt.grid);
    ordered_json j;
    try {
        const DualPair pair = dualize(s);
        const double residual = verify_duality_identity(pair);
        const Eigen::Matrix3d m = pairing_matrix(pair);
        const double pairing_defect = (m + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();

        ordered_json checks = ordered_json::array();
        append_check(checks, all, {"tdual.identity_residual", residual, 0.0, residual == 0.0});
        append_check(checks, all,
                     {"tdual.pairing_minus_identity", pairing_defect, 0.0,
                      pairing_defect == 0.0});
        j["dual_t2"] = ordered_json::array(
            {pair.dual.t2.numerator(), pair.dual.t2.denominator()});
        ordered_json dp = ordered_json::array();
        for (const auto& per : pair.dual_periods) {
            ordered_json row = ordered_json::array();
            for (long v : per) row.push_back(v);
            dp.push_back(row);
        }
        j["dual_beta_periods"] = dp;
        j["checks"] = checks;
        j["original"] = scenario_verify_json(pair.original, opt, all);
        j["dual"] = scenario_verify_json(pair.dual, opt, all);
    } catch (const NotDualizableError& e) {
        ordered_json checks = ordered_json::array();
        append_check(checks, all, {"tdual.scaled_period_integrality", 1.0, 0.5, false});
        j["checks"] = checks;
        j["error"] = e.what();
        j["offending_curvature"] = e.beta_index;
    }
    return j;
}

ordered_json run_lattice_check(const Options& opt, std::vector<CheckResult>& all) {
    const LatticeCheckConfig cfg = load_lattice_check(opt.config);
    const long long c2_base = cfg.mode == "K3" ? 24 : 0;
    const ConstraintCertificate cert =
        cfg.exact ? check_constraints(cfg.t2, cfg.alpha, cfg.r, cfg.q_values, c2_base)
                  : check_constraints(cfg.t2_value, cfg.alpha_value, cfg.r,
                                      cfg.q_values, c2_base);
    ordered_json j = ordered_json::parse(to_json(cert));
    ordered_json checks = ordered_json::array();
    append_check(checks, all, {"lattice.integrality", cert.integrality_ok ? 0.0 : 1.0,
                               0.5, cert.integrality_ok});
    append_check(checks, all,
                 {"lattice.rank_bound", cert.rank_ok ? 0.0 : 1.0, 0.5, cert.rank_ok});
    j["checks"] = checks;
    return j;
}

int finish(const Options& opt, const std::string& command, ordered_json body,
           const std::vector<CheckResult>& all) {
    body["command"] = command;
    body["schema_version"] = 1;
    body["seed"] = opt.seed;
    body["generated_at"] = timestamp_now();

    std::ofstream os(opt.out);
    if (!os) {
        std::cerr << "error: cannot write report to " << opt.out << "\n";
        return 2;
    }
    os << body.dump(2) << "\n";

    const CheckResult* worst = nullptr;
    bool ok = true;
    for (const auto& c : all) {
        if (!c.pass) {
            ok = false;
            if (!worst || c.value / std::max(c.tolerance, 1e-300) >
                              worst->value / std::max(worst->tolerance, 1e-300))
                worst = &c;
        }
    }
    if (!ok && worst) {
        std::cerr << "FAIL " << worst->id << ": value " << worst->value
                  << " exceeds tolerance " << worst->tolerance << "\n";
        return 1;
    }
    std::cout << "ok: " << all.size() << " checks passed, report written to "
              << opt.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"construction and verification toolkit for warped T^3-bundle "
                 "structures over the flat 4-torus"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config, "scenario or check configuration (JSON)");
    app.add_option("--grid", opt.grid, "override the grid resolution");
    app.add_option("--seed", opt.seed, "seed for randomized suites");
    app.add_option("--tol-scale", opt.tol_scale, "scale factor on all tolerances");
    app.add_option("--out", opt.out, "report output path");
    app.add_option("--samples", opt.samples, "sample count for randomized suites");

    auto* verify_algebra =
        app.add_subcommand("verify-algebra", "pointwise projector/J/symbol identities");
    auto* ellipticity =
        app.add_subcommand("ellipticity", "symbol exactness of the deformation complexes");
    auto* solve = app.add_subcommand("solve", "solve the scalar coupling equation");
    auto* verify = app.add_subcommand("verify", "verify the four structure equations");
    auto* tdual = app.add_subcommand("tdual", "build and check the dual pair");
    auto* lattice = app.add_subcommand("lattice-check", "coupling window certificate");
    auto* report = app.add_subcommand("report", "run every applicable suite");
    for (auto* sub : {verify_algebra, ellipticity, solve, verify, tdual, lattice, report})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<CheckResult> all;
        ordered_json body;
        if (verify_algebra->parsed()) {
            body["algebra"] = run_algebra_suite(opt, all);
            return finish(opt, "verify-algebra", std::move(body), all);
        }
        if (ellipticity->parsed()) {
            body["ellipticity"] = run_ellipticity_suite(opt, all);
            return finish(opt, "ellipticity", std::move(body), all);
        }
        if (solve->parsed()) {
            body["solve"] = run_solve(opt, all);
            return finish(opt, "solve", std::move(body), all);
        }
        if (verify->parsed()) {
            const Scenario s = load_scenario(opt.config, opt.grid);
            body["solution"] = scenario_verify_json(s, opt, all);
            return finish(opt, "verify", std::move(body), all);
        }
        if (tdual->parsed()) {
            body["tdual"] = run_tdual(opt, all);
            return finish(opt, "tdual", std::move(body), all);
        }
        if (lattice->parsed()) {
            body["lattice"] = run_lattice_check(opt, all);
            return finish(opt, "lattice-check", std::move(body), all);
        }
        if (report->parsed()) {
            Options small = opt;
            small.samples = opt.samples > 0 ? opt.samples : 10;
            body["algebra"] = run_algebra_suite(small, all);
            body["ellipticity"] = run_ellipticity_suite(small, all);
            if (!opt.config.empty()) {
                const Scenario s = load_scenario(opt.config, opt.grid);
                body["solution"] = scenario_verify_json(s, opt, all);
                body["tdual"] = run_tdual(opt, all);
            }
            return finish(opt, "report", std::move(body), all);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
