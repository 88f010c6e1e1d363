#include "g2strom/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>

#include "g2strom/errors.hpp"
#include "g2strom/grid_modes.hpp"

namespace g2strom {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ConfigError("unknown key \"" + key + "\" in " + where);
}

// rational values: [num, den] arrays and integer literals are exact;
// non-integer numbers fall back to an approximation flag
struct ParsedRational {
    Rational value{0};
    double approx = 0.0;
    bool exact = true;
};

ParsedRational parse_rational(const json& j, const std::string& where) {
    ParsedRational out;
    if (j.is_array()) {
        if (j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
            throw ConfigError(where + ": rational must be [numerator, denominator]");
        const long long den = j[1].get<long long>();
        if (den == 0) throw ConfigError(where + ": zero denominator");
        out.value = Rational(j[0].get<long long>(), den);
        out.approx = boost::rational_cast<double>(out.value);
        return out;
    }
    if (j.is_number_integer()) {
        out.value = Rational(j.get<long long>());
        out.approx = static_cast<double>(j.get<long long>());
        return out;
    }
    if (j.is_number()) {
        out.exact = false;
        out.approx = j.get<double>();
        // keep a nearby rational for code paths that insist on one
        out.value = Rational(std::llround(out.approx * 1e6), 1000000);
        return out;
    }
    throw ConfigError(where + ": expected a number or [num, den]");
}

std::array<long, 6> parse_periods(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 6)
        throw ConfigError(where + ": period vector must have 6 integer entries");
    std::array<long, 6> p{};
    for (int i = 0; i < 6; ++i) {
        if (!j[i].is_number_integer()) throw ConfigError(where + ": periods are integers");
        p[i] = j[i].get<long>();
    }
    return p;
}

}  // namespace

Scenario load_scenario(const std::string& path, int grid_override) {
    const json j = parse_file(path);
    reject_unknown_keys(j, {"base", "beta_periods", "t2", "alpha", "instantons",
                            "u_mode", "h0"},
                        "scenario config");

    // base torus
    std::array<double, 4> sides{1, 1, 1, 1};
    int grid = 16;
    if (j.contains("base")) {
        const json& b = j.at("base");
        reject_unknown_keys(b, {"side_lengths", "grid"}, "\"base\"");
        if (b.contains("side_lengths")) {
            const json& s = b.at("side_lengths");
            if (!s.is_array() || s.size() != 4)
                throw ConfigError("\"side_lengths\" must have 4 entries");
            for (int i = 0; i < 4; ++i) sides[i] = s[i].get<double>();
        }
        if (b.contains("grid")) grid = b.at("grid").get<int>();
    }
    if (grid_override > 0) grid = grid_override;
    std::shared_ptr<const Torus4> torus;
    try {
        torus = std::make_shared<const Torus4>(sides, grid);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid base: ") + e.what());
    }

    if (!j.contains("beta_periods"))
        throw ConfigError("scenario config needs \"beta_periods\"");
    const json& bp = j.at("beta_periods");
    if (!bp.is_array() || bp.size() != 3)
        throw ConfigError("\"beta_periods\" must list three period vectors");
    std::array<std::array<long, 6>, 3> periods{};
    for (int i = 0; i < 3; ++i) periods[i] = parse_periods(bp[i], "\"beta_periods\"");
    std::shared_ptr<const FiberContext> bundle;
    try {
        bundle = make_fiber_context(torus, periods);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid curvature data: ") + e.what());
    }

    ParsedRational t2{Rational(1), 1.0, true};
    if (j.contains("t2")) t2 = parse_rational(j.at("t2"), "\"t2\"");
    if (t2.approx <= 0.0) throw ConfigError("\"t2\" must be positive");

    ParsedRational alpha{Rational(0), 0.0, true};
    if (j.contains("alpha")) alpha = parse_rational(j.at("alpha"), "\"alpha\"");

    double h0 = 1.0;
    if (j.contains("h0")) h0 = j.at("h0").get<double>();

    // warp mode
    UMode mode = UMode::constant;
    std::optional<BaseField> prescribed;
    if (j.contains("u_mode")) {
        const json& um = j.at("u_mode");
        if (um.is_string()) {
            const std::string s = um.get<std::string>();
            if (s == "constant")
                mode = UMode::constant;
            else if (s == "solved")
                mode = UMode::solved;
            else
                throw ConfigError("\"u_mode\" must be constant, solved or a mode list");
        } else if (um.is_object()) {
            reject_unknown_keys(um, {"modes"}, "\"u_mode\"");
            mode = UMode::prescribed;
            std::vector<CosineMode> modes;
            for (const json& mj : um.at("modes")) {
                reject_unknown_keys(mj, {"k", "amp", "phase"}, "\"u_mode.modes\"");
                CosineMode cm;
                const json& k = mj.at("k");
                if (!k.is_array() || k.size() != 4)
                    throw ConfigError("mode wavevector must have 4 entries");
                for (int a = 0; a < 4; ++a) cm.k[a] = k[a].get<int>();
                cm.amp = mj.at("amp").get<double>();
                cm.phase = mj.contains("phase") ? mj.at("phase").get<double>() : 0.0;
                modes.push_back(cm);
            }
            prescribed = field_from_cosine_modes(torus, modes);
        } else {
            throw ConfigError("\"u_mode\" must be a string or an object");
        }
    }

    // instanton data
    const json inst = j.contains("instantons") ? j.at("instantons") : json("none");
    try {
        if (inst.is_string() && inst.get<std::string>() == "balanced") {
            if (mode != UMode::constant)
                throw ConfigError("balanced instantons require the constant warp mode");
            Scenario s = balanced_scenario(bundle, t2.value, alpha.value, h0);
            return s;
        }
        InstantonData data;
        if (inst.is_object()) {
            reject_unknown_keys(inst, {"periods", "weights"}, "\"instantons\"");
            std::vector<std::array<long, 6>> fper;
            for (const json& pj : inst.at("periods"))
                fper.push_back(parse_periods(pj, "\"instantons.periods\""));
            std::vector<double> weights(fper.size(), -1.0);
            if (inst.contains("weights")) {
                weights.clear();
                for (const json& w : inst.at("weights")) weights.push_back(w.get<double>());
            }
            data = make_instantons(torus, fper, weights, alpha.approx);
            data.alpha_exact = alpha.value;
            data.alpha_is_exact = alpha.exact;
        } else if (!(inst.is_string() && inst.get<std::string>() == "none")) {
            throw ConfigError("\"instantons\" must be balanced, none or a data object");
        }
        Scenario s = make_scenario(bundle, t2.value, std::move(data), mode,
                                   std::move(prescribed), h0);
        s.t2_is_exact = t2.exact;
        return s;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("cannot assemble scenario: ") + e.what());
    }
}

LatticeCheckConfig load_lattice_check(const std::string& path) {
    const json j = parse_file(path);
    reject_unknown_keys(j, {"mode", "t2", "alpha", "r", "q_values", "beta_periods"},
                        "lattice-check config");
    LatticeCheckConfig cfg;
    if (j.contains("mode")) cfg.mode = j.at("mode").get<std::string>();
    if (cfg.mode != "K3" && cfg.mode != "T4")
        throw ConfigError("\"mode\" must be K3 or T4");
    const ParsedRational t2 =
        j.contains("t2") ? parse_rational(j.at("t2"), "\"t2\"") : ParsedRational{Rational(1), 1.0, true};
    const ParsedRational alpha =
        j.contains("alpha") ? parse_rational(j.at("alpha"), "\"alpha\"")
                            : ParsedRational{Rational(-1), -1.0, true};
    cfg.t2 = t2.value;
    cfg.t2_value = t2.approx;
    cfg.alpha = alpha.value;
    cfg.alpha_value = alpha.approx;
    cfg.exact = t2.exact && alpha.exact;
    if (j.contains("r")) cfg.r = j.at("r").get<int>();

    if (j.contains("q_values")) {
        const json& q = j.at("q_values");
        if (!q.is_array() || q.size() != 3)
            throw ConfigError("\"q_values\" must have 3 integer entries");
        for (int i = 0; i < 3; ++i) cfg.q_values[i] = q[i].get<long long>();
    } else if (j.contains("beta_periods")) {
        const json& bp = j.at("beta_periods");
        if (!bp.is_array() || bp.size() != 3)
            throw ConfigError("\"beta_periods\" must list three period vectors");
        const auto& lattice = IntersectionLattice::t4();
        for (int i = 0; i < 3; ++i)
            cfg.q_values[i] =
                lattice.q_value(t4_class(parse_periods(bp[i], "\"beta_periods\"")));
    } else {
        throw ConfigError("lattice-check config needs q_values or beta_periods");
    }
    return cfg;
}

}  // namespace g2strom
