#include "g2strom/ansatz.hpp"

#include <algorithm>
#include <cmath>

#include "g2strom/errors.hpp"
#include "g2strom/exterior.hpp"

namespace g2strom {

long long InstantonData::c2() const {
    const auto& lattice = IntersectionLattice::t4();
    std::vector<long long> total(6, 0);
    long long sum_q = 0;
    for (const auto& p : periods) {
        const auto cls = t4_class(p);
        for (int i = 0; i < 6; ++i) total[i] += cls[i];
        sum_q += lattice.q_value(cls);
    }
    for (long long v : total)
        if (v != 0)
            throw DomainError("InstantonData::c2: abelian block has nonzero first Chern class");
    // c2 = 1/2 [ Q(sum c_i) - sum Q(c_i) ] with the first term zero
    return -sum_q / 2;
}

BaseField InstantonData::pairing_four_form(const std::shared_ptr<const Torus4>& base) const {
    BaseField acc(base, 4);
    for (std::size_t i = 0; i < curvatures.size(); ++i) {
        BaseField sq = base_wedge(curvatures[i], curvatures[i]);
        sq *= weights[i];
        acc += sq;
    }
    acc *= alpha / 4.0;
    return acc;
}

InstantonData make_instantons(const std::shared_ptr<const Torus4>& base,
                              const std::vector<std::array<long, 6>>& periods,
                              const std::vector<double>& weights, double alpha) {
    if (periods.size() != weights.size())
        throw DomainError("make_instantons: one weight per curvature component");
    InstantonData data;
    data.periods = periods;
    data.weights = weights;
    data.alpha = alpha;
    for (const auto& p : periods) {
        BaseField f = two_form_from_periods(base, p);
        if (asd_defect(f) > 1e-10)
            throw DomainError("make_instantons: component is not anti-self-dual");
        data.curvatures.push_back(std::move(f));
    }
    return data;
}

std::array<long long, 3> Scenario::beta_q_values() const {
    const auto& lattice = IntersectionLattice::t4();
    std::array<long long, 3> q{};
    for (int j = 0; j < 3; ++j)
        q[j] = lattice.q_value(t4_class(bundle->beta_periods[j]));
    return q;
}

ConstraintCertificate Scenario::certificate(long long c2_base) const {
    const int r = std::max(1, instantons.rank());
    if (t2_is_exact && instantons.alpha_is_exact)
        return check_constraints(t2, instantons.alpha_exact, r, beta_q_values(), c2_base);
    return check_constraints(boost::rational_cast<double>(t2), instantons.alpha, r,
                             beta_q_values(), c2_base);
}

namespace {

BaseField beta_norm2_sum(const Scenario& s) {
    BaseField acc(s.bundle->base, 0);
    for (int j = 0; j < 3; ++j) acc += pointwise_norm2(s.bundle->beta[j]);
    return acc;
}

BaseField scalar_source(const Scenario& s) {
    // t^2 sum |beta_j|^2 + *4 <F ^ F>
    BaseField rho = beta_norm2_sum(s);
    rho *= s.t * s.t;
    if (s.instantons.rank() > 0)
        rho += base_star(s.instantons.pairing_four_form(s.bundle->base));
    return rho;
}

}  // namespace

Scenario make_scenario(std::shared_ptr<const FiberContext> bundle, const Rational& t2,
                       InstantonData instantons, UMode u_mode,
                       std::optional<BaseField> prescribed_u, double h0) {
    if (t2 <= Rational(0)) throw DomainError("make_scenario: t^2 must be positive");
    Scenario s;
    s.bundle = std::move(bundle);
    s.t2 = t2;
    s.t = std::sqrt(boost::rational_cast<double>(t2));
    s.instantons = std::move(instantons);
    s.u_mode = u_mode;
    s.h0 = h0;
    if (!(h0 > 0.0)) throw DomainError("make_scenario: h0 must be positive");

    switch (u_mode) {
        case UMode::constant: {
            BaseField u(s.bundle->base, 0);
            u.comp(0).assign(s.bundle->base->points(), std::log(h0));
            s.u = std::move(u);
            break;
        }
        case UMode::prescribed: {
            if (!prescribed_u || prescribed_u->degree() != 0)
                throw DomainError("make_scenario: prescribed mode needs a scalar profile");
            s.u = std::move(*prescribed_u);
            break;
        }
        case UMode::solved: {
            const BaseField h = poisson_solve(scalar_source(s), h0);
            const double min_h = h.min_value();
            if (min_h <= 0.0)
                throw DomainError(
                    "make_scenario: solved warp factor is not positive (min h = " +
                    std::to_string(min_h) + "); raise h0");
            BaseField u(s.bundle->base, 0);
            for (std::size_t x = 0; x < s.bundle->base->points(); ++x)
                u.comp(0)[x] = std::log(h.comp(0)[x]);
            s.u = std::move(u);
            break;
        }
    }
    s.warp = make_warp_cache(s.u);
    return s;
}

FiberedForm build_phi(const Scenario& s) {
    const auto& ctx = s.bundle;
    const double t = s.t;
    FiberedForm phi(ctx, 3);
    phi.add_term(0b111, BaseField::constant(ctx->base, AlternatingForm::scalar(4, t * t * t)));
    for (int j = 1; j <= 3; ++j) {
        BaseField f = hyperkahler_form(ctx->base, j).scaled_by(s.warp.exp_for_degree[1]);
        f *= -t;
        phi.add_term(static_cast<std::uint8_t>(1u << (j - 1)), f);
    }
    // positivity spot checks: the induced pointwise metric must exist
    const std::size_t pts = ctx->base->points();
    for (std::size_t x = 0; x < pts; x += std::max<std::size_t>(1, pts / 7)) {
        metric_from_positive3form(phi.value_at(x));  // throws NotPositiveError
    }
    return phi;
}

FiberedForm torsion_H(const Scenario& s) {
    const FiberedForm phi = build_phi(s);
    const FiberedForm du = from_base(s.bundle, spectral_d(s.u));
    FiberedForm arg = fibered_d(phi);
    arg -= fibered_wedge(du, phi);
    FiberedForm h = fibered_star(arg, s.warp, s.t);
    h *= -1.0;
    return h;
}

FiberedForm torsion_H_closed_form(const Scenario& s) {
    const auto& ctx = s.bundle;
    FiberedForm h(ctx, 3);
    for (int j = 1; j <= 3; ++j) {
        BaseField f = ctx->beta[j - 1];
        f *= s.t * s.t;
        h.add_term(static_cast<std::uint8_t>(1u << (j - 1)), f);
    }
    // -1/2 e^u i_{grad u} w1^2 = -e^u *4(du)
    BaseField dil = base_star(spectral_d(s.u)).scaled_by(s.warp.exp_for_degree[1]);
    dil *= -1.0;
    h.add_term(0, dil);
    return h;
}

BaseField bianchi_residual(const Scenario& s) {
    BaseField res = laplacian(s.warp.exp_for_degree[1]);
    res -= scalar_source(s);
    return res;
}

bool SolutionReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const CheckResult* SolutionReport::find(const std::string& id) const {
    for (const auto& c : checks)
        if (c.id == id) return &c;
    return nullptr;
}

const CheckResult& SolutionReport::worst() const {
    if (checks.empty()) throw DomainError("SolutionReport::worst: empty report");
    const CheckResult* w = &checks[0];
    for (const auto& c : checks) {
        const double margin_c = c.tolerance > 0 ? c.value / c.tolerance : c.value;
        const double margin_w = w->tolerance > 0 ? w->value / w->tolerance : w->value;
        if (margin_c > margin_w) w = &c;
    }
    return *w;
}

SolutionReport verify_solution(const Scenario& s, double tol, double tol_scale) {
    const double bar = tol * tol_scale;
    SolutionReport rep;
    auto push = [&rep](const std::string& id, double value, double tolerance) {
        rep.checks.push_back({id, value, tolerance, value < tolerance});
    };

    const FiberedForm phi = build_phi(s);
    const FiberedForm star_phi = fibered_star(phi, s.warp, s.t);
    const FiberedForm dphi = fibered_d(phi);
    const FiberedForm du = from_base(s.bundle, spectral_d(s.u));
    rep.phi_norm = phi.l2_norm();

    // equation 1: d phi ^ phi = 0 for every warp profile and fiber size
    push("associative.dphi_wedge_phi", fibered_wedge(dphi, phi).l2_norm(), bar);

    // equation 2: d *phi = du ^ *phi (conformally coclosed structure)
    FiberedForm r2 = fibered_d(star_phi);
    r2 -= fibered_wedge(du, star_phi);
    push("coclosed.dstar_minus_du_star", r2.l2_norm(), bar);

    // torsion, both routes
    FiberedForm arg = dphi;
    arg -= fibered_wedge(du, phi);
    FiberedForm h = fibered_star(arg, s.warp, s.t);
    h *= -1.0;
    rep.torsion_norm = h.l2_norm();
    push("torsion.pipeline_vs_closed_form", (h - torsion_H_closed_form(s)).l2_norm(), bar);

    // equation 3: dH = <F ^ F>
    FiberedForm dh = fibered_d(h);
    FiberedForm r3 = dh;
    if (s.instantons.rank() > 0)
        r3 -= from_base(s.bundle, s.instantons.pairing_four_form(s.bundle->base));
    push("bianchi.dH_minus_FF", r3.l2_norm(), bar);

    // scalar reduction: *4 dH = laplacian(e^u) - t^2 sum |beta|^2
    {
        BaseField dh_base(s.bundle->base, 4);
        double off_base = 0.0;
        for (const auto& [mask, f] : dh.terms()) {
            if (mask == 0)
                dh_base = f;
            else
                off_base = std::max(off_base, f.max_abs());
        }
        BaseField expect = laplacian(s.warp.exp_for_degree[1]);
        BaseField b2 = beta_norm2_sum(s);
        b2 *= s.t * s.t;
        expect -= b2;
        const double value = (base_star(dh_base) - expect).l2_norm() + off_base;
        push("bianchi.scalar_reduction", value, bar);
    }

    // equation 4: every curvature component is an instanton for *phi
    double worst_defect = 0.0;
    for (const auto& f : s.instantons.curvatures)
        worst_defect = std::max(
            worst_defect, fibered_wedge(from_base(s.bundle, f), star_phi).l2_norm());
    push("instanton.F_wedge_starphi", worst_defect, bar);

    rep.obstruction_integral = scalar_source(s).integral();
    try {
        rep.certificate = s.certificate(0);
    } catch (const Error&) {
        // certificate stays default when exact data is missing
    }
    return rep;
}

Scenario balanced_scenario(std::shared_ptr<const FiberContext> bundle,
                           const Rational& t2, const Rational& alpha_in, double h0) {
    const auto& lattice = IntersectionLattice::t4();
    long long sum_q = 0;
    for (int j = 0; j < 3; ++j)
        sum_q += lattice.q_value(t4_class(bundle->beta_periods[j]));

    const Rational alpha = (alpha_in == Rational(0)) ? Rational(-2) * t2 : alpha_in;

    // pointwise balance (alpha/4) sum w_i |F_i|^2 = t^2 sum |beta_j|^2 in
    // class arithmetic: K = 2 t^2 sum Q(beta_j) / alpha unit-pair components
    const Rational k_rat = Rational(2) * t2 * Rational(sum_q) / alpha;
    const bool realizable = k_rat.denominator() == 1 && k_rat.numerator() >= 0 &&
                            k_rat.numerator() % 2 == 0;
    // int t^2 sum |beta_j|^2 dvol = -4 pi^2 t^2 sum Q(beta_j), volume-free
    const double required =
        -4.0 * M_PI * M_PI * boost::rational_cast<double>(t2) * sum_q;
    if (!realizable) {
        // closest abelian block: round K to the nearest nonnegative even integer
        const double k_val = boost::rational_cast<double>(k_rat);
        const long long k_best = std::max(0LL, 2 * std::llround(k_val / 2.0));
        const double achievable =
            -2.0 * M_PI * M_PI * boost::rational_cast<double>(alpha) * k_best;
        throw BalanceError(
            "balanced_scenario: coupling ratio " + std::to_string(k_val) +
                " is not a nonnegative even integer; no abelian instanton block "
                "cancels the fiber source",
            required, achievable);
    }
    const long long K = k_rat.numerator();

    std::vector<std::array<long, 6>> periods;
    std::vector<double> weights;
    for (long long i = 0; i < K / 2; ++i) {
        periods.push_back({1, -1, 0, 0, 0, 0});
        periods.push_back({-1, 1, 0, 0, 0, 0});
        weights.push_back(-1.0);
        weights.push_back(-1.0);
    }
    InstantonData inst = make_instantons(bundle->base, periods, weights,
                                         boost::rational_cast<double>(alpha));
    inst.alpha_exact = alpha;
    inst.alpha_is_exact = true;

    return make_scenario(std::move(bundle), t2, std::move(inst), UMode::constant,
                         std::nullopt, h0);
}

}  // namespace g2strom
