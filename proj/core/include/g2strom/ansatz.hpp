#pragma once

#include <optional>
#include <string>
#include <vector>

#include "g2strom/fibered.hpp"
#include "g2strom/lattice.hpp"

// The warped torus-bundle structure phi = t^3 s123 - t e^u (s1 w1 + s2 w2 +
// s3 w3), its torsion, the curvature coupling, and the residuals of the four
// structure equations. The balanced constructor produces an exact solution
// with constant warp factor and nonzero torsion.

namespace g2strom {

struct InstantonData {
    // abelian components: constant ASD curvature forms with integer periods
    std::vector<BaseField> curvatures;
    std::vector<std::array<long, 6>> periods;
    // pairing weights per component: -1 for positive-definite (vector bundle)
    // blocks in the unitary trace convention, +1 for tangent-type blocks
    std::vector<double> weights;
    double alpha = 0.0;
    Rational alpha_exact{0};
    bool alpha_is_exact = false;

    int rank() const { return static_cast<int>(curvatures.size()); }
    // second Chern number of the abelian sum (requires zero first Chern class)
    long long c2() const;
    // <F ^ F> = (alpha/4) sum_i w_i F_i ^ F_i
    BaseField pairing_four_form(const std::shared_ptr<const Torus4>& base) const;
};

InstantonData make_instantons(const std::shared_ptr<const Torus4>& base,
                              const std::vector<std::array<long, 6>>& periods,
                              const std::vector<double>& weights, double alpha);

enum class UMode { constant, solved, prescribed };

struct Scenario {
    std::shared_ptr<const FiberContext> bundle;
    double t = 1.0;
    Rational t2{1};
    bool t2_is_exact = true;
    InstantonData instantons;
    UMode u_mode = UMode::constant;
    double h0 = 1.0;  // mean of h = e^u in solved mode, value in constant mode
    BaseField u;      // warp profile on the base
    WarpCache warp;   // pointwise e^{su} caches

    std::array<long long, 3> beta_q_values() const;
    ConstraintCertificate certificate(long long c2_base = 0) const;
};

// Assembles the scenario: resolves u per u_mode (solving the scalar equation
// when asked, with positivity of h = e^u enforced) and fills the warp cache.
Scenario make_scenario(std::shared_ptr<const FiberContext> bundle, const Rational& t2,
                       InstantonData instantons, UMode u_mode,
                       std::optional<BaseField> prescribed_u = std::nullopt,
                       double h0 = 1.0);

// t^3 s123 - t e^u sum_j s_j ^ w_j; checks pointwise positivity on a sample
// of grid points.
FiberedForm build_phi(const Scenario& s);

// Torsion through the defining pipeline H = -*(d phi - du ^ phi).
FiberedForm torsion_H(const Scenario& s);
// Independent closed form t^2 sum_j beta_j ^ s_j - e^u *4(du).
FiberedForm torsion_H_closed_form(const Scenario& s);

// Scalar reduction of the coupled 4-form equation:
// laplacian(e^u) - t^2 sum_j |beta_j|^2 - *4<F ^ F> on the grid.
BaseField bianchi_residual(const Scenario& s);

struct CheckResult {
    std::string id;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SolutionReport {
    std::vector<CheckResult> checks;
    double phi_norm = 0.0;
    double torsion_norm = 0.0;
    double obstruction_integral = 0.0;
    ConstraintCertificate certificate;

    bool all_pass() const;
    const CheckResult* find(const std::string& id) const;
    const CheckResult& worst() const;
};

// Residuals of the four structure equations plus the two-route torsion and
// scalar-reduction cross-checks, each against tol (scaled by tol_scale).
SolutionReport verify_solution(const Scenario& s, double tol = 1e-9,
                               double tol_scale = 1.0);

// Instanton data balancing the fiber source exactly: the coupling ratio
// 2 t^2 sum_j Q(beta_j) / alpha must be a nonnegative even integer K; the
// block is realized as K/2 pairs of opposite unit ASD classes. alpha = 0
// asks the constructor to pick alpha = -2 t^2. Throws BalanceError with the
// two integrals when no abelian block can cancel the source.
Scenario balanced_scenario(std::shared_ptr<const FiberContext> bundle,
                           const Rational& t2, const Rational& alpha, double h0 = 1.0);

}  // namespace g2strom
