#pragma once

#include <array>
#include <map>
#include <memory>

#include "g2strom/grid.hpp"

// T^3-invariant forms on the principal torus bundle over the flat 4-torus:
// sums sigma_I ^ pi*(alpha_I) keyed by the fiber multi-index I, with the
// structure equations d sigma_j = pi*(beta_j) driving the calculus.

namespace g2strom {

struct FiberContext {
    std::shared_ptr<const Torus4> base;
    std::array<BaseField, 3> beta;                    // closed ASD curvature forms
    std::array<std::array<long, 6>, 3> beta_periods;  // integer class certificates
};

// Builds the three curvature forms from integer periods and checks that each
// is anti-self-dual at the stated tolerance (closedness is automatic for
// constant coefficients, and closed ASD forms on the flat torus are constant).
std::shared_ptr<const FiberContext> make_fiber_context(
    std::shared_ptr<const Torus4> base,
    const std::array<std::array<long, 6>, 3>& beta_periods, double asd_tol = 1e-10);

class FiberedForm {
public:
    FiberedForm() = default;
    FiberedForm(std::shared_ptr<const FiberContext> ctx, int degree);

    const std::shared_ptr<const FiberContext>& context() const { return ctx_; }
    int degree() const { return deg_; }

    // fiber multi-index as bitmask over {0,1,2}
    const std::map<std::uint8_t, BaseField>& terms() const { return terms_; }
    bool has_term(std::uint8_t mask) const { return terms_.count(mask) > 0; }
    const BaseField& term(std::uint8_t mask) const;
    void add_term(std::uint8_t mask, const BaseField& field);

    FiberedForm& operator+=(const FiberedForm& o);
    FiberedForm& operator-=(const FiberedForm& o);
    FiberedForm& operator*=(double s);
    friend FiberedForm operator+(FiberedForm a, const FiberedForm& b) { return a += b; }
    friend FiberedForm operator-(FiberedForm a, const FiberedForm& b) { return a -= b; }
    friend FiberedForm operator*(double s, FiberedForm a) { return a *= s; }

    double l2_norm() const;
    double max_abs() const;

    // coefficients at a grid point in the (sigma, dx) coframe
    AlternatingForm value_at(std::size_t x) const;

private:
    std::shared_ptr<const FiberContext> ctx_;
    int deg_ = 0;
    std::map<std::uint8_t, BaseField> terms_;
};

// pi*-pullback of a base form (empty fiber index).
FiberedForm from_base(std::shared_ptr<const FiberContext> ctx, const BaseField& f);
// The connection coframe sigma_j, j in {1,2,3}.
FiberedForm sigma(std::shared_ptr<const FiberContext> ctx, int j);

// Exterior derivative: d(sigma_I ^ a) expands through d sigma_j = beta_j plus
// the spectral derivative on the base factor.
FiberedForm fibered_d(const FiberedForm& w);

// Wedge product; fiber-index collisions and base degrees past 4 vanish
// structurally (pullbacks of forms of degree > 4 on the base).
FiberedForm fibered_wedge(const FiberedForm& a, const FiberedForm& b);

// Alias-reduced warp factors e^{s u} for the star of g = t^2 sigma^2 + e^u g4.
struct WarpCache {
    std::shared_ptr<const Torus4> base;
    // exp((2 - q) u) for base degree q = 0..4
    std::array<BaseField, 5> exp_for_degree;
};
WarpCache make_warp_cache(const BaseField& u);

// Hodge star of the warped metric t^2 (sigma_1^2+sigma_2^2+sigma_3^2) + e^u g4
// with orientation sigma_123 ^ dvol4:
//   *(sigma_I ^ pi*a) = sign * t^{3-2|I|} e^{(2-deg a) u} sigma_{I^c} ^ pi*(*4 a).
FiberedForm fibered_star(const FiberedForm& w, const WarpCache& warp, double t);
FiberedForm fibered_star(const FiberedForm& w, const BaseField& u, double t);

}  // namespace g2strom
