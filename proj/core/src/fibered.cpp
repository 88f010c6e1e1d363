#include "g2strom/fibered.hpp"

#include <bit>
#include <cmath>

#include "g2strom/errors.hpp"

namespace g2strom {

namespace {

int popcount8(std::uint8_t m) { return std::popcount(static_cast<unsigned>(m)); }

void require_same_context(const FiberedForm& a, const FiberedForm& b) {
    if (!a.context() || !b.context())
        throw DomainError("FiberedForm: empty operand");
    if (a.context() != b.context() &&
        !a.context()->base->same_grid(*b.context()->base))
        throw DomainError("FiberedForm: operands from different bundles");
}

}  // namespace

std::shared_ptr<const FiberContext> make_fiber_context(
    std::shared_ptr<const Torus4> base,
    const std::array<std::array<long, 6>, 3>& beta_periods, double asd_tol) {
    auto ctx = std::make_shared<FiberContext>();
    ctx->base = base;
    ctx->beta_periods = beta_periods;
    for (int j = 0; j < 3; ++j) {
        ctx->beta[j] = two_form_from_periods(base, beta_periods[j]);
        const double defect = asd_defect(ctx->beta[j]);
        if (defect > asd_tol)
            throw DomainError(
                "make_fiber_context: beta_" + std::to_string(j + 1) +
                " is not anti-self-dual for these side lengths (defect " +
                std::to_string(defect) + ")");
    }
    return ctx;
}

FiberedForm::FiberedForm(std::shared_ptr<const FiberContext> ctx, int degree)
    : ctx_(std::move(ctx)), deg_(degree) {
    if (!ctx_) throw DomainError("FiberedForm: null context");
    if (degree < 0 || degree > 7) throw DomainError("FiberedForm: degree must be 0..7");
}

const BaseField& FiberedForm::term(std::uint8_t mask) const {
    const auto it = terms_.find(mask);
    if (it == terms_.end()) throw DomainError("FiberedForm::term: no such term");
    return it->second;
}

void FiberedForm::add_term(std::uint8_t mask, const BaseField& field) {
    if (mask > 0b111) throw DomainError("FiberedForm: fiber mask out of range");
    if (popcount8(mask) + field.degree() != deg_)
        throw DomainError("FiberedForm: term degree does not match total degree");
    if (!field.base()->same_grid(*ctx_->base))
        throw DomainError("FiberedForm: term lives on the wrong grid");
    const auto it = terms_.find(mask);
    if (it == terms_.end()) {
        if (field.max_abs() != 0.0) terms_.emplace(mask, field);
    } else {
        it->second += field;
    }
}

FiberedForm& FiberedForm::operator+=(const FiberedForm& o) {
    require_same_context(*this, o);
    if (deg_ != o.deg_) throw DomainError("FiberedForm: degree mismatch");
    for (const auto& [mask, f] : o.terms_) add_term(mask, f);
    return *this;
}

FiberedForm& FiberedForm::operator-=(const FiberedForm& o) {
    require_same_context(*this, o);
    if (deg_ != o.deg_) throw DomainError("FiberedForm: degree mismatch");
    for (const auto& [mask, f] : o.terms_) {
        BaseField neg = f;
        neg *= -1.0;
        add_term(mask, neg);
    }
    return *this;
}

FiberedForm& FiberedForm::operator*=(double s) {
    for (auto& [mask, f] : terms_) f *= s;
    return *this;
}

double FiberedForm::l2_norm() const {
    double acc = 0.0;
    for (const auto& [mask, f] : terms_) {
        const double n = f.l2_norm();
        acc += n * n;
    }
    return std::sqrt(acc);
}

double FiberedForm::max_abs() const {
    double m = 0.0;
    for (const auto& [mask, f] : terms_) m = std::max(m, f.max_abs());
    return m;
}

AlternatingForm FiberedForm::value_at(std::size_t x) const {
    AlternatingForm v(7, deg_);
    for (const auto& [mask, f] : terms_) {
        const auto& tb = mi::basis(4, f.degree());
        for (int ci = 0; ci < f.components(); ++ci) {
            // fiber indices 0..2 precede base indices 3..6, so the combined
            // multi-index is already increasing and picks up no sign
            const std::uint8_t m7 =
                mask | static_cast<std::uint8_t>(tb.mask_of[ci] << 3);
            v.set_coefficient(m7, v.coefficient(m7) + f.comp(ci)[x]);
        }
    }
    return v;
}

FiberedForm from_base(std::shared_ptr<const FiberContext> ctx, const BaseField& f) {
    FiberedForm w(ctx, f.degree());
    w.add_term(0, f);
    return w;
}

FiberedForm sigma(std::shared_ptr<const FiberContext> ctx, int j) {
    if (j < 1 || j > 3) throw DomainError("sigma: index must be 1, 2 or 3");
    FiberedForm w(ctx, 1);
    w.add_term(static_cast<std::uint8_t>(1u << (j - 1)),
               BaseField::constant(ctx->base, AlternatingForm::scalar(4, 1.0)));
    return w;
}

FiberedForm fibered_d(const FiberedForm& w) {
    const auto& ctx = w.context();
    if (!ctx) throw DomainError("fibered_d: empty form");
    FiberedForm out(ctx, w.degree() + 1);
    for (const auto& [mask, alpha] : w.terms()) {
        const int p = popcount8(mask);
        // sigma_I ^ d(alpha)
        if (alpha.degree() < 4) {
            BaseField da = spectral_d(alpha);
            if (p % 2 == 1) da *= -1.0;
            out.add_term(mask, da);
        }
        // (d sigma_I) ^ alpha through the structure equations
        if (alpha.degree() + 2 <= 4) {
            for (int j = 0; j < 3; ++j) {
                if (!(mask & (1u << j))) continue;
                const std::uint8_t rest = mask & ~static_cast<std::uint8_t>(1u << j);
                BaseField t = base_wedge(ctx->beta[j], alpha);
                if (mi::removal_sign(mask, j) < 0) t *= -1.0;
                out.add_term(rest, t);
            }
        }
    }
    return out;
}

FiberedForm fibered_wedge(const FiberedForm& a, const FiberedForm& b) {
    require_same_context(a, b);
    const int deg = a.degree() + b.degree();
    if (deg > 7) throw DegreeOverflowError("fibered_wedge: total degree exceeds 7");
    FiberedForm out(a.context(), deg);
    for (const auto& [ma, fa] : a.terms()) {
        for (const auto& [mb, fb] : b.terms()) {
            if (ma & mb) continue;                       // repeated sigma
            if (fa.degree() + fb.degree() > 4) continue;  // pullback of a 5-form
            // sigma_I ^ a ^ sigma_J ^ b = sign3(I,J) (-1)^{deg a * |J|}
            //                             sigma_{I|J} ^ (a ^ b)
            double sgn = mi::merge_sign(ma, mb);
            if ((fa.degree() * popcount8(mb)) % 2 == 1) sgn = -sgn;
            BaseField t = base_wedge(fa, fb);
            if (sgn < 0) t *= -1.0;
            out.add_term(ma | mb, t);
        }
    }
    return out;
}

WarpCache make_warp_cache(const BaseField& u) {
    if (u.degree() != 0) throw DomainError("make_warp_cache: u must be a scalar field");
    WarpCache c;
    c.base = u.base();
    // exact pointwise exponentials: the star is a pointwise operator, so its
    // algebraic identities must hold to rounding at every grid point
    for (int q = 0; q <= 4; ++q) c.exp_for_degree[q] = pointwise_exp(u, 2.0 - q);
    return c;
}

FiberedForm fibered_star(const FiberedForm& w, const WarpCache& warp, double t) {
    if (!(t > 0.0)) throw DomainError("fibered_star: fiber size t must be positive");
    const auto& ctx = w.context();
    if (!ctx) throw DomainError("fibered_star: empty form");
    if (!warp.base->same_grid(*ctx->base))
        throw DomainError("fibered_star: warp cache on the wrong grid");

    FiberedForm out(ctx, 7 - w.degree());
    for (const auto& [mask, alpha] : w.terms()) {
        const int p = popcount8(mask);
        const int q = alpha.degree();
        const double tfac = std::pow(t, 3 - 2 * p);
        const std::uint8_t fiber_comp = 0b111u & ~mask;
        const auto& tin = mi::basis(4, q);
        const auto& tout = mi::basis(4, 4 - q);
        BaseField part(ctx->base, 4 - q);
        for (int ci = 0; ci < alpha.components(); ++ci) {
            const std::uint8_t bm = tin.mask_of[ci];
            const std::uint8_t m7 = mask | static_cast<std::uint8_t>(bm << 3);
            const std::uint8_t c7 = 0b1111111u & ~m7;
            const double sgn = mi::merge_sign(m7, c7) * tfac;
            auto& dst = part.comp(tout.index_of[0b1111u & ~bm]);
            const auto& src = alpha.comp(ci);
            for (std::size_t x = 0; x < src.size(); ++x) dst[x] += sgn * src[x];
        }
        out.add_term(fiber_comp, part.scaled_by(warp.exp_for_degree[q]));
    }
    return out;
}

FiberedForm fibered_star(const FiberedForm& w, const BaseField& u, double t) {
    return fibered_star(w, make_warp_cache(u), t);
}

}  // namespace g2strom
