#include "g2strom/tduality.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>

#include "g2strom/errors.hpp"

namespace g2strom {

// ---- RationalForm --------------------------------------------------------------

RationalForm::RationalForm(int degree) : deg_(degree) {
    if (degree < 0 || degree > 4) throw DomainError("RationalForm: degree must be 0..4");
    c_.assign(mi::binomial(4, degree), Rational(0));
}

RationalForm RationalForm::from_periods(const std::array<long, 6>& p) {
    RationalForm f(2);
    // lex component order (01, 02, 03, 12, 13, 23) from the period vector
    // ordered (p01, p23, p02, p31, p03, p12)
    f.c_[0] = Rational(p[0]);
    f.c_[1] = Rational(p[2]);
    f.c_[2] = Rational(p[4]);
    f.c_[3] = Rational(p[5]);
    f.c_[4] = Rational(-p[3]);
    f.c_[5] = Rational(p[1]);
    return f;
}

RationalForm RationalForm::scalar(const Rational& v) {
    RationalForm f(0);
    f.c_[0] = v;
    return f;
}

RationalForm& RationalForm::operator+=(const RationalForm& o) {
    if (deg_ != o.deg_) throw DomainError("RationalForm: degree mismatch");
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
}

RationalForm& RationalForm::operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    return *this;
}

bool RationalForm::is_zero() const {
    for (const auto& v : c_)
        if (v != Rational(0)) return false;
    return true;
}

double RationalForm::max_abs() const {
    double m = 0.0;
    for (const auto& v : c_)
        m = std::max(m, std::abs(boost::rational_cast<double>(v)));
    return m;
}

RationalForm wedge(const RationalForm& a, const RationalForm& b) {
    if (a.deg_ + b.deg_ > 4)
        throw DegreeOverflowError("RationalForm wedge: degree sum exceeds 4");
    RationalForm r(a.deg_ + b.deg_);
    const auto& ta = mi::basis(4, a.deg_);
    const auto& tb = mi::basis(4, b.deg_);
    const auto& tr = mi::basis(4, r.deg_);
    for (int i = 0; i < a.size(); ++i) {
        if (a.c_[i] == Rational(0)) continue;
        for (int j = 0; j < b.size(); ++j) {
            const std::uint8_t ma = ta.mask_of[i];
            const std::uint8_t mb = tb.mask_of[j];
            if (ma & mb) continue;
            r.c_[tr.index_of[ma | mb]] +=
                Rational(mi::merge_sign(ma, mb)) * a.c_[i] * b.c_[j];
        }
    }
    return r;
}

// ---- CorrespondenceElement --------------------------------------------------------

CorrespondenceElement CorrespondenceElement::sigma(int j, bool primed) {
    if (j < 1 || j > 3) throw DomainError("sigma: index must be 1, 2 or 3");
    CorrespondenceElement e(1);
    e.terms_.emplace(static_cast<std::uint8_t>(1u << (j - 1 + (primed ? 3 : 0))),
                     RationalForm::scalar(Rational(1)));
    return e;
}

CorrespondenceElement CorrespondenceElement::base(const RationalForm& f) {
    CorrespondenceElement e(f.degree());
    if (!f.is_zero()) e.terms_.emplace(0, f);
    return e;
}

CorrespondenceElement CorrespondenceElement::symbol(const std::string& name, int degree,
                                                    const Rational& coeff) {
    CorrespondenceElement e(degree);
    if (coeff != Rational(0)) e.symbols_[name] = coeff;
    return e;
}

void CorrespondenceElement::add_term(std::uint8_t mask, const RationalForm& f) {
    if (mask > 0b111111) throw DomainError("CorrespondenceElement: bad fiber mask");
    const int p = std::popcount(static_cast<unsigned>(mask));
    if (p + f.degree() != deg_)
        throw DomainError("CorrespondenceElement: term degree mismatch");
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
        if (!f.is_zero()) terms_.emplace(mask, f);
    } else {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CorrespondenceElement& CorrespondenceElement::operator+=(const CorrespondenceElement& o) {
    if (deg_ != o.deg_) throw DomainError("CorrespondenceElement: degree mismatch");
    for (const auto& [mask, f] : o.terms_) add_term(mask, f);
    for (const auto& [name, c] : o.symbols_) {
        symbols_[name] += c;
        if (symbols_[name] == Rational(0)) symbols_.erase(name);
    }
    return *this;
}

CorrespondenceElement& CorrespondenceElement::operator-=(const CorrespondenceElement& o) {
    CorrespondenceElement neg = o;
    neg *= Rational(-1);
    return *this += neg;
}

CorrespondenceElement& CorrespondenceElement::operator*=(const Rational& s) {
    if (s == Rational(0)) {
        terms_.clear();
        symbols_.clear();
        return *this;
    }
    for (auto& [mask, f] : terms_) f *= s;
    for (auto& [name, c] : symbols_) c *= s;
    return *this;
}

bool CorrespondenceElement::is_zero() const {
    if (!symbols_.empty()) return false;
    for (const auto& [mask, f] : terms_)
        if (!f.is_zero()) return false;
    return true;
}

double CorrespondenceElement::max_abs() const {
    double m = 0.0;
    for (const auto& [mask, f] : terms_) m = std::max(m, f.max_abs());
    for (const auto& [name, c] : symbols_)
        m = std::max(m, std::abs(boost::rational_cast<double>(c)));
    return m;
}

CorrespondenceElement wedge(const CorrespondenceElement& a,
                            const CorrespondenceElement& b) {
    if (!a.symbols().empty() || !b.symbols().empty())
        throw DomainError("wedge: formal symbols cannot be multiplied");
    CorrespondenceElement out(a.degree() + b.degree());
    for (const auto& [ma, fa] : a.terms()) {
        for (const auto& [mb, fb] : b.terms()) {
            if (ma & mb) continue;
            if (fa.degree() + fb.degree() > 4) continue;  // pullback of a 5-form
            RationalForm f = wedge(fa, fb);
            Rational sgn(mi::merge_sign(ma, mb));
            if ((fa.degree() * std::popcount(static_cast<unsigned>(mb))) % 2 == 1)
                sgn = -sgn;
            f *= sgn;
            out.add_term(ma | mb, f);
        }
    }
    return out;
}

CorrespondenceElement differential(const CorrespondenceAlgebra& alg,
                                   const CorrespondenceElement& w) {
    if (!w.symbols().empty())
        throw DomainError("differential: formal symbols have no assigned derivative");
    CorrespondenceElement out(w.degree() + 1);
    for (const auto& [mask, f] : w.terms()) {
        // d(base) = 0 for constant coefficients; only the structure equations act
        for (int bit = 0; bit < 6; ++bit) {
            if (!(mask & (1u << bit))) continue;
            if (f.degree() + 2 > 4) continue;
            const RationalForm& curv = bit < 3 ? alg.b[bit] : alg.b_dual[bit - 3];
            RationalForm t = wedge(curv, f);
            t *= Rational(mi::removal_sign(mask, bit));
            out.add_term(mask & ~static_cast<std::uint8_t>(1u << bit), t);
        }
    }
    return out;
}

// ---- dual pair ------------------------------------------------------------------

DualPair dualize(const Scenario& s) {
    if (!s.t2_is_exact)
        throw DomainError("dualize: needs an exact rational t^2");
    const auto& periods = s.bundle->beta_periods;

    // scaled-period integrality, reported per curvature form
    for (int j = 0; j < 3; ++j)
        for (long p : periods[j])
            if ((s.t2 * Rational(p)).denominator() != 1)
                throw NotDualizableError(
                    "dualize: [t^2 beta_" + std::to_string(j + 1) +
                        "] is not an integral class",
                    j + 1);

    // the original coupling window must hold when instanton data is present
    if (s.instantons.rank() > 0) {
        const ConstraintCertificate cert = s.certificate(0);
        if (!cert.integrality_ok || !cert.rank_ok)
            throw DomainError("dualize: scenario violates the coupling window");
    }

    DualPair pair;
    pair.original = s;

    std::array<std::array<long, 6>, 3> dp{};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 6; ++i) {
            const Rational scaled = -s.t2 * Rational(periods[j][i]);
            dp[j][i] = static_cast<long>(boost::rational_cast<long long>(scaled));
        }
    pair.dual_periods = dp;

    Scenario dual;
    dual.bundle = make_fiber_context(s.bundle->base, dp);
    dual.t2 = Rational(1) / s.t2;
    dual.t2_is_exact = true;
    dual.t = 1.0 / s.t;
    dual.instantons = s.instantons;  // pulled back from the same base bundle
    dual.u_mode = s.u_mode;
    dual.h0 = s.h0;
    dual.u = s.u;  // both warp factors solve the same scalar equation
    dual.warp = s.warp;
    pair.dual = std::move(dual);

    for (int j = 0; j < 3; ++j) {
        pair.algebra.b[j] = RationalForm::from_periods(periods[j]);
        pair.algebra.b_dual[j] = RationalForm::from_periods(dp[j]);
    }
    return pair;
}

namespace {

// string-class representative in the proof normalization:
// H(t^2, b, sigma-leg) = -t^2 sum_j b_j ^ sigma_j - DIL + CS
CorrespondenceElement string_representative(const std::array<RationalForm, 3>& b,
                                            const Rational& t2, bool primed) {
    CorrespondenceElement h(3);
    for (int j = 1; j <= 3; ++j) {
        CorrespondenceElement term =
            wedge(CorrespondenceElement::base(b[j - 1]),
                  CorrespondenceElement::sigma(j, primed));
        term *= -t2;
        h += term;
    }
    h += CorrespondenceElement::symbol("dilaton", 3, Rational(-1));
    h += CorrespondenceElement::symbol("chern_simons", 3, Rational(1));
    return h;
}

}  // namespace

double verify_duality_identity(const DualPair& p) {
    if (p.original.u.empty() != p.dual.u.empty() ||
        (!p.original.u.empty() && (p.original.u - p.dual.u).max_abs() != 0.0))
        throw DomainError("verify_duality_identity: the two warp profiles must agree");

    const CorrespondenceElement h =
        string_representative(p.algebra.b, p.original.t2, false);
    const CorrespondenceElement h_dual =
        string_representative(p.algebra.b_dual, p.dual.t2, true);

    CorrespondenceElement lhs = h;
    lhs -= h_dual;

    CorrespondenceElement pairing(2);
    for (int j = 1; j <= 3; ++j)
        pairing += wedge(CorrespondenceElement::sigma(j, false),
                         CorrespondenceElement::sigma(j, true));
    CorrespondenceElement rhs = differential(p.algebra, pairing);
    rhs *= Rational(-1);

    CorrespondenceElement residual = lhs;
    residual -= rhs;
    return residual.is_zero() ? 0.0 : residual.max_abs();
}

namespace {

// values of a mixed fiber 2-form on (ker dq', ker dq) frame pairs
Eigen::Matrix3d fiber_pairing_matrix(const CorrespondenceElement& f) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const std::uint8_t mask =
                static_cast<std::uint8_t>((1u << j) | (1u << (3 + k)));
            const auto it = f.terms().find(mask);
            if (it != f.terms().end())
                m(j, k) = boost::rational_cast<double>(it->second[0]);
        }
    return m;
}

}  // namespace

Eigen::Matrix3d pairing_matrix(const DualPair&) {
    // F = -sum_j sigma_j ^ sigma'_j, fixed by the duality identity itself
    CorrespondenceElement f(2);
    for (int j = 1; j <= 3; ++j) {
        CorrespondenceElement t = wedge(CorrespondenceElement::sigma(j, false),
                                        CorrespondenceElement::sigma(j, true));
        t *= Rational(-1);
        f += t;
    }
    return fiber_pairing_matrix(f);
}

bool verify_pairing_nondegeneracy(const CorrespondenceElement& f) {
    if (f.degree() != 2) return false;
    return std::abs(fiber_pairing_matrix(f).determinant()) > 1e-12;
}

bool verify_pairing_nondegeneracy(const DualPair& p) {
    return std::abs(pairing_matrix(p).determinant()) > 1e-12;
}

}  // namespace g2strom
