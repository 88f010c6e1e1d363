#pragma once

#include <map>
#include <string>

#include "g2strom/ansatz.hpp"

// The correspondence-space check of the duality identity, over exact
// rationals: elements of the graded algebra generated by sigma_1..3,
// sigma'_1..3 over constant base forms in period coordinates, with the
// differential d sigma_j = beta_j, d sigma'_j = beta'_j. Shared pullback
// terms (Chern-Simons of the common base connection, the dilaton 3-form)
// enter as opaque formal symbols that must cancel identically.

namespace g2strom {

// Constant form on the base with rational coefficients. Each degree-k basis
// monomial dx_A is implicitly scaled by (2 pi)^{k/2} / prod_{a in A} L_a, so
// period data stays integral and wedge products stay rational.
class RationalForm {
public:
    RationalForm() = default;
    explicit RationalForm(int degree);
    static RationalForm from_periods(const std::array<long, 6>& p);
    static RationalForm scalar(const Rational& v);

    int degree() const { return deg_; }
    int size() const { return static_cast<int>(c_.size()); }
    const Rational& operator[](int i) const { return c_[i]; }
    Rational& operator[](int i) { return c_[i]; }

    RationalForm& operator+=(const RationalForm& o);
    RationalForm& operator*=(const Rational& s);
    bool is_zero() const;
    double max_abs() const;

    friend RationalForm wedge(const RationalForm& a, const RationalForm& b);

private:
    int deg_ = 0;
    std::vector<Rational> c_;
};

class CorrespondenceElement {
public:
    CorrespondenceElement() = default;
    explicit CorrespondenceElement(int degree) : deg_(degree) {}

    // fiber mask: bits 0..2 = sigma_1..3, bits 3..5 = sigma'_1..3
    static CorrespondenceElement sigma(int j, bool primed = false);
    static CorrespondenceElement base(const RationalForm& f);
    // opaque degree-`degree` generator named `name` (pulls back equally
    // through both legs of the correspondence)
    static CorrespondenceElement symbol(const std::string& name, int degree,
                                        const Rational& coeff);

    int degree() const { return deg_; }
    const std::map<std::uint8_t, RationalForm>& terms() const { return terms_; }
    const std::map<std::string, Rational>& symbols() const { return symbols_; }

    void add_term(std::uint8_t mask, const RationalForm& f);
    CorrespondenceElement& operator+=(const CorrespondenceElement& o);
    CorrespondenceElement& operator-=(const CorrespondenceElement& o);
    CorrespondenceElement& operator*=(const Rational& s);
    friend CorrespondenceElement operator+(CorrespondenceElement a,
                                           const CorrespondenceElement& b) {
        return a += b;
    }
    friend CorrespondenceElement operator-(CorrespondenceElement a,
                                           const CorrespondenceElement& b) {
        return a -= b;
    }

    bool is_zero() const;
    double max_abs() const;

private:
    int deg_ = 0;
    std::map<std::uint8_t, RationalForm> terms_;
    std::map<std::string, Rational> symbols_;
};

// Wedge of symbol-free elements.
CorrespondenceElement wedge(const CorrespondenceElement& a,
                            const CorrespondenceElement& b);

// Differential structure: the curvatures of the two legs.
struct CorrespondenceAlgebra {
    std::array<RationalForm, 3> b;       // d sigma_j
    std::array<RationalForm, 3> b_dual;  // d sigma'_j
};

// d with d(base) = 0 (constant coefficients) and the structure equations;
// rejects elements carrying formal symbols.
CorrespondenceElement differential(const CorrespondenceAlgebra& alg,
                                   const CorrespondenceElement& w);

struct DualPair {
    Scenario original;
    Scenario dual;
    std::array<std::array<long, 6>, 3> dual_periods;
    CorrespondenceAlgebra algebra;
};

// t' = 1/t, beta' = -t^2 beta, same warp profile. Gates exactly on the
// scaled-period integrality and on the original coupling window; throws
// NotDualizableError naming the first offending curvature form.
DualPair dualize(const Scenario& s);

// || q* H^ - q'* H^' + d sum_j sigma_j ^ sigma'_j || over exact rationals;
// identically zero for a valid dual pair. The Chern-Simons and dilaton
// symbols must cancel structurally for the result to be well defined.
double verify_duality_identity(const DualPair& p);

// The fiberwise pairing F = -sum_j sigma_j ^ sigma'_j evaluated on the two
// kernels: returns the 3x3 matrix (it is -I in the natural frames).
Eigen::Matrix3d pairing_matrix(const DualPair& p);
bool verify_pairing_nondegeneracy(const DualPair& p);
// Same check for an arbitrary candidate 2-form element.
bool verify_pairing_nondegeneracy(const CorrespondenceElement& f);

}  // namespace g2strom
