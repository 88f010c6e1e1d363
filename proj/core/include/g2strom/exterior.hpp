#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "g2strom/multi_index.hpp"

// Pointwise exterior algebra over an oriented inner-product space of
// dimension n <= 8. Coefficients are stored densely on the increasing
// multi-indices of mi::basis(n, k), lex order. All operations are pure.

namespace g2strom {

class AlternatingForm {
public:
    AlternatingForm() = default;
    AlternatingForm(int dim, int degree);

    // Scalar multiple of a basis monomial e^{i0} ^ e^{i1} ^ ... (0-based
    // indices, any order; repeated indices give the zero form).
    static AlternatingForm monomial(int dim, std::initializer_list<int> idx,
                                    double value = 1.0);
    static AlternatingForm covector(int dim, int i) { return monomial(dim, {i}); }
    static AlternatingForm scalar(int dim, double value);

    int dimension() const { return dim_; }
    int degree() const { return deg_; }
    int size() const { return static_cast<int>(c_.size()); }

    double operator[](int j) const { return c_[j]; }
    double& operator[](int j) { return c_[j]; }
    const std::vector<double>& coefficients() const { return c_; }

    double coefficient(std::uint8_t mask) const;
    void set_coefficient(std::uint8_t mask, double value);

    AlternatingForm& operator+=(const AlternatingForm& o);
    AlternatingForm& operator-=(const AlternatingForm& o);
    AlternatingForm& operator*=(double s);
    friend AlternatingForm operator+(AlternatingForm a, const AlternatingForm& b) { return a += b; }
    friend AlternatingForm operator-(AlternatingForm a, const AlternatingForm& b) { return a -= b; }
    friend AlternatingForm operator*(double s, AlternatingForm a) { return a *= s; }
    friend AlternatingForm operator*(AlternatingForm a, double s) { return a *= s; }
    AlternatingForm operator-() const;

    // Plain Euclidean norm of the coefficient array (metric-free).
    double coeff_norm() const;
    double max_abs() const;

    Eigen::VectorXd to_vector() const;
    static AlternatingForm from_vector(int dim, int degree, const Eigen::VectorXd& v);

private:
    int dim_ = 0;
    int deg_ = 0;
    std::vector<double> c_;
};

struct MetricData {
    Eigen::MatrixXd gram;         // inner product on tangent vectors
    int orientation = 1;          // sign of the chosen volume form
    AlternatingForm volume_form;  // orientation * sqrt(det gram) * e^{0...n-1}
};

// Validates symmetry and positive-definiteness, fills in the volume form.
MetricData make_metric(const Eigen::MatrixXd& gram, int orientation = 1);
MetricData euclidean_metric(int dim);

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b);
AlternatingForm contract(const Eigen::VectorXd& v, const AlternatingForm& a);
AlternatingForm hodge_star(const AlternatingForm& a, const MetricData& m);

// Gram matrix of the Lambda^k coefficient basis under m (induced inner
// product on k-forms; k x k minors of the inverse metric).
Eigen::MatrixXd form_gram(int dim, int degree, const MetricData& m);
double inner(const AlternatingForm& a, const AlternatingForm& b, const MetricData& m);
double metric_norm(const AlternatingForm& a, const MetricData& m);

// Recovers the Riemannian metric stabilized by a positive 3-form in
// dimension 7: B(u,v) vol_coord = (i_u phi ^ i_v phi ^ phi)/6, then
// g = det(B)^{-1/9} B. Throws NotPositiveError when B fails to be
// positive definite (the 3-form is not in the positive orbit).
MetricData metric_from_positive3form(const AlternatingForm& phi);

// The flat G2 3-form on R^7 in its coframe normal form.
AlternatingForm phi0();

}  // namespace g2strom
