#pragma once

#include <Eigen/Core>

#include "g2strom/exterior.hpp"

// Pointwise G2 linear algebra at a positive 3-form: the metric it induces,
// type projections of 2- and 3-forms (extended to 4- and 5-forms through the
// Hodge star), the operator J, Fernandez-Gray torsion extraction, and the
// instanton / coassociative defect functionals.

namespace g2strom {

class G2Point {
public:
    // Builds the metric, *phi and all projector caches eagerly; the object
    // is immutable afterwards and safe to share across threads.
    explicit G2Point(AlternatingForm phi);

    const AlternatingForm& phi() const { return phi_; }
    const AlternatingForm& star_phi() const { return star_phi_; }
    const MetricData& metric() const { return metric_; }

    // Orthogonal projector matrices on coefficient space.
    const Eigen::MatrixXd& proj2_matrix(int type) const;  // type in {7, 14}, 21x21
    const Eigen::MatrixXd& proj3_matrix(int type) const;  // type in {1, 7, 27}, 35x35
    const Eigen::MatrixXd& j_matrix() const { return j_; }

    AlternatingForm project2(int type, const AlternatingForm& beta) const;
    AlternatingForm project3(int type, const AlternatingForm& gamma) const;
    // Type projection on 5-forms via Lambda^5_k = *(Lambda^2_k).
    AlternatingForm project5(int type, const AlternatingForm& xi) const;

    AlternatingForm star(const AlternatingForm& a) const { return hodge_star(a, metric_); }
    double norm(const AlternatingForm& a) const { return metric_norm(a, metric_); }
    Eigen::VectorXd sharp(const Eigen::VectorXd& covector) const;

private:
    AlternatingForm phi_;
    MetricData metric_;
    AlternatingForm star_phi_;
    Eigen::MatrixXd p2_7_, p2_14_;
    Eigen::MatrixXd p3_1_, p3_7_, p3_27_;
    Eigen::MatrixXd j_;
};

struct TwoFormSplit {
    AlternatingForm part7;
    AlternatingForm part14;
};

struct ThreeFormSplit {
    AlternatingForm part1;
    AlternatingForm part7;
    AlternatingForm part27;
};

TwoFormSplit project_two_form(const G2Point& p, const AlternatingForm& beta);
ThreeFormSplit project_three_form(const G2Point& p, const AlternatingForm& gamma);

// J = 4/3 pi_1 + pi_7 - pi_27 on 3-forms.
AlternatingForm j_operator(const G2Point& p, const AlternatingForm& xi);

struct TorsionComponents {
    double tau1 = 0.0;
    AlternatingForm tau2;  // degree 2, pi_14-pure
    AlternatingForm tau3;  // degree 3, pi_27-pure
    AlternatingForm tau4;  // degree 1
    double residual = 0.0;
};

// Solves d(phi) = tau1 *phi + 3 tau4 ^ phi + *tau3 and
// d(*phi) = 4 tau4 ^ *phi + *tau2 jointly in least squares, with the shared
// tau4 making the system an actual consistency constraint. Throws
// InconsistentTorsionError when the reconstruction residual exceeds tol.
TorsionComponents torsion_components(const G2Point& p, const AlternatingForm& dphi,
                                     const AlternatingForm& dstarphi,
                                     double tol = 1e-9);

// || F ^ *phi ||: zero exactly when F lies in Lambda^2_14.
double instanton_defect(const G2Point& p, const AlternatingForm& F);

// Norm of phi restricted to the span of four independent vectors (columns);
// zero exactly when the 4-plane is coassociative.
double coassociative_defect(const G2Point& p, const Eigen::MatrixXd& plane);

}  // namespace g2strom
