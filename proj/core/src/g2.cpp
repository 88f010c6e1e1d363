#include "g2strom/g2.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "g2strom/errors.hpp"

namespace g2strom {

namespace {

// G-orthogonal projector onto the column span of B: P = B (B^T G B)^-1 B^T G.
Eigen::MatrixXd span_projector(const Eigen::MatrixXd& B, const Eigen::MatrixXd& G) {
    const Eigen::MatrixXd BtG = B.transpose() * G;
    return B * (BtG * B).ldlt().solve(BtG);
}

}  // namespace

G2Point::G2Point(AlternatingForm phi) : phi_(std::move(phi)) {
    if (phi_.dimension() != 7 || phi_.degree() != 3)
        throw DomainError("G2Point: expects a 3-form on R^7");
    metric_ = metric_from_positive3form(phi_);
    star_phi_ = hodge_star(phi_, metric_);

    const Eigen::MatrixXd G2m = form_gram(7, 2, metric_);
    const Eigen::MatrixXd G3m = form_gram(7, 3, metric_);

    // Lambda^2_7 = { *(alpha ^ *phi) : alpha in Lambda^1 }
    Eigen::MatrixXd gen2(21, 7);
    // Lambda^3_7 = { *(alpha ^ phi) : alpha in Lambda^1 }, with Lambda^3_1 = R phi
    Eigen::MatrixXd gen3(35, 7);
    for (int i = 0; i < 7; ++i) {
        const AlternatingForm a = AlternatingForm::covector(7, i);
        gen2.col(i) = hodge_star(wedge(a, star_phi_), metric_).to_vector();
        gen3.col(i) = hodge_star(wedge(a, phi_), metric_).to_vector();
    }
    p2_7_ = span_projector(gen2, G2m);
    p2_14_ = Eigen::MatrixXd::Identity(21, 21) - p2_7_;

    const Eigen::VectorXd pv = phi_.to_vector();
    p3_1_ = pv * (pv.transpose() * G3m) / (pv.dot(G3m * pv));
    p3_7_ = span_projector(gen3, G3m);
    p3_27_ = Eigen::MatrixXd::Identity(35, 35) - p3_1_ - p3_7_;

    j_ = (4.0 / 3.0) * p3_1_ + p3_7_ - p3_27_;
}

const Eigen::MatrixXd& G2Point::proj2_matrix(int type) const {
    switch (type) {
        case 7: return p2_7_;
        case 14: return p2_14_;
        default: throw DomainError("proj2_matrix: type must be 7 or 14");
    }
}

const Eigen::MatrixXd& G2Point::proj3_matrix(int type) const {
    switch (type) {
        case 1: return p3_1_;
        case 7: return p3_7_;
        case 27: return p3_27_;
        default: throw DomainError("proj3_matrix: type must be 1, 7 or 27");
    }
}

AlternatingForm G2Point::project2(int type, const AlternatingForm& beta) const {
    if (beta.dimension() != 7 || beta.degree() != 2)
        throw DomainError("project2: expects a 2-form on R^7");
    return AlternatingForm::from_vector(7, 2, proj2_matrix(type) * beta.to_vector());
}

AlternatingForm G2Point::project3(int type, const AlternatingForm& gamma) const {
    if (gamma.dimension() != 7 || gamma.degree() != 3)
        throw DomainError("project3: expects a 3-form on R^7");
    return AlternatingForm::from_vector(7, 3, proj3_matrix(type) * gamma.to_vector());
}

AlternatingForm G2Point::project5(int type, const AlternatingForm& xi) const {
    if (xi.dimension() != 7 || xi.degree() != 5)
        throw DomainError("project5: expects a 5-form on R^7");
    return star(project2(type, star(xi)));
}

Eigen::VectorXd G2Point::sharp(const Eigen::VectorXd& covector) const {
    return metric_.gram.ldlt().solve(covector);
}

TwoFormSplit project_two_form(const G2Point& p, const AlternatingForm& beta) {
    return {p.project2(7, beta), p.project2(14, beta)};
}

ThreeFormSplit project_three_form(const G2Point& p, const AlternatingForm& gamma) {
    return {p.project3(1, gamma), p.project3(7, gamma), p.project3(27, gamma)};
}

AlternatingForm j_operator(const G2Point& p, const AlternatingForm& xi) {
    if (xi.dimension() != 7 || xi.degree() != 3)
        throw DomainError("j_operator: expects a 3-form on R^7");
    return AlternatingForm::from_vector(7, 3, p.j_matrix() * xi.to_vector());
}

namespace {

// Spanning columns of a projector's range, via rank-revealing QR.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& P, int rank) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(P);
    const Eigen::MatrixXd Q = qr.householderQ();
    return Q.leftCols(rank);
}

}  // namespace

TorsionComponents torsion_components(const G2Point& p, const AlternatingForm& dphi,
                                     const AlternatingForm& dstarphi, double tol) {
    if (dphi.dimension() != 7 || dphi.degree() != 4)
        throw DomainError("torsion_components: dphi must be a 4-form");
    if (dstarphi.dimension() != 7 || dstarphi.degree() != 5)
        throw DomainError("torsion_components: dstarphi must be a 5-form");

    // Unknown layout: [ tau1 | tau4 (7) | tau3 in Lambda^3_27 (27) | tau2 in
    // Lambda^2_14 (14) ].  Rows: Lambda^4 (35) then Lambda^5 (21).
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(56, 49);
    Eigen::VectorXd rhs(56);
    rhs.head(35) = dphi.to_vector();
    rhs.tail(21) = dstarphi.to_vector();

    A.block(0, 0, 35, 1) = p.star_phi().to_vector();
    for (int i = 0; i < 7; ++i) {
        const AlternatingForm a = AlternatingForm::covector(7, i);
        A.block(0, 1 + i, 35, 1) = (3.0 * wedge(a, p.phi())).to_vector();
        A.block(35, 1 + i, 21, 1) = (4.0 * wedge(a, p.star_phi())).to_vector();
    }
    const Eigen::MatrixXd b27 = range_basis(p.proj3_matrix(27), 27);
    for (int j = 0; j < 27; ++j) {
        const auto col = AlternatingForm::from_vector(7, 3, b27.col(j));
        A.block(0, 8 + j, 35, 1) = p.star(p.project3(27, col)).to_vector();
    }
    const Eigen::MatrixXd b14 = range_basis(p.proj2_matrix(14), 14);
    for (int j = 0; j < 14; ++j) {
        const auto col = AlternatingForm::from_vector(7, 2, b14.col(j));
        A.block(35, 35 + j, 21, 1) = p.star(p.project2(14, col)).to_vector();
    }

    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(rhs);
    const double residual = (A * x - rhs).norm();
    if (residual > tol * std::max(1.0, rhs.norm()))
        throw InconsistentTorsionError(
            "torsion_components: inputs are not the exterior derivatives of any "
            "G2-structure data at this point",
            residual);

    TorsionComponents tc;
    tc.tau1 = x[0];
    tc.tau4 = AlternatingForm(7, 1);
    for (int i = 0; i < 7; ++i) tc.tau4[i] = x[1 + i];
    Eigen::VectorXd t3 = Eigen::VectorXd::Zero(35);
    for (int j = 0; j < 27; ++j) t3 += x[8 + j] * (p.proj3_matrix(27) * b27.col(j));
    tc.tau3 = AlternatingForm::from_vector(7, 3, t3);
    Eigen::VectorXd t2 = Eigen::VectorXd::Zero(21);
    for (int j = 0; j < 14; ++j) t2 += x[35 + j] * (p.proj2_matrix(14) * b14.col(j));
    tc.tau2 = AlternatingForm::from_vector(7, 2, t2);
    tc.residual = residual;
    return tc;
}

double instanton_defect(const G2Point& p, const AlternatingForm& F) {
    if (F.dimension() != 7 || F.degree() != 2)
        throw DomainError("instanton_defect: expects a 2-form on R^7");
    return p.norm(wedge(F, p.star_phi()));
}

double coassociative_defect(const G2Point& p, const Eigen::MatrixXd& plane) {
    if (plane.rows() != 7 || plane.cols() != 4)
        throw DomainError("coassociative_defect: expects 4 vectors in R^7");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(plane);
    if (svd.singularValues()[3] < 1e-10 * svd.singularValues()[0])
        throw DomainError("coassociative_defect: vectors are linearly dependent");
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c) {
                const AlternatingForm v = contract(
                    plane.col(c),
                    contract(plane.col(b), contract(plane.col(a), p.phi())));
                s += v[0] * v[0];
            }
    return std::sqrt(s);
}

}  // namespace g2strom
