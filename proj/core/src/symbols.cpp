#include "g2strom/symbols.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "g2strom/errors.hpp"

namespace g2strom {

namespace {

AlternatingForm covector_form(const Eigen::VectorXd& v) {
    AlternatingForm f(static_cast<int>(v.size()), 1);
    for (int i = 0; i < v.size(); ++i) f[i] = v[i];
    return f;
}

void require_nonzero(const Eigen::VectorXd& v) {
    if (v.size() != 7) throw DomainError("symbol: covector must live on R^7");
    if (v.norm() == 0.0) throw DomainError("symbol: covector must be nonzero");
}

}  // namespace

SymbolMap symbol_PM(const G2Point& p, const Eigen::VectorXd& v) {
    require_nonzero(v);
    SymbolMap s;
    s.domain = {"TM", {{"TM", 7}}};
    s.codomain = {"Lambda3+R", {{"Lambda3", 35}, {"R", 1}}};
    s.covector = v;
    s.matrix = Eigen::MatrixXd::Zero(36, 7);
    const AlternatingForm vf = covector_form(v);
    for (int j = 0; j < 7; ++j) {
        const AlternatingForm col = wedge(vf, contract(Eigen::VectorXd::Unit(7, j), p.phi()));
        s.matrix.block(0, j, 35, 1) = col.to_vector();
    }
    s.block_orders = Eigen::MatrixXi(2, 1);
    s.block_orders << 1, -1;
    return s;
}

SymbolMap symbol_LM(const G2Point& p, const Eigen::VectorXd& v) {
    require_nonzero(v);
    SymbolMap s;
    s.domain = {"Lambda3+R", {{"Lambda3", 35}, {"R", 1}}};
    s.codomain = {"Lambda7+Lambda5+Lambda4", {{"Lambda7", 1}, {"Lambda5", 21}, {"Lambda4", 35}}};
    s.covector = v;
    s.matrix = Eigen::MatrixXd::Zero(57, 36);
    const AlternatingForm vf = covector_form(v);

    auto fill_column = [&](int col, const AlternatingForm& phidot, double fdot) {
        const AlternatingForm row1 = wedge(wedge(vf, phidot), p.phi());
        const AlternatingForm row2 =
            wedge(vf, p.star(j_operator(p, phidot))) + 4.0 * fdot * wedge(vf, p.star_phi());
        const AlternatingForm row3 =
            -wedge(vf, p.star(wedge(vf, phidot + 4.0 * fdot * p.phi())));
        s.matrix(0, col) = row1[0];
        s.matrix.block(1, col, 21, 1) = row2.to_vector();
        s.matrix.block(22, col, 35, 1) = row3.to_vector();
    };

    for (int j = 0; j < 35; ++j) {
        AlternatingForm basis(7, 3);
        basis[j] = 1.0;
        fill_column(j, basis, 0.0);
    }
    fill_column(35, AlternatingForm(7, 3), 1.0);

    s.block_orders = Eigen::MatrixXi(3, 2);
    s.block_orders << 1, -1,
                      1,  1,
                      2,  2;
    return s;
}

std::pair<SymbolMap, SymbolMap> symbol_instanton_complex(const G2Point& p,
                                                         const Eigen::VectorXd& v,
                                                         int m) {
    require_nonzero(v);
    if (m < 1) throw DomainError("symbol_instanton_complex: adjoint dimension must be >= 1");
    const AlternatingForm vf = covector_form(v);

    SymbolMap s0;
    s0.domain = {"ad", {{"ad", m}}};
    s0.codomain = {"Lambda1(ad)+ad", {{"Lambda1(ad)", 7 * m}, {"ad", m}}};
    s0.covector = v;
    s0.matrix = Eigen::MatrixXd::Zero(8 * m, m);
    for (int a = 0; a < m; ++a) s0.matrix.block(7 * a, a, 7, 1) = v;
    s0.block_orders = Eigen::MatrixXi(2, 1);
    s0.block_orders << 1, -1;

    SymbolMap s1;
    s1.domain = s0.codomain;
    s1.codomain = {"Lambda6(ad)", {{"Lambda6(ad)", 7 * m}}};
    s1.covector = v;
    s1.matrix = Eigen::MatrixXd::Zero(7 * m, 8 * m);
    const AlternatingForm star_v = p.star(vf);
    for (int a = 0; a < m; ++a) {
        for (int i = 0; i < 7; ++i) {
            const AlternatingForm col =
                wedge(p.star_phi(), wedge(vf, AlternatingForm::covector(7, i)));
            s1.matrix.block(7 * a, 7 * a + i, 7, 1) = col.to_vector();
        }
        s1.matrix.block(7 * a, 7 * m + a, 7, 1) = star_v.to_vector();
    }
    s1.block_orders = Eigen::MatrixXi(1, 2);
    s1.block_orders << 1, 1;
    return {std::move(s0), std::move(s1)};
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > rel_tol * sv[0]) ++r;
    return r;
}

ExactnessReport check_exactness(const SymbolMap& s_in, const SymbolMap& s_out,
                                double tol) {
    if (s_in.codomain.dimension() != s_out.domain.dimension())
        throw DomainError("check_exactness: codomain/domain dimension mismatch");

    ExactnessReport rep;
    const Eigen::MatrixXd comp = s_out.matrix * s_in.matrix;
    const double scale =
        std::max(1.0, s_out.matrix.norm() * std::max(1.0, s_in.matrix.norm()));
    rep.composition_norm = comp.norm();
    if (rep.composition_norm > tol * scale)
        throw NotAComplexError("check_exactness: maps do not compose to zero",
                               rep.composition_norm);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd_in(s_in.matrix, Eigen::ComputeThinU);
    const auto& sv_in = svd_in.singularValues();
    int rank_in = 0;
    for (int i = 0; i < sv_in.size(); ++i)
        if (sv_in[0] > 0.0 && sv_in[i] > 1e-8 * sv_in[0]) ++rank_in;
    rep.rank_in = rank_in;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd_out(s_out.matrix, Eigen::ComputeFullV);
    const auto& sv_out = svd_out.singularValues();
    int rank_out = 0;
    for (int i = 0; i < sv_out.size(); ++i)
        if (sv_out[0] > 0.0 && sv_out[i] > 1e-8 * sv_out[0]) ++rank_out;
    const int n = s_out.domain.dimension();
    rep.dim_ker_out = n - rank_out;

    // containment defect ||(I - P_im) K||_F for an orthonormal kernel basis K
    if (rep.dim_ker_out > 0) {
        const Eigen::MatrixXd K = svd_out.matrixV().rightCols(rep.dim_ker_out);
        const Eigen::MatrixXd U = svd_in.matrixU().leftCols(rep.rank_in);
        rep.containment_defect = (K - U * (U.transpose() * K)).norm();
    }
    rep.exact = (rep.rank_in == rep.dim_ker_out) && (rep.containment_defect < tol);
    return rep;
}

BryantSymbolResiduals bryant_symbol_residuals(const G2Point& p,
                                              const Eigen::VectorXd& v,
                                              const AlternatingForm& beta7,
                                              const AlternatingForm& beta14) {
    require_nonzero(v);
    const AlternatingForm vf = covector_form(v);
    const Eigen::VectorXd V = p.sharp(v);

    BryantSymbolResiduals r;
    r.seven_part_annihilated =
        p.norm(wedge(vf, p.star(j_operator(p, wedge(vf, beta7)))));

    const AlternatingForm x = wedge(vf, p.star(j_operator(p, wedge(vf, beta14))));
    r.no_seven_leak = p.norm(p.project5(7, x));

    const AlternatingForm lhs = p.star(p.project5(14, x));
    const AlternatingForm icb = contract(V, beta14);
    const AlternatingForm rhs =
        -contract(V, wedge(vf, beta14)) +
        0.5 * contract(V, p.star(wedge(p.phi(), icb)));
    r.reduction_identity = p.norm(lhs - rhs);
    return r;
}

}  // namespace g2strom
