#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "g2strom/errors.hpp"
#include "g2strom/symbols.hpp"
#include "oracles.hpp"

using namespace g2strom;
using AF = AlternatingForm;

namespace {

AF random_positive_3form(std::mt19937_64& gen, double spread = 0.1) {
    for (;;) {
        const AF cand = phi0() + oracles::random_form(gen, 7, 3, spread);
        try {
            metric_from_positive3form(cand);
            return cand;
        } catch (const NotPositiveError&) {
        }
    }
}

// independent rank oracle: Gaussian elimination with partial pivoting
int brute_rank(Eigen::MatrixXd m, double tol = 1e-8) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int piv = rank;
        for (int r = rank + 1; r < m.rows(); ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (std::abs(m(piv, col)) < tol * scale) continue;
        m.row(piv).swap(m.row(rank));
        for (int r = rank + 1; r < m.rows(); ++r)
            m.row(r) -= (m(r, col) / m(rank, col)) * m.row(rank);
        ++rank;
    }
    return rank;
}

Eigen::VectorXd random_unit_covector(std::mt19937_64& gen) {
    const Eigen::VectorXd v = oracles::random_vector(gen, 7);
    return v / v.norm();
}

}  // namespace

TEST_CASE("diffeomorphism symbol columns and scaling") {
    const G2Point p(phi0());
    const Eigen::VectorXd v = Eigen::VectorXd::Unit(7, 0);
    const SymbolMap s = symbol_PM(p, v);
    CHECK(s.matrix.rows() == 36);
    CHECK(s.matrix.cols() == 7);
    // column for V = e1 is e^1 ^ (e^{23} - e^{45} - e^{67})
    const AF expect = wedge(AF::covector(7, 0), AF::monomial(7, {1, 2}) -
                                                    AF::monomial(7, {3, 4}) -
                                                    AF::monomial(7, {5, 6}));
    CHECK((s.matrix.block(0, 0, 35, 1) - expect.to_vector()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(s.matrix.row(35).cwiseAbs().maxCoeff() == 0.0);  // the R slot is zero

    const SymbolMap s2 = symbol_PM(p, 2.0 * v);
    CHECK((s2.matrix - 2.0 * s.matrix).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(symbol_PM(p, Eigen::VectorXd::Zero(7)), DomainError);
}

TEST_CASE("rank of the diffeomorphism symbol matches the elimination oracle") {
    auto gen = oracles::rng(31);
    const G2Point p(random_positive_3form(gen));
    for (int trial = 0; trial < 100; ++trial) {
        const SymbolMap s = symbol_PM(p, random_unit_covector(gen));
        CHECK(numerical_rank(s.matrix) == brute_rank(s.matrix));
        CHECK(numerical_rank(s.matrix) == 7);
    }
}

TEST_CASE("linearization symbol: structural rows") {
    auto gen = oracles::rng(32);
    const G2Point p(random_positive_3form(gen));
    const Eigen::VectorXd v = random_unit_covector(gen);
    const SymbolMap L = symbol_LM(p, v);
    CHECK(L.matrix.rows() == 57);
    CHECK(L.matrix.cols() == 36);

    // (phidot, fdot) = (-4 phi, 1) kills the second-order row but not the rest
    Eigen::VectorXd x(36);
    x.head(35) = -4.0 * p.phi().to_vector();
    x[35] = 1.0;
    const Eigen::VectorXd y = L.matrix * x;
    CHECK(y.tail(35).cwiseAbs().maxCoeff() < 1e-12);
    // rows 1-2 give (0, -16/3 v^*phi + 4 v^*phi) = (0, -4/3 v^*phi)
    const AF vf = AF::from_vector(7, 1, v);
    const AF expect_row2 = (-4.0 / 3.0) * wedge(vf, p.star_phi());
    CHECK((y.segment(1, 21) - expect_row2.to_vector()).cwiseAbs().maxCoeff() < 1e-11);
    CHECK(std::abs(y[0]) < 1e-12);  // v ^ phi ^ phi = 0
    CHECK(y.segment(1, 21).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("Douglis-Nirenberg homogeneity of the symbol blocks") {
    auto gen = oracles::rng(33);
    const G2Point p(random_positive_3form(gen));
    const Eigen::VectorXd v = random_unit_covector(gen);
    for (double lambda : {2.0, -1.0, 0.5}) {
        auto check_blocks = [&](const SymbolMap& a, const SymbolMap& b) {
            for (int i = 0; i < a.block_orders.rows(); ++i)
                for (int j = 0; j < a.block_orders.cols(); ++j) {
                    const int ro = a.codomain.offset(i);
                    const int co = a.domain.offset(j);
                    const int rn = a.codomain.summands[i].second;
                    const int cn = a.domain.summands[j].second;
                    const auto blk_a = a.matrix.block(ro, co, rn, cn);
                    const auto blk_b = b.matrix.block(ro, co, rn, cn);
                    const int order = a.block_orders(i, j);
                    if (order < 0) {
                        CHECK(blk_a.cwiseAbs().maxCoeff() == 0.0);
                        CHECK(blk_b.cwiseAbs().maxCoeff() == 0.0);
                    } else {
                        const double f = std::pow(lambda, order);
                        CHECK((blk_b - f * blk_a).cwiseAbs().maxCoeff() < 1e-10);
                    }
                }
        };
        check_blocks(symbol_PM(p, v), symbol_PM(p, lambda * v));
        check_blocks(symbol_LM(p, v), symbol_LM(p, lambda * v));
        const auto [s0a, s1a] = symbol_instanton_complex(p, v, 2);
        const auto [s0b, s1b] = symbol_instanton_complex(p, lambda * v, 2);
        check_blocks(s0a, s0b);
        check_blocks(s1a, s1b);
    }
}

TEST_CASE("manifold deformation complex is exact at the middle") {
    auto gen = oracles::rng(34);
    for (int pt = 0; pt < 3; ++pt) {
        const G2Point p(random_positive_3form(gen));
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::VectorXd v = random_unit_covector(gen);
            const ExactnessReport rep = check_exactness(symbol_PM(p, v), symbol_LM(p, v));
            CHECK(rep.exact);
            CHECK(rep.rank_in == 7);
            CHECK(rep.dim_ker_out == 7);
            CHECK(rep.containment_defect < 1e-8);
        }
    }
}

TEST_CASE("image of the diffeomorphism symbol is annihilated column by column") {
    auto gen = oracles::rng(35);
    const G2Point p(random_positive_3form(gen));
    const Eigen::VectorXd v = random_unit_covector(gen);
    const SymbolMap P = symbol_PM(p, v);
    const SymbolMap L = symbol_LM(p, v);
    CHECK((L.matrix * P.matrix).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("instanton complex: composition, exactness, block scaling") {
    auto gen = oracles::rng(36);
    const G2Point p(random_positive_3form(gen));
    for (int m : {1, 2, 3}) {
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::VectorXd v = random_unit_covector(gen);
            const auto [s0, s1] = symbol_instanton_complex(p, v, m);
            CHECK((s1.matrix * s0.matrix).cwiseAbs().maxCoeff() < 1e-12);
            const ExactnessReport rep = check_exactness(s0, s1);
            CHECK(rep.exact);
            CHECK(rep.rank_in == m);
            CHECK(rep.dim_ker_out == m);
        }
        const Eigen::VectorXd v = random_unit_covector(gen);
        const auto [s0, s1] = symbol_instanton_complex(p, v, m);
        const auto [t0, t1] = symbol_instanton_complex(p, v, 1);
        // everything is m block-diagonal copies of the m = 1 maps
        for (int a = 0; a < m; ++a) {
            CHECK((s0.matrix.block(7 * a, a, 7, 1) - t0.matrix.block(0, 0, 7, 1)).norm() == 0.0);
            CHECK((s1.matrix.block(7 * a, 7 * a, 7, 7) - t1.matrix.block(0, 0, 7, 7)).norm() == 0.0);
            CHECK((s1.matrix.block(7 * a, 7 * m + a, 7, 1) - t1.matrix.block(0, 7, 7, 1)).norm() == 0.0);
        }
    }
    CHECK_THROWS_AS(symbol_instanton_complex(p, Eigen::VectorXd::Unit(7, 0), 0), DomainError);
}

TEST_CASE("check_exactness edge and error cases") {
    const G2Point p(phi0());
    const Eigen::VectorXd v = Eigen::VectorXd::Unit(7, 1);
    // zero in, injective out: trivially exact
    SymbolMap zin;
    zin.domain = {"0-src", {{"x", 3}}};
    zin.codomain = {"mid", {{"m", 4}}};
    zin.matrix = Eigen::MatrixXd::Zero(4, 3);
    zin.covector = v;
    SymbolMap inj;
    inj.domain = zin.codomain;
    inj.codomain = {"out", {{"y", 5}}};
    inj.matrix = Eigen::MatrixXd::Zero(5, 4);
    inj.matrix.block(0, 0, 4, 4) = Eigen::MatrixXd::Identity(4, 4);
    inj.covector = v;
    const ExactnessReport rep = check_exactness(zin, inj);
    CHECK(rep.exact);
    CHECK(rep.rank_in == 0);
    CHECK(rep.dim_ker_out == 0);

    // maps that do not compose to zero are rejected
    SymbolMap notc = inj;
    notc.domain = zin.codomain;
    SymbolMap full = zin;
    full.matrix = Eigen::MatrixXd::Ones(4, 3);
    CHECK_THROWS_AS(check_exactness(full, notc), NotAComplexError);

    // shape mismatch
    SymbolMap bad = inj;
    bad.domain = {"mid", {{"m", 7}}};
    bad.matrix = Eigen::MatrixXd::Zero(5, 7);
    CHECK_THROWS_AS(check_exactness(zin, bad), DomainError);
}

TEST_CASE("symbol identities on type-pure two-forms") {
    auto gen = oracles::rng(37);
    for (int pt = 0; pt < 3; ++pt) {
        const G2Point p(random_positive_3form(gen));
        for (int trial = 0; trial < 30; ++trial) {
            const Eigen::VectorXd v = oracles::random_vector(gen, 7);
            const AF b7 = p.project2(7, oracles::random_form(gen, 7, 2));
            const AF b14 = p.project2(14, oracles::random_form(gen, 7, 2));
            const auto r = bryant_symbol_residuals(p, v, b7, b14);
            CHECK(r.seven_part_annihilated < 1e-11);
            CHECK(r.no_seven_leak < 1e-11);
            CHECK(r.reduction_identity < 1e-10);
        }
    }
}

TEST_CASE("14-type forms annihilated by i_V reduce to -|v|^2 beta") {
    auto gen = oracles::rng(38);
    const G2Point p(random_positive_3form(gen));
    const Eigen::VectorXd v = oracles::random_vector(gen, 7);
    const Eigen::VectorXd V = p.sharp(v);

    // nullspace of [pi_7; i_V] inside Lambda^2: the stabilizer algebra of V
    Eigen::MatrixXd C(28, 21);
    C.block(0, 0, 21, 21) = p.proj2_matrix(7);
    for (int j = 0; j < 21; ++j) {
        AF basis(7, 2);
        basis[j] = 1.0;
        C.block(21, j, 7, 1) = contract(V, basis).to_vector();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
    const Eigen::VectorXd null = svd.matrixV().rightCols(1);
    CHECK((C * null).norm() < 1e-10);

    const AF b14 = AF::from_vector(7, 2, null);
    CHECK(contract(V, b14).max_abs() < 1e-10);
    CHECK(p.project2(7, b14).max_abs() < 1e-10);

    // with i_V beta = 0 the correction terms vanish and the 14-block
    // reduction collapses to -|v|^2 beta (nonzero: the kernel needs both)
    const AF vf = AF::from_vector(7, 1, v);
    const AF x = wedge(vf, p.star(j_operator(p, wedge(vf, b14))));
    const AF lhs = p.star(p.project5(14, x));
    const double v2 = v.dot(V);
    CHECK((lhs + v2 * b14).max_abs() < 1e-10);
    CHECK(lhs.max_abs() > 1e-3);
}

TEST_CASE("kernel dimensions are constant over covectors") {
    auto gen = oracles::rng(39);
    const G2Point p(random_positive_3form(gen));
    int ker_dim = -1;
    for (int trial = 0; trial < 100; ++trial) {
        const SymbolMap L = symbol_LM(p, random_unit_covector(gen));
        const int k = 36 - numerical_rank(L.matrix);
        if (ker_dim < 0) ker_dim = k;
        CHECK(k == ker_dim);
    }
    CHECK(ker_dim == 7);
}
