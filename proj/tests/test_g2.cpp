#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "g2strom/errors.hpp"
#include "g2strom/g2.hpp"
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

}  // namespace

TEST_CASE("projector ranks, idempotence, completeness at random points") {
    auto gen = oracles::rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const G2Point p(random_positive_3form(gen));
        const auto& p7 = p.proj2_matrix(7);
        const auto& p14 = p.proj2_matrix(14);
        CHECK(std::abs(p7.trace() - 7.0) < 1e-10);
        CHECK(std::abs(p14.trace() - 14.0) < 1e-10);
        CHECK((p7 * p7 - p7).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((p7 * p14).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((p7 + p14 - Eigen::MatrixXd::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-12);

        const auto& q1 = p.proj3_matrix(1);
        const auto& q7 = p.proj3_matrix(7);
        const auto& q27 = p.proj3_matrix(27);
        CHECK(std::abs(q1.trace() - 1.0) < 1e-10);
        CHECK(std::abs(q7.trace() - 7.0) < 1e-10);
        CHECK(std::abs(q27.trace() - 27.0) < 1e-10);
        for (const auto* a : {&q1, &q7, &q27})
            CHECK((*a * *a - *a).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((q1 * q7).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((q1 * q27).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((q7 * q27).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("pi_14 closed formula: 2/3 Id - 1/3 *(phi ^ .)") {
    auto gen = oracles::rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        const G2Point p(random_positive_3form(gen));
        Eigen::MatrixXd closed(21, 21);
        for (int j = 0; j < 21; ++j) {
            AF basis(7, 2);
            basis[j] = 1.0;
            const AF img = (2.0 / 3.0) * basis - (1.0 / 3.0) * p.star(wedge(p.phi(), basis));
            closed.col(j) = img.to_vector();
        }
        CHECK((closed - p.proj2_matrix(14)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("two-form projection examples") {
    const G2Point p(phi0());
    const AF b7 = p.star(wedge(AF::covector(7, 0), p.star_phi()));
    const auto s = project_two_form(p, b7);
    CHECK((s.part7 - b7).max_abs() < 1e-12);
    CHECK(s.part14.max_abs() < 1e-12);

    auto gen = oracles::rng(23);
    const AF b14 = p.project2(14, oracles::random_form(gen, 7, 2));
    // pure pi_14 forms are -1 eigenvectors of *(phi ^ .)
    CHECK((p.star(wedge(p.phi(), b14)) + b14).max_abs() < 1e-11);
    // and 2 is the eigenvalue on the 7-part
    CHECK((p.star(wedge(p.phi(), b7)) - 2.0 * b7).max_abs() < 1e-11);

    const auto z = project_two_form(p, AF(7, 2));
    CHECK(z.part7.max_abs() == 0.0);
    CHECK(z.part14.max_abs() == 0.0);
}

TEST_CASE("three-form projection examples and Pythagoras") {
    auto gen = oracles::rng(24);
    const G2Point p(random_positive_3form(gen));
    const auto sp = project_three_form(p, p.phi());
    CHECK((sp.part1 - p.phi()).max_abs() < 1e-11);
    CHECK(sp.part7.max_abs() < 1e-11);
    CHECK(sp.part27.max_abs() < 1e-11);

    const AF g7 = p.star(wedge(AF::covector(7, 0), p.phi()));
    const auto s7 = project_three_form(p, g7);
    CHECK((s7.part7 - g7).max_abs() < 1e-11);
    CHECK(s7.part1.max_abs() < 1e-11);
    CHECK(s7.part27.max_abs() < 1e-11);

    for (int trial = 0; trial < 50; ++trial) {
        const AF g = oracles::random_form(gen, 7, 3);
        const auto s = project_three_form(p, g);
        const double n2 = std::pow(p.norm(s.part1), 2) + std::pow(p.norm(s.part7), 2) +
                          std::pow(p.norm(s.part27), 2);
        CHECK(n2 == doctest::Approx(std::pow(p.norm(g), 2)).epsilon(1e-10));
        CHECK((s.part1 + s.part7 + s.part27 - g).max_abs() < 1e-11);
    }
}

TEST_CASE("J operator eigenstructure") {
    auto gen = oracles::rng(25);
    const G2Point p(random_positive_3form(gen));
    CHECK((j_operator(p, p.phi()) - (4.0 / 3.0) * p.phi()).max_abs() < 1e-11);

    const AF g7 = p.star(wedge(AF::covector(7, 0), p.phi()));
    CHECK((j_operator(p, g7) - g7).max_abs() < 1e-11);

    const AF g27 = p.project3(27, oracles::random_form(gen, 7, 3));
    CHECK((j_operator(p, g27) + g27).max_abs() < 1e-11);

    // J^2 = 16/9 pi_1 + pi_7 + pi_27, checked against brute matrix squaring
    const Eigen::MatrixXd j2 = p.j_matrix() * p.j_matrix();
    const Eigen::MatrixXd expect = (16.0 / 9.0) * p.proj3_matrix(1) + p.proj3_matrix(7) +
                                   p.proj3_matrix(27);
    CHECK((j2 - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("torsion components round trip") {
    auto gen = oracles::rng(26);
    const G2Point p(random_positive_3form(gen));
    const double tau1 = 0.7;
    const AF tau4 = oracles::random_form(gen, 7, 1, 0.5);
    const AF tau3 = p.project3(27, oracles::random_form(gen, 7, 3));
    const AF tau2 = p.project2(14, oracles::random_form(gen, 7, 2));

    AF dphi = tau1 * p.star_phi() + p.star(tau3);
    AF dstarphi = p.star(tau2);
    for (int i = 0; i < 7; ++i) {
        const AF e = AF::covector(7, i);
        dphi += 3.0 * tau4[i] * wedge(e, p.phi());
        dstarphi += 4.0 * tau4[i] * wedge(e, p.star_phi());
    }

    const TorsionComponents tc = torsion_components(p, dphi, dstarphi);
    CHECK(tc.tau1 == doctest::Approx(tau1).epsilon(1e-10));
    CHECK((tc.tau4 - tau4).max_abs() < 1e-10);
    CHECK((tc.tau3 - tau3).max_abs() < 1e-9);
    CHECK((tc.tau2 - tau2).max_abs() < 1e-9);
    CHECK(tc.residual < 1e-10);

    // purity of the extracted parts
    CHECK((p.project2(7, tc.tau2)).max_abs() < 1e-10);
    CHECK((p.project3(1, tc.tau3)).max_abs() < 1e-10);
    CHECK((p.project3(7, tc.tau3)).max_abs() < 1e-10);
}

TEST_CASE("torsion-free inputs give zero torsion exactly") {
    const G2Point p(phi0());
    const TorsionComponents tc = torsion_components(p, AF(7, 4), AF(7, 5));
    CHECK(tc.tau1 == 0.0);
    CHECK(tc.tau4.max_abs() < 1e-14);
    CHECK(tc.tau3.max_abs() < 1e-14);
    CHECK(tc.tau2.max_abs() < 1e-14);
}

TEST_CASE("inconsistent torsion data is rejected") {
    const G2Point p(phi0());
    // dphi = 0 forces tau4 = 0, but dstarphi sits in the tau4 slot only
    const AF bad = 4.0 * wedge(AF::covector(7, 0), p.star_phi());
    CHECK_THROWS_AS(torsion_components(p, AF(7, 4), bad), InconsistentTorsionError);
}

TEST_CASE("instanton defect separates the two-form types") {
    auto gen = oracles::rng(27);
    const G2Point p(random_positive_3form(gen));
    for (int trial = 0; trial < 20; ++trial) {
        const AF f14 = p.project2(14, oracles::random_form(gen, 7, 2));
        CHECK(instanton_defect(p, f14) < 1e-11);
        const AF a = oracles::random_form(gen, 7, 1);
        const AF f7 = p.star(wedge(a, p.star_phi()));
        if (a.max_abs() > 1e-3) CHECK(instanton_defect(p, f7) > 1e-6);
    }
    CHECK(instanton_defect(p, AF(7, 2)) == 0.0);
}

TEST_CASE("coassociative and associative planes of the fibered normal form") {
    const double t = 1.4, eu = std::exp(0.3);
    // phi = t^3 e^{012} - t e^u (e^0 w1 + e^1 w2 + e^2 w3) in 0-based labels
    AF f = std::pow(t, 3) * AF::monomial(7, {0, 1, 2});
    const AF w1 = AF::monomial(7, {3, 4}) + AF::monomial(7, {5, 6});
    const AF w2 = AF::monomial(7, {3, 5}) + AF::monomial(7, {6, 4});
    const AF w3 = AF::monomial(7, {3, 6}) + AF::monomial(7, {4, 5});
    f -= t * eu * wedge(AF::covector(7, 0), w1);
    f -= t * eu * wedge(AF::covector(7, 1), w2);
    f -= t * eu * wedge(AF::covector(7, 2), w3);
    const G2Point p(f);

    // span{sigma2, sigma3, x0, x1}: sigma1 and w2, w3 all restrict to zero
    Eigen::MatrixXd plane(7, 4);
    plane.setZero();
    plane(1, 0) = 1.0;  // fiber direction 2
    plane(2, 1) = 1.0;  // fiber direction 3
    plane(3, 2) = 1.0;  // base x0
    plane(4, 3) = 1.0;  // base x1 (w1-holomorphic plane)
    CHECK(coassociative_defect(p, plane) < 1e-13);

    // the associative fiber extended by a base direction is not coassociative
    Eigen::MatrixXd fiber_plus(7, 4);
    fiber_plus.setZero();
    fiber_plus(0, 0) = 1.0;
    fiber_plus(1, 1) = 1.0;
    fiber_plus(2, 2) = 1.0;
    fiber_plus(3, 3) = 1.0;
    CHECK(coassociative_defect(p, fiber_plus) ==
          doctest::Approx(std::pow(t, 3)).epsilon(1e-12));

    // phi restricted to the fiber 3-plane is the fiber volume t^3
    const AF on_fiber = contract(Eigen::VectorXd::Unit(7, 2),
                                 contract(Eigen::VectorXd::Unit(7, 1),
                                          contract(Eigen::VectorXd::Unit(7, 0), f)));
    CHECK(on_fiber[0] == doctest::Approx(std::pow(t, 3)).epsilon(1e-13));

    Eigen::MatrixXd degenerate = fiber_plus;
    degenerate.col(3) = degenerate.col(0);
    CHECK_THROWS_AS(coassociative_defect(p, degenerate), DomainError);
}
