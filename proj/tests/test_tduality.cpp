#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "g2strom/errors.hpp"
#include "g2strom/tduality.hpp"

using namespace g2strom;
using CE = CorrespondenceElement;

namespace {

std::shared_ptr<const FiberContext> bundle_from_units(std::array<long, 3> units,
                                                      int n = 8) {
    auto torus = std::make_shared<const Torus4>(std::array<double, 4>{1, 1, 1, 1}, n);
    return make_fiber_context(torus, {{{units[0], -units[0], 0, 0, 0, 0},
                                       {0, 0, units[1], -units[1], 0, 0},
                                       {0, 0, 0, 0, units[2], -units[2]}}});
}

CorrespondenceAlgebra algebra_from_periods(
    const std::array<std::array<long, 6>, 3>& p,
    const std::array<std::array<long, 6>, 3>& pd) {
    CorrespondenceAlgebra alg;
    for (int j = 0; j < 3; ++j) {
        alg.b[j] = RationalForm::from_periods(p[j]);
        alg.b_dual[j] = RationalForm::from_periods(pd[j]);
    }
    return alg;
}

}  // namespace

TEST_CASE("correspondence algebra: d^2 = 0 on random elements") {
    std::mt19937_64 gen(81);
    const auto alg = algebra_from_periods({{{1, -1, 2, -2, 0, 0},
                                            {0, 0, 1, -1, 0, 0},
                                            {3, -3, 0, 0, 1, -1}}},
                                          {{{-2, 2, 0, 0, 1, -1},
                                            {1, -1, 1, -1, 0, 0},
                                            {0, 0, 0, 0, -1, 1}}});
    for (int trial = 0; trial < 30; ++trial) {
        const int deg = 1 + static_cast<int>(gen() % 3);
        CE w(deg);
        for (std::uint8_t mask = 0; mask <= 0b111111; ++mask) {
            const int p = std::popcount(static_cast<unsigned>(mask));
            const int q = deg - p;
            if (q < 0 || q > 2) continue;
            if (gen() % 3 != 0) continue;
            RationalForm f(q);
            for (int i = 0; i < f.size(); ++i)
                f[i] = Rational(static_cast<long long>(gen() % 7) - 3);
            w.add_term(mask, f);
        }
        CHECK(differential(alg, differential(alg, w)).is_zero());
    }
}

TEST_CASE("base generators pull back identically through both legs") {
    // q* and q'* are injections of generator sets: a base form enters the
    // algebra once, so its images under the two pullbacks subtract to zero
    const RationalForm f = RationalForm::from_periods({5, -5, 1, -1, 2, -2});
    CE diff = CE::base(f);
    diff -= CE::base(f);
    CHECK(diff.is_zero());
}

TEST_CASE("dualize: data map, involution, gates") {
    auto bundle = bundle_from_units({1, 2, 3}, 8);
    const Scenario s = balanced_scenario(bundle, Rational(2), Rational(0));
    const DualPair pair = dualize(s);

    CHECK(pair.dual.t2 == Rational(1, 2));
    // beta' = -t^2 beta: unit periods scale to -2 units
    CHECK(pair.dual_periods[0][0] == -2);
    CHECK(pair.dual_periods[0][1] == 2);
    CHECK(pair.dual_periods[1][2] == -4);
    CHECK(pair.dual_periods[2][4] == -6);

    // dual of the dual restores (t, beta)
    const DualPair back = dualize(pair.dual);
    CHECK(back.dual.t2 == Rational(2));
    CHECK(back.dual_periods == bundle->beta_periods);

    // t = 1: the dual is (t = 1, -beta)
    const Scenario s1 = balanced_scenario(bundle_from_units({1, 1, 1}), Rational(1),
                                          Rational(0));
    const DualPair p1 = dualize(s1);
    CHECK(p1.dual.t2 == Rational(1));
    CHECK(p1.dual_periods[0][0] == -1);

    // non-integral scaled periods are rejected with the offending index
    const Scenario sbad = balanced_scenario(bundle_from_units({1, 1, 1}), Rational(1, 3),
                                            Rational(0));
    try {
        dualize(sbad);
        FAIL("expected NotDualizableError");
    } catch (const NotDualizableError& e) {
        CHECK(e.beta_index == 1);
    }
}

TEST_CASE("the duality identity is exactly zero for dualizable scenarios") {
    int checked = 0;
    for (const auto& [units, t2] :
         std::vector<std::pair<std::array<long, 3>, Rational>>{
             {{1, 1, 1}, Rational(1)},
             {{1, 1, 1}, Rational(2)},
             {{1, 2, 3}, Rational(1)},
             {{1, 2, 3}, Rational(3)},
             {{2, 2, 2}, Rational(1, 2)},
             {{2, 4, 6}, Rational(5, 2)},
             {{1, 0, 0}, Rational(4)},
             {{3, 1, 2}, Rational(2)},
             {{5, 5, 5}, Rational(1)},
             {{2, 0, 2}, Rational(7, 2)}}) {
        auto bundle = bundle_from_units(units);
        const Scenario s = balanced_scenario(bundle, t2, Rational(0));
        const DualPair pair = dualize(s);
        CHECK(verify_duality_identity(pair) == 0.0);
        ++checked;
    }
    CHECK(checked == 10);
}

TEST_CASE("both sides of a balanced dual pair solve the system") {
    auto bundle = bundle_from_units({1, 1, 1}, 16);
    const Scenario s = balanced_scenario(bundle, Rational(2), Rational(0));
    const DualPair pair = dualize(s);
    CHECK(verify_solution(pair.original).all_pass());
    CHECK(verify_solution(pair.dual).all_pass());
    CHECK(verify_solution(pair.dual).torsion_norm > 0.1);
}

TEST_CASE("zero curvature gives a trivial identity") {
    auto bundle = bundle_from_units({0, 0, 0});
    const Scenario s = balanced_scenario(bundle, Rational(1), Rational(-2));
    const DualPair pair = dualize(s);
    CHECK(verify_duality_identity(pair) == 0.0);

    // both sides vanish individually: the representatives reduce to the
    // shared symbols, which cancel, and d of the pairing has no curvature
    CorrespondenceElement p2(2);
    for (int j = 1; j <= 3; ++j)
        p2 += wedge(CE::sigma(j, false), CE::sigma(j, true));
    CHECK(differential(pair.algebra, p2).is_zero());
}

TEST_CASE("fiber pairing: -I, permutations, degenerate candidates") {
    auto bundle = bundle_from_units({1, 1, 1});
    const DualPair pair = dualize(balanced_scenario(bundle, Rational(1), Rational(0)));
    const Eigen::Matrix3d m = pairing_matrix(pair);
    CHECK((m + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(verify_pairing_nondegeneracy(pair));

    // permuted primed labels: still nondegenerate (determinant +-1)
    CE permuted(2);
    permuted += wedge(CE::sigma(1, false), CE::sigma(2, true));
    permuted += wedge(CE::sigma(2, false), CE::sigma(3, true));
    permuted += wedge(CE::sigma(3, false), CE::sigma(1, true));
    CHECK(verify_pairing_nondegeneracy(permuted));

    // the zero form is degenerate
    CHECK(!verify_pairing_nondegeneracy(CE(2)));
    // a rank-deficient candidate too
    CE partial(2);
    partial += wedge(CE::sigma(1, false), CE::sigma(1, true));
    CHECK(!verify_pairing_nondegeneracy(partial));
}

TEST_CASE("mismatched warp profiles are rejected") {
    auto bundle = bundle_from_units({1, 1, 1});
    DualPair pair = dualize(balanced_scenario(bundle, Rational(1), Rational(0)));
    BaseField other(bundle->base, 0);
    other.comp(0).assign(bundle->base->points(), 0.25);
    pair.dual.u = other;
    CHECK_THROWS_AS(verify_duality_identity(pair), DomainError);
}
