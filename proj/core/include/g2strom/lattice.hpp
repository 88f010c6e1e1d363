#pragma once

#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

// Integer quadratic-form arithmetic for the topological constraints: the
// even unimodular intersection lattices of the K3 surface and the 4-torus,
// quadratic values of classes, and the coupling/rank/integrality window.

namespace g2strom {

using Rational = boost::rational<long long>;

class IntersectionLattice {
public:
    // rank 22: two E8(-1) blocks followed by three hyperbolic planes
    static const IntersectionLattice& k3();
    // rank 6: three hyperbolic planes (dx01/dx23, dx02/dx31, dx03/dx12)
    static const IntersectionLattice& t4();

    const std::string& name() const { return name_; }
    int rank() const { return rank_; }
    long long gram(int i, int j) const { return gram_[i * rank_ + j]; }

    long long pairing(const std::vector<long long>& a,
                      const std::vector<long long>& b) const;
    long long q_value(const std::vector<long long>& c) const;

    // construction self-tests (also run in the factories)
    bool is_even() const;
    long long determinant() const;  // exact, fraction-free elimination

private:
    IntersectionLattice(std::string name, int rank, std::vector<long long> gram);
    std::string name_;
    int rank_;
    std::vector<long long> gram_;
};

struct ConstraintCertificate {
    int r = 0;
    std::array<long long, 3> q_values{};
    long long c2_base = 0;

    bool exact = false;           // rational inputs, exact verdicts
    bool approx_warning = false;  // integrality decided within 1e-9 only
    Rational t2{0};
    Rational alpha{0};
    Rational ratio{0};        // (2 t^2 / alpha) sum_j q_j (valid when exact)
    double ratio_value = 0;   // always populated
    long long c2_target = 0;  // c2_base + ratio when integral

    bool integrality_ok = false;
    bool rank_ok = false;
};

// Exact path: t2 and alpha as rationals. integrality_ok iff the coupling
// ratio is an integer; rank_ok iff r <= c2_base + ratio.
ConstraintCertificate check_constraints(const Rational& t2, const Rational& alpha,
                                        int r, const std::array<long long, 3>& q_values,
                                        long long c2_base);

// Floating fallback: verdicts within 1e-9 of an integer, flagged.
ConstraintCertificate check_constraints(double t2, double alpha, int r,
                                        const std::array<long long, 3>& q_values,
                                        long long c2_base);

// True iff every t^2-scaled period is an integer (the gate for building the
// dual torus bundle). Exact for rational t^2.
bool tdual_integrality(const Rational& t2,
                       const std::array<std::array<long, 6>, 3>& beta_periods);

// Period vector of a constant ASD 2-form -> its class in the rank-6 lattice.
std::vector<long long> t4_class(const std::array<long, 6>& periods);

}  // namespace g2strom
