#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "g2strom/g2.hpp"

// Principal symbols of the deformation operators at a covector, as explicit
// linear maps between explicitly-based graded vector spaces, plus the
// exactness checks that stand in for ellipticity of the deformation complex.

namespace g2strom {

struct GradedSpace {
    std::string label;
    std::vector<std::pair<std::string, int>> summands;

    int dimension() const {
        int d = 0;
        for (const auto& [name, dim] : summands) d += dim;
        return d;
    }
    int offset(int i) const {
        int d = 0;
        for (int j = 0; j < i; ++j) d += summands[j].second;
        return d;
    }
};

struct SymbolMap {
    GradedSpace domain;
    GradedSpace codomain;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd covector;
    // Douglis-Nirenberg order of each (codomain summand, domain summand)
    // block in the covector; -1 marks an identically zero block.
    Eigen::MatrixXi block_orders;
};

// Diffeomorphism-action symbol: V |-> (v ^ i_V phi, 0) into Lambda^3 + R.
SymbolMap symbol_PM(const G2Point& p, const Eigen::VectorXd& v);

// Linearized-equations symbol into Lambda^7 + Lambda^5 + Lambda^4:
// (phidot, fdot) |-> ( v ^ phidot ^ phi,
//                      v ^ *J phidot + 4 fdot v ^ *phi,
//                     -v ^ *(v ^ (phidot + 4 fdot phi)) ).
SymbolMap symbol_LM(const G2Point& p, const Eigen::VectorXd& v);

// Gauge-fixed instanton complex symbols with adjoint bundle R^m:
//   S0: r |-> (v (x) r, 0),   S1: (a, s) |-> *phi ^ v ^ a + s *v.
std::pair<SymbolMap, SymbolMap> symbol_instanton_complex(const G2Point& p,
                                                         const Eigen::VectorXd& v,
                                                         int m);

struct ExactnessReport {
    int rank_in = 0;
    int dim_ker_out = 0;
    double containment_defect = 0.0;
    double composition_norm = 0.0;
    bool exact = false;
};

// Checks im(S_in) = ker(S_out): rank count plus the containment defect
// ||(I - P_im) K|| for an orthonormal kernel basis K of S_out. Throws
// NotAComplexError when S_out * S_in fails to vanish.
ExactnessReport check_exactness(const SymbolMap& s_in, const SymbolMap& s_out,
                                double tol = 1e-8);

// Singular-value rank with relative threshold (default 1e-8).
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-8);

struct BryantSymbolResiduals {
    double seven_part_annihilated = 0.0;  // || v ^ *J(v ^ beta7) ||
    double no_seven_leak = 0.0;           // || pi_7( v ^ *J(v ^ beta14) ) ||
    double reduction_identity = 0.0;      // first-order reduction of the 14-part
};

// Symbol-level identities behind the second-order operator reductions, on the
// given type-pure 2-forms. The third residual checks
//   *( v ^ *J(v ^ beta14) ) = -i_V(v ^ beta14) + 1/2 i_V *(phi ^ i_V beta14),
// the closed first-order reduction of the pi_14 block.
BryantSymbolResiduals bryant_symbol_residuals(const G2Point& p,
                                              const Eigen::VectorXd& v,
                                              const AlternatingForm& beta7,
                                              const AlternatingForm& beta14);

}  // namespace g2strom
