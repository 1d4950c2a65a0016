#ifndef CYCLELAB_INVARIANTS_HPP
#define CYCLELAB_INVARIANTS_HPP

#include "cyclelab/sysdef.hpp"

namespace cyclelab {

struct CofactorResult {
    bool invariant = false;
    PlanarPoly cofactor;   // K with Cdot = C K, when invariant
    PlanarPoly remainder;  // division remainder, when not
};

/// Tests whether C = 0 is an invariant algebraic curve of the system:
/// computes Cdot = C_x P + C_y Q and divides by C (first as a polynomial
/// in y, then by graded reduction).
CofactorResult cofactor(const PlanarSystem& sys, const PlanarPoly& C);

struct DulacResult {
    PlanarPoly numerator;     // numerator of div((1/C) (P, Q))
    int denominator_power = 2;
    bool is_constant = false;  // numerator == const * C^2
    ParamPoly constant;        // that constant, when is_constant
};

/// Divergence of the field scaled by 1/C, as an exact rational expression
/// numerator / C^2.
DulacResult dulac_divergence(const PlanarSystem& sys, const PlanarPoly& C);

struct SymmetryFlags {
    bool x_axis_reversible = false;  // P(x,-y) = -P, Q(x,-y) = Q
    bool y_axis_reversible = false;  // P(-x,y) = P, Q(-x,y) = -Q
    bool center_certified() const { return x_axis_reversible || y_axis_reversible; }
};

SymmetryFlags symmetry_center_check(const PlanarSystem& sys);

/// Residual of the reciprocal-integrating-factor equation
/// P V_x + Q V_y - (P_x + Q_y) V; zero iff V is a solution.
PlanarPoly rif_check(const PlanarSystem& sys, const PlanarPoly& V);

}  // namespace cyclelab

#endif
