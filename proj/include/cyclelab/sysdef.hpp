#ifndef CYCLELAB_SYSDEF_HPP
#define CYCLELAB_SYSDEF_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cyclelab/planarpoly.hpp"

namespace cyclelab {

/// Planar polynomial vector field xdot = P, ydot = Q over declared
/// parameter symbols; x and y are the reserved phase variables.
struct PlanarSystem {
    SymTab params;
    PlanarPoly P;
    PlanarPoly Q;
    std::vector<std::string> perturbation_params;

    bool operator==(const PlanarSystem& o) const {
        return params->names() == o.params->names() && P == o.P && Q == o.Q &&
               perturbation_params == o.perturbation_params;
    }

    PlanarSystem substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const;
};

/// Perturbation of the harmonic center H = (x^2+y^2)/2 collected at first
/// order. With time_reversed set, the fields describe the standard form
/// xdot = H_y + eps*f1, ydot = -H_x + eps*g1 obtained by applying t -> -t
/// to the input; otherwise they describe the original clockwise-Hamiltonian
/// orientation xdot = -H_y + eps*f1, ydot = H_x + eps*g1.
struct PerturbedSystem {
    SymTab params;
    PlanarPoly f1;
    PlanarPoly g1;
    bool time_reversed = false;
    bool vanishes_at_origin = true;

    PerturbedSystem substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const;
};

/// Parses the line-oriented system format:
///   # comment
///   params: a, b, c
///   dx = <expr>
///   dy = <expr>
///   perturb: a, b
PlanarSystem parse_system(const std::string& text);

/// Parses an expression (the grammar's expr production) over the given
/// parameter table; x and y are phase variables.
PlanarPoly parse_expression(const std::string& text, const SymTab& params);

/// Canonical text rendering; parse_system(render_system(s)) == s.
std::string render_system(const PlanarSystem& sys);

/// xdot = -y, ydot = x + a1 x^2 + a2 xy + a3 y^2 + a4 x^3 + a5 x^2 y
///                     + a6 x y^2 + a7 y^3 with symbolic coefficients.
PlanarSystem kukles_cubic();
PlanarSystem kukles_cubic(const std::array<Rat, 7>& a);

/// xdot = -y, ydot = x + y (x^2+y^2-1)(a x + b y + c), symbolic (a, b, c).
PlanarSystem kukles_deg4();

/// Odd-degree family: xdot = -y,
/// ydot = x + y (1-x^2-y^2) (b00 + sum_{1<=i+j<=n} b{2i}{2j} x^{2i} y^{2j});
/// the table declares every coefficient, degree of the system is 2n+3.
PlanarSystem kukles_odd(int n);
/// Same family with explicit coefficient polynomials; keys are (2i, 2j)
/// pairs, missing keys default to zero. BadIndex for odd/out-of-range keys.
PlanarSystem kukles_odd(int n, const std::map<std::pair<int, int>, Rat>& b);

/// Symbol name used for the coefficient of x^{2i} y^{2j} in kukles_odd.
std::string odd_coeff_name(int two_i, int two_j);

struct KuklesConditionReport {
    Rat lambda;  // a2*a3 + 3*a7
    Rat k_alpha, k_beta, k_gamma, k_delta;
    bool K1 = false, K2 = false, K3 = false, K4 = false;
    bool jin_wang = false;
    int jin_wang_branch = 0;  // +1 for a7 = a4, -1 for a7 = -a4, 0 none
    bool any() const { return K1 || K2 || K3 || K4 || jin_wang; }
};

/// Evaluates the classical cubic-Kukles center conditions (K1)-(K4) and the
/// Jin-Wang conditions at a concrete coefficient vector.
KuklesConditionReport kukles_conditions(const std::array<Rat, 7>& a);

/// Rescales the named parameters by eps, checks the eps^0 part is exactly
/// the linear center, and collects the eps^1 perturbation. reverse_time
/// applies t -> -t so that the result is a standard perturbed Hamiltonian.
PerturbedSystem eps_rescale(const PlanarSystem& sys, const std::vector<std::string>& eps_params,
                            bool reverse_time);

/// Inverse of eps_rescale at eps = 1 (for round-trip checking).
PlanarSystem reassemble(const PerturbedSystem& ps);

}  // namespace cyclelab

#endif
