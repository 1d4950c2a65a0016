#ifndef CYCLELAB_LYAPUNOV_HPP
#define CYCLELAB_LYAPUNOV_HPP

#include <optional>
#include <string>
#include <vector>

#include "cyclelab/sysdef.hpp"

namespace cyclelab {

/// Result of the degree-graded focal value computation: homogeneous parts
/// V_3..V_N of the Lyapunov series V = (x^2+y^2)/2 + V_3 + ... and the
/// focal values eta_2, eta_4, ..., eta_N with
/// Vdot = sum_k eta_{2k} (x^2+y^2)^k up to total degree N.
struct LyapunovCertificate {
    std::vector<PlanarPoly> V_parts;  // V_parts[k] is V_k, indices 0..2 unused
    std::vector<ParamPoly> etas;      // etas[m] is eta_{2m}, index 0 unused
    bool residual_ok = false;

    /// eta_{2k+2}, the raw focal value reduced to the Lyapunov quantity L(k).
    const ParamPoly& eta_for_L(int k) const { return etas.at(k + 1); }
};

/// One reported Lyapunov quantity: L(k) = content * primitive.
struct LyapunovQuantity {
    int k = 0;
    Rat content;          // positive rational factor removed
    ParamPoly primitive;  // integer-coprime-coefficient part, sign preserved
    ParamPoly raw;        // the unreduced value (lambda for k = 0, else eta)
};

struct FocalSequence {
    std::vector<ParamPoly> etas;
    std::vector<LyapunovQuantity> quantities;  // every nonzero L(k) seen, in order
    std::vector<std::pair<std::string, ParamPoly>> substitutions;
    bool residual_ok = true;
};

/// Computes V_3..V_max_eta and the focal values. Requires linear part
/// exactly (-y, x); a symbolic nonzero trace is rejected so the caller
/// substitutes lambda = 0 first (the L(0) workflow).
LyapunovCertificate focal_values(const PlanarSystem& sys, int max_eta);

/// L(0): half the trace of the linearization at the origin. The
/// off-diagonal entries must be -1 (P_y) and 1 (Q_x).
ParamPoly lyapunov_l0(const PlanarSystem& sys);

struct ChainStep {
    int k;  // index whose quantity the bindings annihilate
    std::vector<std::pair<std::string, ParamPoly>> bindings;
};

/// Replays an interactive reduction: for each step, computes L(k) under the
/// substitutions so far (recording it when nonzero), applies the step's
/// bindings, and checks that L(k) vanishes once the last step for index k
/// has been applied. Finishes by computing the first quantity after the
/// final step's index (up to max_extra indices ahead).
FocalSequence lyapunov_chain(const PlanarSystem& sys, const std::vector<ChainStep>& steps,
                             int max_extra = 1);

struct WeakFocusResult {
    std::optional<int> order;  // empty means "center up to checked_up_to"
    int checked_up_to = 0;
    ParamPoly first_nonzero;  // L(order) when order is set
};

/// Smallest k in 1..max_k with L(k) != 0 at a fully numeric parameter
/// point, or CenterUpTo(max_k) when all vanish.
WeakFocusResult weak_focus_order(const PlanarSystem& sys, int max_k);

/// Content-normalizes a nonzero quantity into (content, primitive).
LyapunovQuantity reduce_quantity(int k, const ParamPoly& raw);

}  // namespace cyclelab

#endif
