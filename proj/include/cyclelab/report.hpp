#ifndef CYCLELAB_REPORT_HPP
#define CYCLELAB_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "cyclelab/invariants.hpp"
#include "cyclelab/lyapunov.hpp"
#include "cyclelab/melnikov.hpp"
#include "cyclelab/numerics.hpp"

namespace cyclelab {

using Json = nlohmann::ordered_json;

Json lyapunov_report(const ParamPoly& l0, const FocalSequence& seq);
Json melnikov_report(const MelnikovResult& result, const BCoefficients& b,
                     const std::vector<RootInterval>& roots);
Json cofactor_report(const CofactorResult& r);
Json dulac_report(const DulacResult& r);
Json symmetry_report(const SymmetryFlags& f);
Json kukles_report(const KuklesConditionReport& r);
Json cycles_report(const std::vector<CycleEstimate>& cycles);
Json roots_json(const std::vector<RootInterval>& roots);

std::string trajectory_csv(const Trajectory& traj, int samples);

/// Minimal phase portrait: fixed viewport [-1.6, 1.6]^2, orbits as
/// polylines, optional unit-circle overlay.
std::string phase_portrait_svg(const std::vector<Trajectory>& orbits, bool unit_circle);

}  // namespace cyclelab

#endif
