#include "cyclelab/report.hpp"

#include <sstream>

namespace cyclelab {

Json roots_json(const std::vector<RootInterval>& roots) {
    Json arr = Json::array();
    for (const auto& r : roots) {
        Json item;
        item["interval"] = {rat_to_string(r.lo), rat_to_string(r.hi)};
        item["mult"] = r.multiplicity;
        if (r.exact) item["exact"] = rat_to_string(r.lo);
        arr.push_back(item);
    }
    return arr;
}

Json lyapunov_report(const ParamPoly& l0, const FocalSequence& seq) {
    Json j;
    j["l0"] = l0.str();
    Json quantities = Json::array();
    for (const auto& q : seq.quantities) {
        Json item;
        item["k"] = q.k;
        item["content"] = rat_to_string(q.content);
        item["primitive"] = q.primitive.str();
        quantities.push_back(item);
    }
    j["quantities"] = quantities;
    Json subs = Json::array();
    for (const auto& [name, image] : seq.substitutions) subs.push_back(name + " = " + image.str());
    j["substitutions"] = subs;
    j["residual_ok"] = seq.residual_ok;
    return j;
}

Json melnikov_report(const MelnikovResult& result, const BCoefficients& b,
                     const std::vector<RootInterval>& roots) {
    Json j;
    j["order"] = result.order;
    j["M"] = result.M.str();
    Json bs = Json::array();
    for (const auto& coeff : b.b) bs.push_back(coeff.str());
    j["b"] = bs;
    j["roots"] = roots_json(roots);
    j["sign_convention"] = {
        {"parameterization", "x=sqrt(2h)*cos(t), y=-sqrt(2h)*sin(t)"},
        {"time_reversed", result.time_reversed},
    };
    return j;
}

Json cofactor_report(const CofactorResult& r) {
    Json j;
    j["invariant"] = r.invariant;
    j["cofactor"] = r.invariant ? Json(r.cofactor.str()) : Json(nullptr);
    j["remainder"] = r.invariant ? Json(nullptr) : Json(r.remainder.str());
    return j;
}

Json dulac_report(const DulacResult& r) {
    Json j;
    j["numerator"] = r.numerator.str();
    j["denominator_power"] = r.denominator_power;
    j["is_constant"] = r.is_constant;
    j["constant"] = r.is_constant ? Json(r.constant.str()) : Json(nullptr);
    return j;
}

Json symmetry_report(const SymmetryFlags& f) {
    Json j;
    j["x_axis_reversible"] = f.x_axis_reversible;
    j["y_axis_reversible"] = f.y_axis_reversible;
    j["center_certified"] = f.center_certified();
    return j;
}

Json kukles_report(const KuklesConditionReport& r) {
    Json j;
    j["lambda"] = rat_to_string(r.lambda);
    j["k_alpha"] = rat_to_string(r.k_alpha);
    j["k_beta"] = rat_to_string(r.k_beta);
    j["k_gamma"] = rat_to_string(r.k_gamma);
    j["k_delta"] = rat_to_string(r.k_delta);
    j["K1"] = r.K1;
    j["K2"] = r.K2;
    j["K3"] = r.K3;
    j["K4"] = r.K4;
    j["jin_wang"] = r.jin_wang;
    j["jin_wang_branch"] = r.jin_wang_branch;
    return j;
}

Json cycles_report(const std::vector<CycleEstimate>& cycles) {
    Json arr = Json::array();
    for (const auto& c : cycles) {
        const char* st = c.stability == CycleEstimate::Stability::Attracting    ? "attracting"
                         : c.stability == CycleEstimate::Stability::Repelling   ? "repelling"
                                                                                : "inconclusive";
        arr.push_back({{"x", c.x_cross}, {"period", c.period}, {"stability", st}});
    }
    return Json{{"cycles", arr}};
}

std::string trajectory_csv(const Trajectory& traj, int samples) {
    std::ostringstream out;
    out << "t,x,y\n";
    out.precision(15);
    for (const auto& row : traj.sample(samples)) out << row[0] << "," << row[1] << "," << row[2] << "\n";
    return out.str();
}

std::string phase_portrait_svg(const std::vector<Trajectory>& orbits, bool unit_circle) {
    const double view = 1.6, size = 640;
    auto px = [&](double v) { return (v + view) / (2 * view) * size; };
    std::ostringstream out;
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    out << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"0\" y1=\"" << px(0) << "\" x2=\"" << size << "\" y2=\"" << px(0)
        << "\" stroke=\"#cccccc\"/>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"0\" x2=\"" << px(0) << "\" y2=\"" << size
        << "\" stroke=\"#cccccc\"/>\n";
    if (unit_circle) {
        out << "<circle cx=\"" << px(0) << "\" cy=\"" << px(0) << "\" r=\"" << size / (2 * view)
            << "\" fill=\"none\" stroke=\"#d33\" stroke-dasharray=\"6 4\"/>\n";
    }
    const char* colors[] = {"#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
    int ci = 0;
    for (const auto& traj : orbits) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[ci++ % 5] << "\" stroke-width=\"1\" points=\"";
        for (const auto& row : traj.sample(2000))
            out << px(row[1]) << "," << (size - px(row[2])) << " ";
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace cyclelab
