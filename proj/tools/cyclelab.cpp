// cyclelab: symbolic and numeric analysis of planar Kukles-type systems.
//
// Subcommands: lyap, mel, cofactor, dulac, center-check, kukles-conditions,
// simulate, cycles, reproduce.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cyclelab/acceptance.hpp"
#include "cyclelab/report.hpp"

namespace cl = cyclelab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) cl::fail(cl::ErrorCode::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) cl::fail(cl::ErrorCode::Io, "cannot write '" + path + "'");
    out << content;
}

cl::PlanarSystem load_system(const std::string& path) { return cl::parse_system(read_file(path)); }

// "sym=expr;sym=expr" against the system's parameter table
std::vector<std::pair<std::string, cl::ParamPoly>> parse_bindings(const std::string& text,
                                                                  const cl::SymTab& params) {
    std::vector<std::pair<std::string, cl::ParamPoly>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            cl::fail(cl::ErrorCode::SyntaxError, "binding '" + item + "' must be sym=expr");
        std::string name = item.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        cl::PlanarPoly value = cl::parse_expression(item.substr(eq + 1), params);
        if (value.degree() > 0)
            cl::fail(cl::ErrorCode::SyntaxError, "binding for '" + name + "' must not involve x, y");
        out.emplace_back(name, value.coeff(0, 0));
    }
    return out;
}

// "a=1,b=1/2" as exact rationals
std::map<std::string, cl::Rat> parse_point(const std::string& text) {
    std::map<std::string, cl::Rat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            cl::fail(cl::ErrorCode::SyntaxError, "binding '" + item + "' must be sym=value");
        std::string name = item.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        std::string val = item.substr(eq + 1);
        val.erase(0, val.find_first_not_of(" \t"));
        val.erase(val.find_last_not_of(" \t") + 1);
        out[name] = cl::rat_from_string(val);
    }
    return out;
}

double env_tolerance() {
    const char* v = std::getenv("CYCLELAB_TOL");
    if (!v) return 1e-10;
    return std::atof(v);
}

// results are never truncated; past 1 MB a stderr note flags the size
const std::string& warn_if_large(const std::string& s) {
    if (s.size() > (1u << 20))
        std::cerr << "note: result is " << s.size() << " bytes; consider --json and a pager\n";
    return s;
}

// If every h-coefficient of M is a rational multiple of one common
// primitive polynomial, divides it out and returns the rational polynomial
// in h; used to isolate roots of symbolic results like c*(4h^2 - 2h).
std::optional<std::pair<cl::RatPoly, std::string>> common_factor_reduction(const cl::HPiPoly& M) {
    std::optional<cl::ParamPoly> common;
    std::vector<cl::Rat> coeffs(static_cast<std::size_t>(std::max(M.degree_h(), -1)) + 1, cl::Rat(0));
    for (const auto& [k, c] : M.coeffs()) {
        auto [content, prim] = c.content_and_primitive();
        cl::ParamPoly abs_prim = prim;
        cl::Rat sign(1);
        auto lead = prim.leading_term();
        if (lead.second < 0) {
            abs_prim = -prim;
            sign = -1;
        }
        if (!common) common = abs_prim;
        if (!(abs_prim == *common)) return std::nullopt;
        coeffs[static_cast<std::size_t>(k)] = content * sign;
    }
    if (!common) return std::nullopt;
    bool trivial = common->is_constant();
    return std::make_pair(cl::RatPoly(std::move(coeffs)),
                          trivial ? std::string() : common->str());
}

int math_exit(const cl::Error& e) { return cl::is_usage_error(e.code()) ? 1 : 2; }

// ---------------------------------------------------------------------------

int cmd_lyap(const std::string& file, int max_order, const std::string& subst, bool json) {
    cl::PlanarSystem sys = load_system(file);
    auto bindings = parse_bindings(subst, sys.params);
    cl::PlanarSystem cur = sys.substitute(bindings);

    cl::ParamPoly l0 = cl::lyapunov_l0(cur);
    cl::FocalSequence seq;
    for (const auto& b : bindings) seq.substitutions.push_back(b);
    if (!l0.is_zero()) {
        seq.quantities.push_back(cl::reduce_quantity(0, l0));
    } else {
        auto cert = cl::focal_values(cur, 2 * max_order + 2);
        seq.etas = cert.etas;
        seq.residual_ok = cert.residual_ok;
        for (int k = 1; k <= max_order; ++k) {
            const cl::ParamPoly& eta = cert.eta_for_L(k);
            if (!eta.is_zero()) {
                seq.quantities.push_back(cl::reduce_quantity(k, eta));
                break;  // first nonzero quantity ends the scan
            }
        }
    }

    if (json) {
        std::cout << warn_if_large(cl::lyapunov_report(l0, seq).dump(2)) << "\n";
    } else {
        std::cout << "L(0) = " << l0.str() << "\n";
        if (seq.quantities.empty() || seq.quantities.back().k == 0) {
            if (l0.is_zero())
                std::cout << "L(1).." << "L(" << max_order << ") = 0 (center up to the checked order)\n";
        }
        for (const auto& q : seq.quantities)
            if (q.k > 0)
                std::cout << "L(" << q.k << ") = " << cl::rat_to_string(q.content) << " * ("
                          << warn_if_large(q.primitive.str()) << ")\n";
        std::cout << "residual_ok: " << (seq.residual_ok ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_mel(const std::string& file, int order, const std::string& subst, const std::string& at,
            bool json) {
    cl::PlanarSystem sys = load_system(file);
    auto bindings = parse_bindings(subst, sys.params);
    cl::PlanarSystem cur = sys.substitute(bindings);
    std::vector<std::string> eps = cur.perturbation_params;
    if (eps.empty()) eps = cur.params->names();
    cl::PerturbedSystem ps = cl::eps_rescale(cur, eps, true);

    cl::MelnikovResult m = order == 1 ? cl::melnikov1(ps) : cl::melnikov2(ps);
    cl::BCoefficients b = cl::b_coeffs(m.M);

    std::vector<cl::RootInterval> roots;
    auto point = parse_point(at);
    std::string factored_out;
    if (!m.M.is_zero()) {
        if (!at.empty()) {
            roots = cl::isolate_real_roots(m.M, point, cl::Rat(0), cl::Rat(0), true);
        } else if (auto reduced = common_factor_reduction(m.M)) {
            roots = cl::isolate_roots(reduced->first, cl::Rat(0), cl::Rat(0), true);
            factored_out = reduced->second;
        }
    }

    if (json) {
        auto j = cl::melnikov_report(m, b, roots);
        if (!factored_out.empty()) j["roots_valid_for_nonzero"] = factored_out;
        std::cout << warn_if_large(j.dump(2)) << "\n";
    } else {
        std::cout << "M" << order << "(h) = " << warn_if_large(m.M.str()) << "\n";
        for (std::size_t s = 0; s < b.b.size(); ++s)
            std::cout << "b_" << s << " = " << b.b[s].str() << (b.pi_power ? " (x pi)" : "") << "\n";
        for (const auto& r : roots) {
            if (r.exact)
                std::cout << "root h = " << cl::rat_to_string(r.lo) << " (mult " << r.multiplicity
                          << ")\n";
            else
                std::cout << "root in (" << cl::rat_to_string(r.lo) << ", " << cl::rat_to_string(r.hi)
                          << "] (mult " << r.multiplicity << ")\n";
        }
        if (!factored_out.empty())
            std::cout << "roots computed after factoring out " << factored_out << " (assumed nonzero)\n";
    }
    return 0;
}

int cmd_cofactor(const std::string& file, const std::string& curve, bool dulac, bool json) {
    cl::PlanarSystem sys = load_system(file);
    cl::PlanarPoly C = cl::parse_expression(curve, sys.params);
    if (dulac) {
        auto r = cl::dulac_divergence(sys, C);
        if (json)
            std::cout << cl::dulac_report(r).dump(2) << "\n";
        else
            std::cout << "div((1/C) X) = (" << r.numerator.str() << ") / C^" << r.denominator_power
                      << (r.is_constant ? "  == constant " + r.constant.str() : "") << "\n";
        return 0;
    }
    auto r = cl::cofactor(sys, C);
    if (json) {
        std::cout << cl::cofactor_report(r).dump(2) << "\n";
    } else if (r.invariant) {
        std::cout << "invariant curve; cofactor K = " << r.cofactor.str() << "\n";
    } else {
        std::cout << "not invariant; remainder = " << r.remainder.str() << "\n";
    }
    return 0;
}

int cmd_center_check(const std::string& file, bool json) {
    cl::PlanarSystem sys = load_system(file);
    auto f = cl::symmetry_center_check(sys);
    if (json)
        std::cout << cl::symmetry_report(f).dump(2) << "\n";
    else
        std::cout << "x_axis_reversible: " << (f.x_axis_reversible ? "true" : "false")
                  << "\ny_axis_reversible: " << (f.y_axis_reversible ? "true" : "false")
                  << "\ncenter_certified: " << (f.center_certified() ? "true" : "false") << "\n";
    return 0;
}

int cmd_kukles_conditions(const std::vector<std::string>& values, bool json) {
    if (values.size() != 7)
        cl::fail(cl::ErrorCode::Precondition, "need exactly 7 rational coefficients a1..a7");
    std::array<cl::Rat, 7> a;
    for (int i = 0; i < 7; ++i) a[static_cast<std::size_t>(i)] = cl::rat_from_string(values[i]);
    auto r = cl::kukles_conditions(a);
    if (json) {
        std::cout << cl::kukles_report(r).dump(2) << "\n";
    } else {
        std::cout << "lambda = " << cl::rat_to_string(r.lambda) << "\n";
        std::cout << "K1: " << r.K1 << "  K2: " << r.K2 << "  K3: " << r.K3 << "  K4: " << r.K4
                  << "  JinWang: " << r.jin_wang << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& file, const std::string& at, double x0, double y0, double tmax,
                 const std::string& csv) {
    cl::PlanarSystem sys = load_system(file);
    cl::NumericSystem ns(sys, parse_point(at));
    cl::IntegrateOptions opt;
    opt.tol = env_tolerance();
    auto traj = cl::integrate(ns, {x0, y0}, tmax, opt);
    std::string out = cl::trajectory_csv(traj, 2048);
    if (csv.empty())
        std::cout << out;
    else
        write_file(csv, out);
    return 0;
}

int cmd_cycles(const std::string& file, const std::string& at, const std::string& range, int grid,
               const std::string& portrait, bool json) {
    cl::PlanarSystem sys = load_system(file);
    auto point = parse_point(at);
    for (const auto& [name, value] : point)
        if (!sys.params->index(name))
            cl::fail(cl::ErrorCode::UnknownSymbol, "'" + name + "' is not a parameter");
    for (const auto& name : sys.params->names())
        if (!point.count(name)) cl::fail(cl::ErrorCode::UnboundSymbol, "parameter '" + name + "' unbound");
    double lo = 0.2, hi = 1.8;
    if (!range.empty()) {
        auto colon = range.find(':');
        if (colon == std::string::npos)
            cl::fail(cl::ErrorCode::SyntaxError, "--range expects lo:hi");
        lo = std::atof(range.substr(0, colon).c_str());
        hi = std::atof(range.substr(colon + 1).c_str());
    }
    cl::NumericSystem ns(sys, point);
    auto cycles = cl::find_cycles(ns, lo, hi, grid, env_tolerance());
    if (json)
        std::cout << cl::cycles_report(cycles).dump(2) << "\n";
    else if (cycles.empty())
        std::cout << "no cycles detected in (" << lo << ", " << hi << ")\n";
    else
        for (const auto& c : cycles)
            std::cout << "cycle at x = " << c.x_cross << ", period " << c.period << ", "
                      << (c.stability == cl::CycleEstimate::Stability::Attracting    ? "attracting"
                          : c.stability == cl::CycleEstimate::Stability::Repelling   ? "repelling"
                                                                                     : "inconclusive")
                      << "\n";
    if (!portrait.empty()) {
        std::vector<cl::Trajectory> orbits;
        cl::IntegrateOptions opt;
        opt.tol = env_tolerance();
        for (double seed : {0.4, 0.8, 1.2}) orbits.push_back(cl::integrate(ns, {seed, 0.0}, 40.0, opt));
        for (const auto& c : cycles) orbits.push_back(cl::integrate(ns, {c.x_cross, 0.0}, c.period, opt));
        bool unit = false;
        try {
            cl::PlanarPoly circle = cl::parse_expression("x^2 + y^2 - 1", sys.params);
            unit = cl::cofactor(sys, circle).invariant;
        } catch (const cl::Error&) {
        }
        write_file(portrait, cl::phase_portrait_svg(orbits, unit));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclelab: limit cycles, Lyapunov quantities and Melnikov functions for planar "
                 "Kukles-type systems"};
    app.require_subcommand(1);

    std::string file, subst, at, range, curve, csv, portrait, filter;
    int max_order = 8, order = 1, grid = 64;
    double x0 = 1.0, y0 = 0.0, tmax = 20.0;
    bool json = false;
    std::vector<std::string> avalues;

    auto* lyap = app.add_subcommand("lyap", "Lyapunov quantities of a system file");
    lyap->add_option("file", file)->required();
    lyap->add_option("--max-order", max_order, "highest L(k) index to compute");
    lyap->add_option("--subst", subst, "bindings sym=expr;... applied before the computation");
    lyap->add_flag("--json", json);

    auto* mel = app.add_subcommand("mel", "first or second Melnikov function");
    mel->add_option("file", file)->required();
    mel->add_option("--order", order)->check(CLI::Range(1, 2));
    mel->add_option("--subst", subst);
    mel->add_option("--at", at, "rational parameter values for root isolation");
    mel->add_flag("--json", json);

    auto* cof = app.add_subcommand("cofactor", "invariant algebraic curve check");
    cof->add_option("file", file)->required();
    cof->add_option("--curve", curve)->required();
    cof->add_flag("--json", json);

    auto* dul = app.add_subcommand("dulac", "divergence of the 1/C-scaled field");
    dul->add_option("file", file)->required();
    dul->add_option("--curve", curve)->required();
    dul->add_flag("--json", json);

    auto* cen = app.add_subcommand("center-check", "symmetry-based center certificates");
    cen->add_option("file", file)->required();
    cen->add_flag("--json", json);

    auto* kuk = app.add_subcommand("kukles-conditions", "classical cubic Kukles conditions");
    kuk->add_option("a", avalues, "a1..a7 as rationals")->expected(7);
    kuk->add_flag("--json", json);

    auto* sim = app.add_subcommand("simulate", "integrate one orbit, CSV output");
    sim->add_option("file", file)->required();
    sim->add_option("--at", at)->required();
    sim->add_option("--x0", x0);
    sim->add_option("--y0", y0);
    sim->add_option("--tmax", tmax);
    sim->add_option("--csv", csv, "output path (stdout when omitted)");

    auto* cyc = app.add_subcommand("cycles", "limit cycle scan on the positive x-axis");
    cyc->add_option("file", file)->required();
    cyc->add_option("--at", at)->required();
    cyc->add_option("--range", range, "lo:hi scan range");
    cyc->add_option("--grid", grid);
    cyc->add_option("--portrait", portrait, "write an SVG phase portrait");
    cyc->add_flag("--json", json);

    auto* rep = app.add_subcommand("reproduce", "run the acceptance suite");
    rep->add_option("--filter", filter, "run only criteria whose name contains this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (lyap->parsed()) return cmd_lyap(file, max_order, subst, json);
        if (mel->parsed()) return cmd_mel(file, order, subst, at, json);
        if (cof->parsed()) return cmd_cofactor(file, curve, false, json);
        if (dul->parsed()) return cmd_cofactor(file, curve, true, json);
        if (cen->parsed()) return cmd_center_check(file, json);
        if (kuk->parsed()) return cmd_kukles_conditions(avalues, json);
        if (sim->parsed()) return cmd_simulate(file, at, x0, y0, tmax, csv);
        if (cyc->parsed()) return cmd_cycles(file, at, range, grid, portrait, json);
        if (rep->parsed()) return cl::run_acceptance(filter, std::cout) == 0 ? 0 : 2;
    } catch (const cl::Error& e) {
        std::cerr << e.what() << "\n";
        return math_exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
