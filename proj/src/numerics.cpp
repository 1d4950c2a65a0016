#include "cyclelab/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace cyclelab {

// ---------------------------------------------------------------------------
// compiled system

std::vector<NumericSystem::Term> NumericSystem::compile(const PlanarPoly& f,
                                                        const std::map<std::string, Rat>& bindings) {
    std::vector<Term> out;
    out.reserve(f.terms().size());
    for (const auto& [key, coeff] : f.terms())
        out.push_back({rat_to_double(coeff.evaluate(bindings)), key.i, key.j});
    return out;
}

NumericSystem::NumericSystem(const PlanarSystem& sys, const std::map<std::string, Rat>& bindings) {
    p_ = compile(sys.P, bindings);
    q_ = compile(sys.Q, bindings);
    degree_ = std::max(sys.P.degree(), sys.Q.degree());
    params_ = bindings;
}

double NumericSystem::eval(const std::vector<Term>& terms, double x, double y) {
    double sum = 0;
    for (const auto& t : terms) {
        double v = t.c;
        for (int k = 0; k < t.i; ++k) v *= x;
        for (int k = 0; k < t.j; ++k) v *= y;
        sum += v;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with dense output (Hairer's coefficients)

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

using Vec2 = std::array<double, 2>;

inline Vec2 axpy(const Vec2& y, double h, const Vec2& k) { return {y[0] + h * k[0], y[1] + h * k[1]}; }

}  // namespace

std::array<double, 2> DenseStep::eval_theta(double theta) const {
    std::array<double, 2> out{};
    double th1 = 1.0 - theta;
    for (int c = 0; c < 2; ++c) {
        const auto& r = rcont[c];
        out[c] = r[0] + theta * (r[1] + th1 * (r[2] + theta * (r[3] + th1 * r[4])));
    }
    return out;
}

std::array<double, 2> DenseStep::eval(double t) const { return eval_theta((t - t0) / h); }

std::array<double, 2> Trajectory::eval(double t) const {
    if (steps.empty()) fail(ErrorCode::Precondition, "empty trajectory");
    if (t <= steps.front().t0) return steps.front().eval_theta(0.0);
    for (const auto& s : steps)
        if (t <= s.t0 + s.h) return s.eval(t);
    return y_end;
}

std::vector<std::array<double, 3>> Trajectory::sample(int count) const {
    std::vector<std::array<double, 3>> out;
    if (steps.empty() || count < 2) return out;
    double t0 = steps.front().t0;
    for (int i = 0; i < count; ++i) {
        double t = t0 + (t_end - t0) * i / (count - 1);
        auto y = eval(t);
        out.push_back({t, y[0], y[1]});
    }
    return out;
}

namespace {

struct Stepper {
    const NumericSystem& sys;
    double tol;
    double max_step;
    double blowup;

    Vec2 f(const Vec2& y) const { return {sys.P(y[0], y[1]), sys.Q(y[0], y[1])}; }

    // One adaptive step from (t, y) with proposed size h; returns the
    // accepted DenseStep and updates t, y, h, k1 (FSAL).
    DenseStep step(double& t, Vec2& y, double& h, Vec2& k1, double t_max) {
        for (;;) {
            if (t + h > t_max) h = t_max - t;
            Vec2 k2 = f(axpy(y, h * a21, k1));
            Vec2 y3 = {y[0] + h * (a31 * k1[0] + a32 * k2[0]), y[1] + h * (a31 * k1[1] + a32 * k2[1])};
            Vec2 k3 = f(y3);
            Vec2 y4 = {y[0] + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                       y[1] + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])};
            Vec2 k4 = f(y4);
            Vec2 y5 = {y[0] + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                       y[1] + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])};
            Vec2 k5 = f(y5);
            Vec2 y6 = {y[0] + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
                       y[1] + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1])};
            Vec2 k6 = f(y6);
            Vec2 ynew = {y[0] + h * (a71 * k1[0] + a73 * k3[0] + a74 * k4[0] + a75 * k5[0] + a76 * k6[0]),
                         y[1] + h * (a71 * k1[1] + a73 * k3[1] + a74 * k4[1] + a75 * k5[1] + a76 * k6[1])};
            Vec2 k7 = f(ynew);

            double err = 0;
            for (int c = 0; c < 2; ++c) {
                double sc = tol + tol * std::max(std::abs(y[c]), std::abs(ynew[c]));
                double ec = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] + e6 * k6[c] +
                                 e7 * k7[c]);
                err += (ec / sc) * (ec / sc);
            }
            err = std::sqrt(err / 2);

            double fac = std::clamp(0.9 * std::pow(err > 0 ? err : 1e-30, -0.2), 0.2, 5.0);
            if (err <= 1.0) {
                DenseStep ds;
                ds.t0 = t;
                ds.h = h;
                for (int c = 0; c < 2; ++c) {
                    double ydiff = ynew[c] - y[c];
                    double bspl = h * k1[c] - ydiff;
                    ds.rcont[c][0] = y[c];
                    ds.rcont[c][1] = ydiff;
                    ds.rcont[c][2] = bspl;
                    ds.rcont[c][3] = ydiff - h * k7[c] - bspl;
                    ds.rcont[c][4] = h * (d1 * k1[c] + d3 * k3[c] + d4 * k4[c] + d5 * k5[c] +
                                          d6 * k6[c] + d7 * k7[c]);
                }
                t += h;
                y = ynew;
                k1 = k7;  // FSAL
                h = std::min(h * fac, max_step);
                if (std::hypot(y[0], y[1]) > blowup) fail(ErrorCode::Blowup, "state norm exceeded 1e6");
                return ds;
            }
            h *= fac;
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                fail(ErrorCode::StepSizeUnderflow, "step size underflow at t = " + std::to_string(t));
        }
    }
};

}  // namespace

// The local error control runs below the user tolerance so that the
// accumulated drift over t ~ 100 stays within 100*tol.
static double local_tolerance(double tol) { return std::max(tol / 64.0, 1e-15); }

Trajectory integrate(const NumericSystem& sys, std::array<double, 2> x0, double t_max,
                     const IntegrateOptions& opt) {
    if (opt.tol < 1e-13 || opt.tol > 1e-3)
        fail(ErrorCode::Precondition, "tolerance must lie in [1e-13, 1e-3]");
    Stepper st{sys, local_tolerance(opt.tol), opt.max_step, opt.blowup_norm};
    Trajectory traj;
    double t = 0, h = std::min(0.01, opt.max_step);
    Vec2 y = x0;
    Vec2 k1 = st.f(y);
    while (t < t_max) {
        traj.steps.push_back(st.step(t, y, h, k1, t_max));
        if (traj.steps.size() > 50'000'000)
            fail(ErrorCode::StepSizeUnderflow, "step budget exhausted");
    }
    traj.t_end = t;
    traj.y_end = y;
    return traj;
}

namespace {

// Locates y2 = 0 inside an accepted step by bisection on the interpolant.
double locate_crossing(const DenseStep& ds, double tol_event) {
    double lo = 0.0, hi = 1.0;
    double flo = ds.eval_theta(lo)[1];
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = ds.eval_theta(mid)[1];
        if (std::abs(fm) < tol_event) return ds.t0 + mid * ds.h;
        if ((flo < 0) != (fm < 0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return ds.t0 + 0.5 * (lo + hi) * ds.h;
}

}  // namespace

ReturnPoint poincare_return(const NumericSystem& sys, double x0, double tol, double t_max) {
    if (x0 <= 0) fail(ErrorCode::Precondition, "section requires x0 > 0");
    IntegrateOptions opt;
    opt.tol = tol;
    Stepper st{sys, local_tolerance(opt.tol), opt.max_step, opt.blowup_norm};
    double t = 0, h = 0.01;
    Vec2 y = {x0, 0.0};
    Vec2 k1 = st.f(y);
    double y_prev = 0.0;
    bool armed = false;  // arms once the orbit has left the section
    const double tol_event = 1e-12;
    while (t < t_max) {
        DenseStep ds = st.step(t, y, h, k1, t_max);
        double y_now = y[1];
        if (armed && y_prev < 0 && y_now >= 0) {
            double tc = locate_crossing(ds, tol_event);
            auto yc = ds.eval(tc);
            if (yc[0] > 0 && sys.Q(yc[0], yc[1]) > 0) return {yc[0], tc};
        }
        if (!armed && y_now < 0) armed = true;
        y_prev = y_now;
    }
    fail(ErrorCode::NoReturn, "orbit did not return to the section before t_max");
}

std::vector<CycleEstimate> find_cycles(const NumericSystem& sys, double lo, double hi, int grid,
                                       double tol) {
    if (!(0 < lo && lo < hi)) fail(ErrorCode::Precondition, "need 0 < lo < hi");
    if (grid < 2) fail(ErrorCode::Precondition, "grid must have at least 2 points");
    auto displacement = [&](double x) { return poincare_return(sys, x, tol).x - x; };

    std::vector<CycleEstimate> cycles;
    const double width_target = 1e-8;
    std::vector<double> xs(static_cast<std::size_t>(grid) + 1), ds(xs.size());
    for (int i = 0; i <= grid; ++i) {
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / grid;
        ds[static_cast<std::size_t>(i)] = displacement(xs[static_cast<std::size_t>(i)]);
    }

    auto finish = [&](double x_cross, CycleEstimate::Stability st) {
        CycleEstimate est;
        est.x_cross = x_cross;
        auto ret = poincare_return(sys, x_cross, tol);
        est.period = ret.t;
        est.residual = std::abs(ret.x - x_cross);
        est.stability = st;
        return est;
    };

    for (int i = 1; i <= grid; ++i) {
        double d_prev = ds[static_cast<std::size_t>(i - 1)], d = ds[static_cast<std::size_t>(i)];
        if ((d_prev < 0) == (d < 0) || d_prev == 0) continue;
        double a = xs[static_cast<std::size_t>(i - 1)], b = xs[static_cast<std::size_t>(i)], da = d_prev;
        while (b - a > width_target) {
            double m = 0.5 * (a + b);
            double dm = displacement(m);
            if ((da < 0) == (dm < 0)) {
                a = m;
                da = dm;
            } else {
                b = m;
            }
        }
        auto st = d_prev > 0 ? CycleEstimate::Stability::Attracting : CycleEstimate::Stability::Repelling;
        cycles.push_back(finish(0.5 * (a + b), st));
    }

    // sign-definite touching cycles (semistable at this resolution): refine
    // interior extrema of d by bisecting the finite-difference slope, accept
    // only when the displacement residual is at solver-noise scale
    const double delta = 1e-4 * (hi - lo);
    auto slope = [&](double x) { return displacement(x + delta) - displacement(x - delta); };
    for (int i = 1; i < grid; ++i) {
        double dm = ds[static_cast<std::size_t>(i - 1)], dc = ds[static_cast<std::size_t>(i)],
               dp = ds[static_cast<std::size_t>(i + 1)];
        bool same_sign = (dm < 0) == (dc < 0) && (dc < 0) == (dp < 0);
        bool extremum = std::abs(dc) <= std::abs(dm) && std::abs(dc) <= std::abs(dp);
        if (!same_sign || !extremum || dc == 0) continue;
        double a = xs[static_cast<std::size_t>(i - 1)], b = xs[static_cast<std::size_t>(i + 1)];
        double sa = slope(a), sb = slope(b);
        if ((sa < 0) == (sb < 0)) continue;
        while (b - a > 1e-7) {
            double m = 0.5 * (a + b);
            double sm = slope(m);
            if ((sa < 0) == (sm < 0)) {
                a = m;
                sa = sm;
            } else {
                b = m;
            }
        }
        double x_star = 0.5 * (a + b);
        if (std::abs(displacement(x_star)) <= 10 * tol)
            cycles.push_back(finish(x_star, CycleEstimate::Stability::Inconclusive));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const CycleEstimate& a, const CycleEstimate& b) { return a.x_cross < b.x_cross; });
    return cycles;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    // min_depth guards against premature convergence on integrands that
    // vanish at the symmetric sample points (trig monomials do)
    struct Rec {
        static double go(const std::function<double(double)>& f, double a, double m, double b,
                         double fa, double fm, double fb, double whole, double tol, int depth) {
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = (m - a) / 6 * (fa + 4 * flm + fm);
            double right = (b - m) / 6 * (fm + 4 * frm + fb);
            bool converged = depth >= 5 && std::abs(left + right - whole) < 15 * tol;
            if (depth > 40 || converged) return left + right + (left + right - whole) / 15;
            return go(f, a, lm, m, fa, flm, fm, left, tol / 2, depth + 1) +
                   go(f, m, rm, b, fm, frm, fb, right, tol / 2, depth + 1);
        }
    };
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return Rec::go(f, a, m, b, fa, fm, fb, whole, tol, 0);
}

double melnikov_quadrature(const PerturbedSystem& ps, const std::map<std::string, Rat>& bindings,
                           double h, int order, double tol) {
    if (h <= 0) fail(ErrorCode::Precondition, "h must be positive");
    if (order != 1) fail(ErrorCode::Precondition, "only first order is integrated numerically");
    std::map<std::string, double> pt;
    for (const auto& [k, v] : bindings) pt[k] = rat_to_double(v);
    double r = std::sqrt(2.0 * h);
    auto eval_poly = [&](const PlanarPoly& f, double x, double y) {
        double sum = 0;
        for (const auto& [key, coeff] : f.terms()) {
            double v = coeff.evaluate_double(pt);
            for (int k = 0; k < key.i; ++k) v *= x;
            for (int k = 0; k < key.j; ++k) v *= y;
            sum += v;
        }
        return sum;
    };
    auto integrand = [&](double t) {
        double x = r * std::cos(t), y = -r * std::sin(t);
        return eval_poly(ps.f1, x, y) * x + eval_poly(ps.g1, x, y) * y;
    };
    return adaptive_simpson(integrand, 0.0, 2.0 * M_PI, tol);
}

}  // namespace cyclelab
