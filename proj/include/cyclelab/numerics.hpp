#ifndef CYCLELAB_NUMERICS_HPP
#define CYCLELAB_NUMERICS_HPP

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cyclelab/sysdef.hpp"

namespace cyclelab {

/// Compiled double-precision evaluators for a system at bound parameters.
class NumericSystem {
public:
    NumericSystem() = default;
    NumericSystem(const PlanarSystem& sys, const std::map<std::string, Rat>& bindings);

    double P(double x, double y) const { return eval(p_, x, y); }
    double Q(double x, double y) const { return eval(q_, x, y); }
    int degree() const { return degree_; }
    const std::map<std::string, Rat>& parameter_snapshot() const { return params_; }

private:
    struct Term {
        double c;
        int i, j;
    };
    std::vector<Term> p_, q_;
    int degree_ = 0;
    std::map<std::string, Rat> params_;

    static double eval(const std::vector<Term>& terms, double x, double y);
    static std::vector<Term> compile(const PlanarPoly& f, const std::map<std::string, Rat>& bindings);
};

/// One accepted integrator step with its dense-output interpolant.
struct DenseStep {
    double t0, h;
    std::array<std::array<double, 5>, 2> rcont;  // per component

    std::array<double, 2> eval(double t) const;
    std::array<double, 2> eval_theta(double theta) const;
};

struct Trajectory {
    std::vector<DenseStep> steps;
    double t_end = 0;
    std::array<double, 2> y_end{};

    std::array<double, 2> eval(double t) const;
    /// Uniformly spaced samples (t, x, y) for output.
    std::vector<std::array<double, 3>> sample(int count) const;
};

struct IntegrateOptions {
    double tol = 1e-10;      // relative and absolute local error tolerance
    double max_step = 1.0;
    double blowup_norm = 1e6;
};

/// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) with dense output.
Trajectory integrate(const NumericSystem& sys, std::array<double, 2> x0, double t_max,
                     const IntegrateOptions& opt = {});

/// Integrates until the orbit crosses {y = 0, x > 0} upward (ydot > 0);
/// returns the crossing abscissa and time. Throws NoReturn if no crossing
/// happens before t_max.
struct ReturnPoint {
    double x;
    double t;
};
ReturnPoint poincare_return(const NumericSystem& sys, double x0, double tol = 1e-10,
                            double t_max = 1e4);

struct CycleEstimate {
    double x_cross = 0;
    double period = 0;
    enum class Stability { Attracting, Repelling, Inconclusive } stability = Stability::Inconclusive;
    double residual = 0;
};

/// Scans the displacement d(x) = poincare_return(x) - x on a grid over
/// (lo, hi) and bisects each sign change.
std::vector<CycleEstimate> find_cycles(const NumericSystem& sys, double lo, double hi, int grid,
                                       double tol = 1e-10);

/// Adaptive Simpson quadrature of f over [a, b] to the given tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

/// Numerical first-order Melnikov integral: quadrature of
/// f1 H_x + g1 H_y over the orbit of energy h. Oracle for the symbolic M1.
double melnikov_quadrature(const PerturbedSystem& ps, const std::map<std::string, Rat>& bindings,
                           double h, int order = 1, double tol = 1e-12);

}  // namespace cyclelab

#endif
