#ifndef CYCLELAB_MELNIKOV_HPP
#define CYCLELAB_MELNIKOV_HPP

#include <map>
#include <string>
#include <vector>

#include "cyclelab/hpipoly.hpp"
#include "cyclelab/ratpoly.hpp"
#include "cyclelab/sysdef.hpp"

namespace cyclelab {

/// Trigonometric polynomial on the orbit x = sqrt(2h) cos t,
/// y = -sqrt(2h) sin t: term (i, j, m) is cos^i t * sin^j t * sqrt(2h)^m.
/// Internal representation for the orbit integrals; every half power of h
/// must cancel by the time an integral is reported.
struct TrigPoly {
    struct Key {
        int cos_pow, sin_pow, sqrt2h_pow;
        bool operator<(const Key& o) const {
            return std::tie(cos_pow, sin_pow, sqrt2h_pow) < std::tie(o.cos_pow, o.sin_pow, o.sqrt2h_pow);
        }
    };
    SymTab table;
    std::map<Key, ParamPoly> terms;

    static TrigPoly on_orbit(const PlanarPoly& f);

    /// Integral over one period, exact; rational multiple of pi in each
    /// integer power of h.
    HPiPoly integrate() const;
};

/// Exact Wallis integral over a full period: the rational r with
/// integral_0^{2pi} cos^m t sin^n t dt = r * pi.
Rat wallis(int m, int n);

struct MelnikovResult {
    HPiPoly M;
    int order = 1;
    bool time_reversed = false;
};

/// First Melnikov function M1(h) = closed-orbit integral of
/// (f1 H_x + g1 H_y) dt for the harmonic Hamiltonian.
MelnikovResult melnikov1(const PerturbedSystem& ps);

/// Closed form for the odd-degree family: h(2h-1)(2 b00 +
/// sum_{1<=i+j<=n} c_ij b{2i}{2j} h^{i+j}) pi with
/// c_ij = (2i)!(2j)!(2j+1) / (2^{i+j-1} i! j! (i+j+1)!).
HPiPoly melnikov1_closed_form(int n, const std::map<std::pair<int, int>, ParamPoly>& b);
/// Fully symbolic variant over the kukles_odd(n) coefficient table.
HPiPoly melnikov1_closed_form(int n);

/// Coefficients b_s with M = h * sum_s b_s h^s; the shared pi power is
/// returned alongside.
struct BCoefficients {
    std::vector<ParamPoly> b;
    int pi_power = 0;
};
BCoefficients b_coeffs(const HPiPoly& M);

/// Determinant of the Jacobian of (b_0..b_{k-1}) with respect to the k
/// chosen symbols, evaluated exactly at the point.
Rat han_jacobian(const std::vector<ParamPoly>& b, const std::vector<std::string>& delta,
                 const std::map<std::string, Rat>& point);

/// Decomposition g1 dx - f1 dy = dS + R dH for the harmonic H, found by a
/// linear solve over monomial one-forms with escalating ansatz degree.
struct FrancoiseDecomposition {
    PlanarPoly S;
    PlanarPoly R;
    bool residual_zero = false;
};
FrancoiseDecomposition francoise_decompose(const PerturbedSystem& ps);

/// Second Melnikov function M2(h) = closed-orbit integral of R * omega_1;
/// requires M1 identically zero.
MelnikovResult melnikov2(const PerturbedSystem& ps);

/// Closed-orbit integral of S * y^{-k} dx on H = h for k in {0, 1}.
HPiPoly line_integral_dx(const PlanarPoly& S, int y_pole_order);

/// Real roots of M (pi factor divided out, parameters bound at the point)
/// in (lo, hi]; unbounded takes hi = +infinity.
std::vector<RootInterval> isolate_real_roots(const HPiPoly& M, const std::map<std::string, Rat>& point,
                                             const Rat& lo, const Rat& hi, bool unbounded);

/// M with every parameter bound, as a rational polynomial in h (pi dropped).
RatPoly to_ratpoly_in_h(const HPiPoly& M, const std::map<std::string, Rat>& point);

}  // namespace cyclelab

#endif
