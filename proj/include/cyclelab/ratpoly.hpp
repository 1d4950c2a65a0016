#ifndef CYCLELAB_RATPOLY_HPP
#define CYCLELAB_RATPOLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cyclelab/rat.hpp"

namespace cyclelab {

/// Dense univariate polynomial over Rat, coefficients ascending by power.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static RatPoly constant(const Rat& v) { return RatPoly({v}); }

    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rat coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rat(0); }
    Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat eval(const Rat& x) const;
    double eval_double(double x) const;

    RatPoly operator-() const;
    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator*(const Rat& s) const;
    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    RatPoly derivative() const;

    /// Euclidean division; divisor must be nonzero.
    std::pair<RatPoly, RatPoly> divrem(const RatPoly& d) const;

    /// Monic generator of the ideal (this, o); gcd(0,0) = 0.
    static RatPoly gcd(const RatPoly& a, const RatPoly& b);

    /// Primitive part with integer coprime coefficients, sign preserved.
    RatPoly primitive() const;

    /// Yun square-free decomposition: result[i] (i >= 1) collects the roots
    /// of multiplicity exactly i; product of result[i]^i = primitive(this).
    std::vector<RatPoly> squarefree_decomposition() const;

    std::string str(const std::string& var = "h") const;

private:
    std::vector<Rat> c_;
    void normalize();
};

/// Isolated real root: either exact (lo == hi == value) or an open-ended
/// isolating interval (lo, hi] containing exactly one root.
struct RootInterval {
    Rat lo;
    Rat hi;
    int multiplicity = 1;
    bool exact = false;
};

/// All real roots of p in (lo, hi], with exact multiplicities. Pass
/// unbounded = true to take hi = +infinity (the value of hi is ignored).
std::vector<RootInterval> isolate_roots(const RatPoly& p, const Rat& lo, const Rat& hi, bool unbounded);

/// Number of distinct real roots of a square-free polynomial in (a, b].
int sturm_count(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b);

std::vector<RatPoly> sturm_chain(const RatPoly& squarefree);

/// Cauchy bound: every real root lies in (-B, B).
Rat root_bound(const RatPoly& p);

}  // namespace cyclelab

#endif
