#ifndef CYCLELAB_PLANARPOLY_HPP
#define CYCLELAB_PLANARPOLY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cyclelab/parampoly.hpp"

namespace cyclelab {

/// Power of the phase variables: x^i * y^j.
struct PhaseKey {
    int i = 0;  // x exponent
    int j = 0;  // y exponent

    int degree() const { return i + j; }
    bool operator==(const PhaseKey& o) const { return i == o.i && j == o.j; }
};

/// Graded order with y ranked above x (ascending).
struct PhaseKeyLess {
    bool operator()(const PhaseKey& a, const PhaseKey& b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.j < b.j;
    }
};

/// Polynomial in the phase variables x, y with ParamPoly coefficients.
/// All coefficients live over the same symbol table.
class PlanarPoly {
public:
    using TermMap = std::map<PhaseKey, ParamPoly, PhaseKeyLess>;

    PlanarPoly() : table_(SymbolTable::make({})) {}
    explicit PlanarPoly(SymTab table) : table_(std::move(table)) {}

    static PlanarPoly zero(SymTab table) { return PlanarPoly(std::move(table)); }
    static PlanarPoly constant(SymTab table, const Rat& v);
    static PlanarPoly var_x(SymTab table) { return monomial(std::move(table), 1, 0, Rat(1)); }
    static PlanarPoly var_y(SymTab table) { return monomial(std::move(table), 0, 1, Rat(1)); }
    static PlanarPoly monomial(SymTab table, int i, int j, const Rat& coeff);
    static PlanarPoly from_param(const ParamPoly& p);

    const SymTab& table() const { return table_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // total phase degree, -1 for zero
    ParamPoly coeff(int i, int j) const;

    void add_term(const PhaseKey& key, const ParamPoly& coeff);

    PlanarPoly operator-() const;
    PlanarPoly operator+(const PlanarPoly& rhs) const;
    PlanarPoly operator-(const PlanarPoly& rhs) const;
    PlanarPoly operator*(const PlanarPoly& rhs) const;
    PlanarPoly operator*(const ParamPoly& scalar) const;
    PlanarPoly operator*(const Rat& scalar) const;
    PlanarPoly pow(unsigned e) const;

    /// Product discarding monomials of phase degree above max_degree.
    PlanarPoly mul_truncated(const PlanarPoly& rhs, int max_degree) const;

    bool operator==(const PlanarPoly& rhs) const;
    bool operator!=(const PlanarPoly& rhs) const { return !(*this == rhs); }

    PlanarPoly dx() const;  // partial derivative in x
    PlanarPoly dy() const;
    PlanarPoly derivative_param(const std::string& symbol) const;

    /// Substitutes parameter symbols (phase variables are untouched).
    PlanarPoly substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const;

    /// P(x, -y) and P(-x, y).
    PlanarPoly reflect_y() const;
    PlanarPoly reflect_x() const;

    /// Keeps only monomials of the given total phase degree.
    PlanarPoly homogeneous_part(int degree) const;
    PlanarPoly truncate_degree(int max_degree) const;

    /// Exact value; point must bind "x", "y", and all parameters.
    Rat evaluate(const std::map<std::string, Rat>& point) const;

    int min_phase_degree() const;  // smallest total degree present, -1 for zero

    PlanarPoly remap(const SymTab& target) const;

    std::string str() const;

private:
    SymTab table_;
    TermMap terms_;

    static void align(const PlanarPoly& a, const PlanarPoly& b, PlanarPoly& a_out, PlanarPoly& b_out);
};

inline PlanarPoly operator*(const Rat& s, const PlanarPoly& p) { return p * s; }
inline PlanarPoly operator*(const ParamPoly& s, const PlanarPoly& p) { return p * s; }

/// Exact quotient of p by d treating both as polynomials in y whose
/// coefficients are polynomials in x and the parameters. Requires the
/// leading y-coefficient of d to be a nonzero rational constant.
/// Returns (quotient, remainder) with deg_y(remainder) < deg_y(d).
std::pair<PlanarPoly, PlanarPoly> divide_in_y(const PlanarPoly& p, const PlanarPoly& d);

/// Graded multivariate reduction of p by d; requires the leading phase
/// monomial of d to carry a rational-constant coefficient. Returns the
/// quotient if the reduction ends with zero remainder.
std::optional<PlanarPoly> try_divide_exact(const PlanarPoly& p, const PlanarPoly& d);

}  // namespace cyclelab

#endif
