#ifndef CYCLELAB_HPIPOLY_HPP
#define CYCLELAB_HPIPOLY_HPP

#include <map>
#include <string>

#include "cyclelab/parampoly.hpp"

namespace cyclelab {

/// Polynomial in the energy variable h with ParamPoly coefficients and an
/// explicit symbolic factor pi^pi_power. The pi exponent is never folded
/// into the coefficients.
class HPiPoly {
public:
    HPiPoly() : table_(SymbolTable::make({})) {}
    explicit HPiPoly(SymTab table, int pi_power = 0) : table_(std::move(table)), pi_power_(pi_power) {}

    static HPiPoly zero(SymTab table) { return HPiPoly(std::move(table)); }

    const SymTab& table() const { return table_; }
    const std::map<int, ParamPoly>& coeffs() const { return coeffs_; }
    int pi_power() const { return pi_power_; }

    bool is_zero() const { return coeffs_.empty(); }
    int degree_h() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
    ParamPoly coeff(int h_power) const;

    void add_term(int h_power, const ParamPoly& c);
    void set_pi_power(int p);

    HPiPoly operator-() const;
    HPiPoly operator+(const HPiPoly& rhs) const;
    HPiPoly operator-(const HPiPoly& rhs) const;
    HPiPoly operator*(const HPiPoly& rhs) const;
    HPiPoly operator*(const Rat& s) const;
    HPiPoly pow(unsigned e) const;

    bool operator==(const HPiPoly& rhs) const;
    bool operator!=(const HPiPoly& rhs) const { return !(*this == rhs); }

    HPiPoly substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const;

    /// Exact evaluation; requires pi_power == 0.
    Rat evaluate_exact(const std::map<std::string, Rat>& point, const Rat& h) const;
    /// Double evaluation with pi expanded numerically.
    double evaluate_double(const std::map<std::string, double>& point, double h) const;

    std::string str() const;

private:
    SymTab table_;
    std::map<int, ParamPoly> coeffs_;
    int pi_power_ = 0;
};

/// True when a == b or a == -b.
bool equal_up_to_sign(const HPiPoly& a, const HPiPoly& b);

}  // namespace cyclelab

#endif
