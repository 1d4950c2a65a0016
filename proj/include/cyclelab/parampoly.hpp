#ifndef CYCLELAB_PARAMPOLY_HPP
#define CYCLELAB_PARAMPOLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclelab/rat.hpp"
#include "cyclelab/symbols.hpp"

namespace cyclelab {

/// Exponent vector over a symbol table; entry i is the power of symbol i.
using Mono = std::vector<std::uint8_t>;

inline unsigned mono_total_degree(const Mono& m) {
    unsigned t = 0;
    for (auto e : m) t += e;
    return t;
}

/// Graded lexicographic order (ascending): lower total degree first; ties
/// broken lexicographically with earlier-declared symbols taking priority.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned ta = mono_total_degree(a), tb = mono_total_degree(b);
        if (ta != tb) return ta < tb;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Multivariate polynomial in declared parameter symbols over Rat.
/// Normal form: no zero coefficients stored; every exponent vector has
/// exactly table->size() entries.
class ParamPoly {
public:
    using TermMap = std::map<Mono, Rat, MonoLess>;

    ParamPoly() : table_(SymbolTable::make({})) {}
    explicit ParamPoly(SymTab table) : table_(std::move(table)) {}

    static ParamPoly zero(SymTab table) { return ParamPoly(std::move(table)); }
    static ParamPoly constant(SymTab table, const Rat& value);
    static ParamPoly constant(const Rat& value) { return constant(SymbolTable::make({}), value); }
    static ParamPoly symbol(SymTab table, const std::string& name);

    const SymTab& table() const { return table_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (0 if absent).
    Rat constant_value() const;
    int total_degree() const;  // -1 for the zero polynomial

    void add_term(const Mono& mono, const Rat& coeff);

    ParamPoly operator-() const;
    ParamPoly operator+(const ParamPoly& rhs) const;
    ParamPoly operator-(const ParamPoly& rhs) const;
    ParamPoly operator*(const ParamPoly& rhs) const;
    ParamPoly operator*(const Rat& scalar) const;
    ParamPoly pow(unsigned e) const;

    bool operator==(const ParamPoly& rhs) const;
    bool operator!=(const ParamPoly& rhs) const { return !(*this == rhs); }

    /// Simultaneous substitution of parameter symbols by polynomials.
    ParamPoly substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const;

    ParamPoly derivative(const std::string& symbol) const;

    /// Exact value; every symbol appearing with nonzero exponent must be bound.
    Rat evaluate(const std::map<std::string, Rat>& point) const;
    double evaluate_double(const std::map<std::string, double>& point) const;

    /// p = content * primitive with content > 0 rational and primitive having
    /// coprime integer coefficients; signs are untouched.
    std::pair<Rat, ParamPoly> content_and_primitive() const;

    /// Leading (graded-lex greatest) term; polynomial must be nonzero.
    std::pair<Mono, Rat> leading_term() const;

    /// Rebuild over a table containing all of this one's symbols.
    ParamPoly remap(const SymTab& target) const;

    /// Total degree counting only the listed symbols.
    int degree_in(const std::vector<std::size_t>& symbol_indices) const;

    std::string str() const;

private:
    SymTab table_;
    TermMap terms_;

    static void align(const ParamPoly& a, const ParamPoly& b, ParamPoly& a_out, ParamPoly& b_out);
};

inline ParamPoly operator*(const Rat& scalar, const ParamPoly& p) { return p * scalar; }

/// True when a = c * b for some positive rational c (sign-preserving
/// proportionality). Zero is proportional only to zero.
bool proportional(const ParamPoly& a, const ParamPoly& b);

/// Exact division: returns q with p = q * d, or nothing if d does not
/// divide p (or d's leading coefficient makes reduction impossible).
std::optional<ParamPoly> try_divide_exact(const ParamPoly& p, const ParamPoly& d);

/// For q = A + B*s linear in the symbol s with B dividing A exactly,
/// returns the image -A/B so that substituting s by it annihilates q.
std::optional<ParamPoly> solve_linear_binding(const ParamPoly& q, const std::string& symbol);

/// Renders one flattened monomial term "coeff*sym^e*..." without sign
/// normalization; used by the polynomial renderers.
std::string render_term(const Rat& coeff, const std::vector<std::pair<std::string, unsigned>>& factors);

}  // namespace cyclelab

#endif
