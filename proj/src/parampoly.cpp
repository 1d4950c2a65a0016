#include "cyclelab/parampoly.hpp"

#include <algorithm>
#include <sstream>

namespace cyclelab {

ParamPoly ParamPoly::constant(SymTab table, const Rat& value) {
    ParamPoly p(std::move(table));
    if (value != 0) p.terms_[Mono(p.table_->size(), 0)] = value;
    return p;
}

ParamPoly ParamPoly::symbol(SymTab table, const std::string& name) {
    auto idx = table->index(name);
    if (!idx) fail(ErrorCode::UnknownSymbol, "symbol '" + name + "' not declared");
    ParamPoly p(std::move(table));
    Mono m(p.table_->size(), 0);
    m[*idx] = 1;
    p.terms_[m] = Rat(1);
    return p;
}

bool ParamPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && mono_total_degree(terms_.begin()->first) == 0;
}

Rat ParamPoly::constant_value() const {
    Mono zero(table_->size(), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Rat(0) : it->second;
}

int ParamPoly::total_degree() const {
    if (terms_.empty()) return -1;
    // graded order: the last key has maximal total degree
    return static_cast<int>(mono_total_degree(terms_.rbegin()->first));
}

void ParamPoly::add_term(const Mono& mono, const Rat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

void ParamPoly::align(const ParamPoly& a, const ParamPoly& b, ParamPoly& a_out, ParamPoly& b_out) {
    if (a.table_ == b.table_ || a.table_->same_names(*b.table_)) {
        a_out = a;
        b_out = b;
        if (a.table_ != b.table_) b_out.table_ = a.table_;
        return;
    }
    SymTab merged = merge_tables(a.table_, b.table_);
    a_out = a.remap(merged);
    b_out = b.remap(merged);
}

ParamPoly ParamPoly::remap(const SymTab& target) const {
    if (target == table_ || target->same_names(*table_)) {
        ParamPoly r = *this;
        r.table_ = target;
        return r;
    }
    // a symbol may be absent from the target as long as it is unused
    std::vector<std::optional<std::size_t>> where(table_->size());
    for (std::size_t i = 0; i < table_->size(); ++i) where[i] = target->index(table_->name(i));
    ParamPoly r(target);
    for (const auto& [m, c] : terms_) {
        Mono nm(target->size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!where[i])
                fail(ErrorCode::UnknownSymbol, "remap target misses used symbol '" + table_->name(i) + "'");
            nm[*where[i]] = m[i];
        }
        r.terms_[nm] = c;
    }
    return r;
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r(table_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

ParamPoly ParamPoly::operator+(const ParamPoly& rhs) const {
    ParamPoly a, b;
    align(*this, rhs, a, b);
    for (const auto& [m, c] : b.terms_) a.add_term(m, c);
    return a;
}

ParamPoly ParamPoly::operator-(const ParamPoly& rhs) const {
    ParamPoly a, b;
    align(*this, rhs, a, b);
    for (const auto& [m, c] : b.terms_) a.add_term(m, -c);
    return a;
}

ParamPoly ParamPoly::operator*(const ParamPoly& rhs) const {
    ParamPoly a, b;
    align(*this, rhs, a, b);
    ParamPoly r(a.table_);
    Mono prod(a.table_->size(), 0);
    Rat coeff;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < prod.size(); ++i) {
                unsigned e = static_cast<unsigned>(ma[i]) + mb[i];
                if (e > 255) fail(ErrorCode::Precondition, "parameter exponent exceeds 255");
                prod[i] = static_cast<std::uint8_t>(e);
            }
            coeff = ca * cb;
            r.add_term(prod, coeff);
        }
    }
    return r;
}

ParamPoly ParamPoly::operator*(const Rat& scalar) const {
    if (scalar == 0) return ParamPoly(table_);
    ParamPoly r(table_);
    for (const auto& [m, c] : terms_) r.terms_[m] = c * scalar;
    return r;
}

ParamPoly ParamPoly::pow(unsigned e) const {
    ParamPoly acc = constant(table_, Rat(1));
    ParamPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

bool ParamPoly::operator==(const ParamPoly& rhs) const {
    ParamPoly a, b;
    align(*this, rhs, a, b);
    return a.terms_ == b.terms_;
}

ParamPoly ParamPoly::substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const {
    if (bindings.empty()) return *this;
    SymTab target = table_;
    for (const auto& [name, image] : bindings) {
        if (!table_->index(name)) fail(ErrorCode::UnknownSymbol, "binding for undeclared symbol '" + name + "'");
        target = merge_tables(target, image.table());
    }
    // images remapped to the merged table; which[i] >= 0 iff symbol i is bound
    std::vector<ParamPoly> remapped;
    remapped.reserve(bindings.size());
    for (const auto& [name, image] : bindings) remapped.push_back(image.remap(target));
    std::vector<int> which(table_->size(), -1);
    for (std::size_t b = 0; b < bindings.size(); ++b) {
        auto idx = table_->index(bindings[b].first);
        which[*idx] = static_cast<int>(b);
    }

    // cache powers of each image up to the maximal exponent used
    std::vector<std::vector<ParamPoly>> powers(bindings.size());
    for (const auto& [m, c] : terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (which[i] >= 0 && m[i] > 0) {
                auto& cache = powers[which[i]];
                if (cache.empty()) cache.push_back(ParamPoly::constant(target, Rat(1)));
                while (cache.size() <= m[i]) cache.push_back(cache.back() * remapped[which[i]]);
            }
        }
    }

    ParamPoly result(target);
    for (const auto& [m, c] : terms_) {
        Mono residual(target->size(), 0);
        ParamPoly factor = ParamPoly::constant(target, c);
        bool any_image = false;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (which[i] >= 0) {
                factor = factor * powers[which[i]][m[i]];
                any_image = true;
            } else {
                auto idx = target->index(table_->name(i));
                residual[*idx] = m[i];
            }
        }
        if (!any_image) {
            result.add_term(residual, c);
            continue;
        }
        for (const auto& [fm, fc] : factor.terms()) {
            Mono full = fm;
            for (std::size_t i = 0; i < full.size(); ++i)
                full[i] = static_cast<std::uint8_t>(full[i] + residual[i]);
            result.add_term(full, fc);
        }
    }
    return result;
}

ParamPoly ParamPoly::derivative(const std::string& symbol) const {
    auto idx = table_->index(symbol);
    if (!idx) fail(ErrorCode::UnknownSymbol, "derivative w.r.t. undeclared symbol '" + symbol + "'");
    ParamPoly r(table_);
    for (const auto& [m, c] : terms_) {
        if (m[*idx] == 0) continue;
        Mono dm = m;
        dm[*idx] -= 1;
        r.add_term(dm, c * Rat(static_cast<long>(m[*idx])));
    }
    return r;
}

Rat ParamPoly::evaluate(const std::map<std::string, Rat>& point) const {
    std::vector<const Rat*> values(table_->size(), nullptr);
    for (std::size_t i = 0; i < table_->size(); ++i) {
        auto it = point.find(table_->name(i));
        if (it != point.end()) values[i] = &it->second;
    }
    Rat sum(0);
    for (const auto& [m, c] : terms_) {
        Rat term = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!values[i]) fail(ErrorCode::UnboundSymbol, "symbol '" + table_->name(i) + "' unbound");
            for (unsigned k = 0; k < m[i]; ++k) term *= *values[i];
        }
        sum += term;
    }
    return sum;
}

double ParamPoly::evaluate_double(const std::map<std::string, double>& point) const {
    std::vector<double> values(table_->size(), 0.0);
    std::vector<bool> have(table_->size(), false);
    for (std::size_t i = 0; i < table_->size(); ++i) {
        auto it = point.find(table_->name(i));
        if (it != point.end()) {
            values[i] = it->second;
            have[i] = true;
        }
    }
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
        double term = rat_to_double(c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!have[i]) fail(ErrorCode::UnboundSymbol, "symbol '" + table_->name(i) + "' unbound");
            for (unsigned k = 0; k < m[i]; ++k) term *= values[i];
        }
        sum += term;
    }
    return sum;
}

std::pair<Rat, ParamPoly> ParamPoly::content_and_primitive() const {
    if (terms_.empty()) fail(ErrorCode::ZeroPolynomial, "content of zero polynomial");
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat content = rat_from_mpz(num_gcd, den_lcm);  // positive: gcd of |num| values
    ParamPoly primitive(table_);
    Rat inv = Rat(1) / content;
    for (const auto& [m, c] : terms_) primitive.terms_[m] = c * inv;
    return {content, primitive};
}

std::pair<Mono, Rat> ParamPoly::leading_term() const {
    if (terms_.empty()) fail(ErrorCode::ZeroPolynomial, "leading term of zero polynomial");
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

int ParamPoly::degree_in(const std::vector<std::size_t>& symbol_indices) const {
    int deg = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (auto i : symbol_indices) d += m[i];
        deg = std::max(deg, d);
    }
    return deg;
}

bool proportional(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    auto [ca, pa] = a.content_and_primitive();
    auto [cb, pb] = b.content_and_primitive();
    return pa == pb;
}

std::optional<ParamPoly> try_divide_exact(const ParamPoly& p, const ParamPoly& d) {
    if (d.is_zero()) return std::nullopt;
    SymTab t = merge_tables(p.table(), d.table());
    ParamPoly rem = p.remap(t);
    ParamPoly div = d.remap(t);
    ParamPoly quot(t);
    auto [dlm, dlc] = div.leading_term();
    while (!rem.is_zero()) {
        auto [rlm, rlc] = rem.leading_term();
        Mono q(t->size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (rlm[i] < dlm[i]) return std::nullopt;
            q[i] = static_cast<std::uint8_t>(rlm[i] - dlm[i]);
        }
        ParamPoly qt(t);
        qt.add_term(q, rlc / dlc);
        quot = quot + qt;
        rem = rem - qt * div;
    }
    return quot;
}

std::optional<ParamPoly> solve_linear_binding(const ParamPoly& q, const std::string& symbol) {
    if (!q.table()->index(symbol)) return std::nullopt;
    ParamPoly B = q.derivative(symbol);
    if (!B.derivative(symbol).is_zero() || B.is_zero()) return std::nullopt;  // not linear in s
    ParamPoly A = q.substitute({{symbol, ParamPoly::zero(q.table())}});
    if (A.is_zero()) return ParamPoly::zero(q.table());
    auto quot = try_divide_exact(A, B);
    if (!quot) return std::nullopt;
    return -*quot;
}

std::string render_term(const Rat& coeff, const std::vector<std::pair<std::string, unsigned>>& factors) {
    std::ostringstream out;
    bool coeff_shown = false;
    // "-x^2" would re-parse as (-x)^2 under the grammar, so a bare minus is
    // only safe when the first factor carries no exponent
    bool bare_minus_ok = !factors.empty() && factors[0].second == 1;
    if (factors.empty() || (coeff != 1 && coeff != -1) || (coeff == -1 && !bare_minus_ok)) {
        out << rat_to_string(coeff);
        coeff_shown = true;
    } else if (coeff == -1) {
        out << "-";
    }
    bool first = !coeff_shown;
    for (const auto& [name, e] : factors) {
        if (!first) out << "*";
        first = false;
        out << name;
        if (e > 1) out << "^" << e;
    }
    return out.str();
}

std::string ParamPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rat c = it->second;
        if (!first) {
            out << (c > 0 ? " + " : " - ");
            if (c < 0) c = -c;
        }
        first = false;
        std::vector<std::pair<std::string, unsigned>> factors;
        for (std::size_t i = 0; i < it->first.size(); ++i)
            if (it->first[i] > 0) factors.emplace_back(table_->name(i), it->first[i]);
        out << render_term(c, factors);
    }
    return out.str();
}

}  // namespace cyclelab
