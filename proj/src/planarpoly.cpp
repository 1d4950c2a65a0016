#include "cyclelab/planarpoly.hpp"

#include <algorithm>
#include <sstream>

namespace cyclelab {

PlanarPoly PlanarPoly::constant(SymTab table, const Rat& v) {
    PlanarPoly p(table);
    if (v != 0) p.terms_[{0, 0}] = ParamPoly::constant(std::move(table), v);
    return p;
}

PlanarPoly PlanarPoly::monomial(SymTab table, int i, int j, const Rat& coeff) {
    PlanarPoly p(table);
    if (coeff != 0) p.terms_[{i, j}] = ParamPoly::constant(std::move(table), coeff);
    return p;
}

PlanarPoly PlanarPoly::from_param(const ParamPoly& c) {
    PlanarPoly p(c.table());
    if (!c.is_zero()) p.terms_[{0, 0}] = c;
    return p;
}

int PlanarPoly::degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
}

int PlanarPoly::min_phase_degree() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.degree();
}

ParamPoly PlanarPoly::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? ParamPoly::zero(table_) : it->second;
}

void PlanarPoly::add_term(const PhaseKey& key, const ParamPoly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void PlanarPoly::align(const PlanarPoly& a, const PlanarPoly& b, PlanarPoly& a_out, PlanarPoly& b_out) {
    if (a.table_ == b.table_ || a.table_->same_names(*b.table_)) {
        a_out = a;
        b_out = b;
        return;
    }
    SymTab merged = merge_tables(a.table_, b.table_);
    a_out = a.remap(merged);
    b_out = b.remap(merged);
}

PlanarPoly PlanarPoly::remap(const SymTab& target) const {
    PlanarPoly r(target);
    for (const auto& [k, c] : terms_) r.terms_[k] = c.remap(target);
    return r;
}

PlanarPoly PlanarPoly::operator-() const {
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

PlanarPoly PlanarPoly::operator+(const PlanarPoly& rhs) const {
    PlanarPoly a, b;
    align(*this, rhs, a, b);
    for (const auto& [k, c] : b.terms_) a.add_term(k, c);
    return a;
}

PlanarPoly PlanarPoly::operator-(const PlanarPoly& rhs) const {
    PlanarPoly a, b;
    align(*this, rhs, a, b);
    for (const auto& [k, c] : b.terms_) a.add_term(k, -c);
    return a;
}

PlanarPoly PlanarPoly::operator*(const PlanarPoly& rhs) const { return mul_truncated(rhs, -1); }

PlanarPoly PlanarPoly::mul_truncated(const PlanarPoly& rhs, int max_degree) const {
    PlanarPoly a, b;
    align(*this, rhs, a, b);
    PlanarPoly r(a.table_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            PhaseKey k{ka.i + kb.i, ka.j + kb.j};
            if (max_degree >= 0 && k.degree() > max_degree) continue;
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

PlanarPoly PlanarPoly::operator*(const ParamPoly& scalar) const {
    if (scalar.is_zero()) return PlanarPoly(table_);
    SymTab merged = merge_tables(table_, scalar.table());
    ParamPoly s = scalar.remap(merged);
    PlanarPoly r(merged);
    for (const auto& [k, c] : terms_) r.add_term(k, c.remap(merged) * s);
    return r;
}

PlanarPoly PlanarPoly::operator*(const Rat& scalar) const {
    if (scalar == 0) return PlanarPoly(table_);
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_) r.terms_[k] = c * scalar;
    return r;
}

PlanarPoly PlanarPoly::pow(unsigned e) const {
    PlanarPoly acc = constant(table_, Rat(1));
    PlanarPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

bool PlanarPoly::operator==(const PlanarPoly& rhs) const {
    PlanarPoly a, b;
    align(*this, rhs, a, b);
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first) || ia->second != ib->second) return false;
    }
    return true;
}

PlanarPoly PlanarPoly::dx() const {
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_) {
        if (k.i == 0) continue;
        r.add_term({k.i - 1, k.j}, c * Rat(k.i));
    }
    return r;
}

PlanarPoly PlanarPoly::dy() const {
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_) {
        if (k.j == 0) continue;
        r.add_term({k.i, k.j - 1}, c * Rat(k.j));
    }
    return r;
}

PlanarPoly PlanarPoly::derivative_param(const std::string& symbol) const {
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_) r.add_term(k, c.derivative(symbol));
    return r;
}

PlanarPoly PlanarPoly::substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const {
    if (bindings.empty()) return *this;
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_) r.add_term(k, c.substitute(bindings));
    // coefficient tables may have grown; renormalize to a single table
    if (!r.terms_.empty()) {
        SymTab t = r.terms_.begin()->second.table();
        for (const auto& [k, c] : r.terms_) t = merge_tables(t, c.table());
        if (t != r.table_) r = r.remap(t);
    }
    return r;
}

PlanarPoly PlanarPoly::reflect_y() const {
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_) r.terms_[k] = (k.j % 2 == 0) ? c : -c;
    return r;
}

PlanarPoly PlanarPoly::reflect_x() const {
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_) r.terms_[k] = (k.i % 2 == 0) ? c : -c;
    return r;
}

PlanarPoly PlanarPoly::homogeneous_part(int degree) const {
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_)
        if (k.degree() == degree) r.terms_[k] = c;
    return r;
}

PlanarPoly PlanarPoly::truncate_degree(int max_degree) const {
    PlanarPoly r(table_);
    for (const auto& [k, c] : terms_)
        if (k.degree() <= max_degree) r.terms_[k] = c;
    return r;
}

Rat PlanarPoly::evaluate(const std::map<std::string, Rat>& point) const {
    auto xi = point.find("x");
    auto yi = point.find("y");
    if (xi == point.end()) fail(ErrorCode::UnboundSymbol, "phase variable 'x' unbound");
    if (yi == point.end()) fail(ErrorCode::UnboundSymbol, "phase variable 'y' unbound");
    Rat sum(0);
    for (const auto& [k, c] : terms_) {
        Rat term = c.evaluate(point);
        for (int q = 0; q < k.i; ++q) term *= xi->second;
        for (int q = 0; q < k.j; ++q) term *= yi->second;
        sum += term;
    }
    return sum;
}

std::string PlanarPoly::str() const {
    if (terms_.empty()) return "0";
    // flatten: phase monomials descending, parameter monomials descending within
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& key = it->first;
        const auto& coeff = it->second;
        for (auto pt = coeff.terms().rbegin(); pt != coeff.terms().rend(); ++pt) {
            Rat c = pt->second;
            if (!first) {
                out << (c > 0 ? " + " : " - ");
                if (c < 0) c = -c;
            }
            first = false;
            std::vector<std::pair<std::string, unsigned>> factors;
            for (std::size_t s = 0; s < pt->first.size(); ++s)
                if (pt->first[s] > 0) factors.emplace_back(table_->name(s), pt->first[s]);
            if (key.i > 0) factors.emplace_back("x", static_cast<unsigned>(key.i));
            if (key.j > 0) factors.emplace_back("y", static_cast<unsigned>(key.j));
            out << render_term(c, factors);
        }
    }
    return out.str();
}

std::pair<PlanarPoly, PlanarPoly> divide_in_y(const PlanarPoly& p, const PlanarPoly& d) {
    if (d.is_zero()) fail(ErrorCode::ZeroCurve, "division by zero polynomial");
    // leading coefficient of d in y must be a rational constant (x^0, params^0)
    int dy_deg = -1;
    for (const auto& [k, c] : d.terms()) dy_deg = std::max(dy_deg, k.j);
    PlanarPoly dlead(d.table());
    for (const auto& [k, c] : d.terms())
        if (k.j == dy_deg) dlead.add_term({k.i, 0}, c);
    bool monic_like = dlead.terms().size() == 1 && dlead.terms().begin()->first.i == 0 &&
                      dlead.terms().begin()->second.is_constant();
    if (!monic_like)
        fail(ErrorCode::NonMonicUndividable, "divisor is not monic in y up to a rational constant");
    Rat lead = dlead.terms().begin()->second.constant_value();

    SymTab t = merge_tables(p.table(), d.table());
    PlanarPoly rem = p.remap(t);
    PlanarPoly div = d.remap(t);
    PlanarPoly quot(t);
    auto ydeg = [](const PlanarPoly& f) {
        int m = -1;
        for (const auto& [k, c] : f.terms()) m = std::max(m, k.j);
        return m;
    };
    int rdeg;
    while (!rem.is_zero() && (rdeg = ydeg(rem)) >= dy_deg) {
        // collect the y^rdeg slice of rem and shift it down
        PlanarPoly slice(t);
        for (const auto& [k, c] : rem.terms())
            if (k.j == rdeg) slice.add_term({k.i, k.j - dy_deg}, c * (Rat(1) / lead));
        quot = quot + slice;
        rem = rem - slice * div;
    }
    return {quot, rem};
}

std::optional<PlanarPoly> try_divide_exact(const PlanarPoly& p, const PlanarPoly& d) {
    if (d.is_zero()) return std::nullopt;
    auto dl = d.terms().rbegin();  // graded-greatest phase monomial
    if (!dl->second.is_constant()) return std::nullopt;
    PhaseKey dk = dl->first;
    Rat dc = dl->second.constant_value();

    SymTab t = merge_tables(p.table(), d.table());
    PlanarPoly rem = p.remap(t);
    PlanarPoly div = d.remap(t);
    PlanarPoly quot(t);
    while (!rem.is_zero()) {
        auto rl = rem.terms().rbegin();
        PhaseKey rk = rl->first;
        if (rk.i < dk.i || rk.j < dk.j) return std::nullopt;
        PlanarPoly qt(t);
        qt.add_term({rk.i - dk.i, rk.j - dk.j}, rl->second * (Rat(1) / dc));
        quot = quot + qt;
        rem = rem - qt * div;
    }
    return quot;
}

}  // namespace cyclelab
