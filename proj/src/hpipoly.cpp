#include "cyclelab/hpipoly.hpp"

#include <cmath>
#include <sstream>

namespace cyclelab {

ParamPoly HPiPoly::coeff(int h_power) const {
    auto it = coeffs_.find(h_power);
    return it == coeffs_.end() ? ParamPoly::zero(table_) : it->second;
}

void HPiPoly::add_term(int h_power, const ParamPoly& c) {
    if (c.is_zero()) return;
    SymTab merged = merge_tables(table_, c.table());
    if (merged != table_) {
        table_ = merged;
        for (auto& [k, v] : coeffs_) v = v.remap(merged);
    }
    auto [it, inserted] = coeffs_.emplace(h_power, c.remap(merged));
    if (!inserted) {
        it->second = it->second + c.remap(merged);
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

void HPiPoly::set_pi_power(int p) {
    if (p < 0) fail(ErrorCode::Precondition, "negative pi power");
    pi_power_ = p;
}

HPiPoly HPiPoly::operator-() const {
    HPiPoly r(table_, pi_power_);
    for (const auto& [k, c] : coeffs_) r.coeffs_[k] = -c;
    return r;
}

HPiPoly HPiPoly::operator+(const HPiPoly& rhs) const {
    if (is_zero()) return rhs;
    if (rhs.is_zero()) return *this;
    if (pi_power_ != rhs.pi_power_)
        fail(ErrorCode::PiMismatch, "cannot add values with different pi powers");
    HPiPoly r = *this;
    for (const auto& [k, c] : rhs.coeffs_) r.add_term(k, c);
    return r;
}

HPiPoly HPiPoly::operator-(const HPiPoly& rhs) const { return *this + (-rhs); }

HPiPoly HPiPoly::operator*(const HPiPoly& rhs) const {
    HPiPoly r(merge_tables(table_, rhs.table_), pi_power_ + rhs.pi_power_);
    for (const auto& [ka, ca] : coeffs_)
        for (const auto& [kb, cb] : rhs.coeffs_) r.add_term(ka + kb, ca * cb);
    return r;
}

HPiPoly HPiPoly::operator*(const Rat& s) const {
    HPiPoly r(table_, pi_power_);
    if (s == 0) return r;
    for (const auto& [k, c] : coeffs_) r.coeffs_[k] = c * s;
    return r;
}

HPiPoly HPiPoly::pow(unsigned e) const {
    HPiPoly acc(table_, 0);
    acc.add_term(0, ParamPoly::constant(table_, Rat(1)));
    HPiPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

bool HPiPoly::operator==(const HPiPoly& rhs) const {
    if (is_zero() && rhs.is_zero()) return true;
    if (pi_power_ != rhs.pi_power_) return false;
    if (coeffs_.size() != rhs.coeffs_.size()) return false;
    auto ia = coeffs_.begin();
    auto ib = rhs.coeffs_.begin();
    for (; ia != coeffs_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

bool equal_up_to_sign(const HPiPoly& a, const HPiPoly& b) { return a == b || a == -b; }

HPiPoly HPiPoly::substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const {
    HPiPoly r(table_, pi_power_);
    for (const auto& [k, c] : coeffs_) r.add_term(k, c.substitute(bindings));
    return r;
}

Rat HPiPoly::evaluate_exact(const std::map<std::string, Rat>& point, const Rat& h) const {
    if (pi_power_ != 0) fail(ErrorCode::PiInExactMode, "pi factor present in exact evaluation");
    Rat sum(0);
    for (const auto& [k, c] : coeffs_) {
        Rat term = c.evaluate(point);
        for (int q = 0; q < k; ++q) term *= h;
        sum += term;
    }
    return sum;
}

double HPiPoly::evaluate_double(const std::map<std::string, double>& point, double h) const {
    double sum = 0.0;
    for (const auto& [k, c] : coeffs_) sum += c.evaluate_double(point) * std::pow(h, k);
    return sum * std::pow(M_PI, pi_power_);
}

std::string HPiPoly::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream body;
    bool first = true;
    std::size_t flat_terms = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        for (auto pt = it->second.terms().rbegin(); pt != it->second.terms().rend(); ++pt) {
            ++flat_terms;
            Rat c = pt->second;
            if (!first) {
                body << (c > 0 ? " + " : " - ");
                if (c < 0) c = -c;
            }
            first = false;
            std::vector<std::pair<std::string, unsigned>> factors;
            for (std::size_t s = 0; s < pt->first.size(); ++s)
                if (pt->first[s] > 0) factors.emplace_back(table_->name(s), pt->first[s]);
            if (it->first > 0) factors.emplace_back("h", static_cast<unsigned>(it->first));
            body << render_term(c, factors);
        }
    }
    if (pi_power_ == 0) return body.str();
    std::ostringstream out;
    if (flat_terms > 1)
        out << "(" << body.str() << ")";
    else
        out << body.str();
    out << "*pi";
    if (pi_power_ > 1) out << "^" << pi_power_;
    return out.str();
}

}  // namespace cyclelab
