#include "cyclelab/ratpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>

#include "cyclelab/error.hpp"

namespace cyclelab {

void RatPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double RatPoly::eval_double(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + rat_to_double(*it);
    return acc;
}

RatPoly RatPoly::operator-() const {
    RatPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return RatPoly(std::move(c));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return RatPoly(std::move(c));
}

RatPoly RatPoly::operator*(const Rat& s) const {
    if (s == 0) return RatPoly();
    RatPoly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rat> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return RatPoly(std::move(c));
}

std::pair<RatPoly, RatPoly> RatPoly::divrem(const RatPoly& d) const {
    if (d.is_zero()) fail(ErrorCode::Precondition, "polynomial division by zero");
    RatPoly rem = *this;
    if (rem.degree() < d.degree()) return {RatPoly(), rem};
    std::vector<Rat> q(rem.degree() - d.degree() + 1, Rat(0));
    Rat inv_lead = Rat(1) / d.lead();
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        int shift = rem.degree() - d.degree();
        Rat f = rem.lead() * inv_lead;
        q[shift] = f;
        std::vector<Rat> nc = rem.c_;
        for (int i = 0; i <= d.degree(); ++i) nc[i + shift] -= f * d.c_[i];
        rem = RatPoly(std::move(nc));
    }
    return {RatPoly(std::move(q)), rem};
}

RatPoly RatPoly::primitive() const {
    if (is_zero()) return RatPoly();
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& c : c_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat content = rat_from_mpz(num_gcd, den_lcm);
    return *this * (Rat(1) / content);
}

RatPoly RatPoly::gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly f = a.primitive(), g = b.primitive();
    while (!g.is_zero()) {
        RatPoly r = f.divrem(g).second;
        f = g;
        g = r.is_zero() ? RatPoly() : r.primitive();
    }
    if (f.is_zero()) return f;
    return f * (Rat(1) / f.lead());  // monic
}

std::vector<RatPoly> RatPoly::squarefree_decomposition() const {
    std::vector<RatPoly> out(1);  // slot 0 unused
    if (is_zero()) fail(ErrorCode::ZeroPolynomial, "square-free decomposition of zero");
    RatPoly f = primitive();
    if (f.degree() == 0) return out;
    // Yun's algorithm
    RatPoly fd = f.derivative();
    RatPoly a = gcd(f, fd);
    RatPoly b = f.divrem(a).first;
    RatPoly c = fd.divrem(a).first;
    RatPoly d = c - b.derivative();
    while (b.degree() > 0) {
        RatPoly ai = gcd(b, d);
        out.push_back(ai);
        b = b.divrem(ai).first;
        c = d.divrem(ai).first;
        d = c - b.derivative();
    }
    return out;
}

std::string RatPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rat c = coeff(k);
        if (c == 0) continue;
        if (!first) {
            out << (c > 0 ? " + " : " - ");
            if (c < 0) c = -c;
        }
        first = false;
        if (k == 0 || (c != 1 && c != -1)) {
            out << rat_to_string(c);
            if (k > 0) out << "*";
        } else if (c == -1) {
            out << "-";
        }
        if (k > 0) {
            out << var;
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

std::vector<RatPoly> sturm_chain(const RatPoly& squarefree) {
    std::vector<RatPoly> chain;
    chain.push_back(squarefree.primitive());
    RatPoly d = squarefree.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d.primitive());
    while (true) {
        RatPoly r = chain[chain.size() - 2].divrem(chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back((-r).primitive());
    }
    return chain;
}

static int sign_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

static int variations_at(const std::vector<RatPoly>& chain, const Rat& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) signs.push_back(rat_sign(p.eval(x)));
    return sign_variations(signs);
}

int sturm_count(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b) {
    return variations_at(chain, a) - variations_at(chain, b);
}

Rat root_bound(const RatPoly& p) {
    if (p.degree() < 1) return Rat(1);
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, rat_abs(p.coeff(i) / p.lead()));
    return m + 1;
}

namespace {

// Positive divisors of |n|, or nothing when |n| is too large to enumerate.
std::optional<std::vector<mpz_class>> divisors_capped(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    if (n == 0 || !n.fits_ulong_p()) return std::nullopt;
    unsigned long v = n.get_ui();
    if (v > (1ull << 40)) return std::nullopt;
    std::vector<mpz_class> divs;
    for (std::uint64_t d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            divs.emplace_back(static_cast<unsigned long>(d));
            std::uint64_t e = v / d;
            if (e != d) divs.emplace_back(static_cast<unsigned long>(e));
            if (divs.size() > 4096) return std::nullopt;
        }
    }
    return divs;
}

// Divides out (x - r); r must be an exact root.
RatPoly deflate(const RatPoly& p, const Rat& r) {
    RatPoly lin({-r, Rat(1)});
    auto [q, rem] = p.divrem(lin);
    if (!rem.is_zero()) fail(ErrorCode::Precondition, "deflation at a non-root");
    return q;
}

// All rational roots of a square-free polynomial, extracted exactly when
// coefficient sizes permit enumeration; g is deflated in place.
std::vector<Rat> extract_rational_roots(RatPoly& g) {
    std::vector<Rat> roots;
    // roots at zero first
    while (!g.is_zero() && g.coeff(0) == 0 && g.degree() >= 1) {
        roots.emplace_back(0);
        std::vector<Rat> shifted(g.coeffs().begin() + 1, g.coeffs().end());
        g = RatPoly(std::move(shifted));
    }
    if (g.degree() < 1) return roots;
    RatPoly zi = g.primitive();
    auto ps = divisors_capped(zi.coeff(0).get_num());
    auto qs = divisors_capped(zi.lead().get_num());
    if (!ps || !qs) return roots;
    for (const auto& p : *ps) {
        for (const auto& q : *qs) {
            for (int s : {1, -1}) {
                if (g.degree() < 1) return roots;
                Rat cand = rat_from_mpz(s * p, q);
                while (g.degree() >= 1 && g.eval(cand) == 0) {
                    roots.push_back(cand);
                    g = deflate(g, cand);
                }
            }
        }
    }
    return roots;
}

struct Span {
    Rat lo, hi;
};

// Isolating spans for the square-free polynomial g on (lo, hi); endpoints
// are guaranteed non-roots by the caller. Rational roots hit by bisection
// midpoints are deflated out of g and reported through extra_exact.
std::vector<Span> isolate_squarefree(RatPoly& g, Rat lo, Rat hi, std::vector<Rat>& extra_exact) {
    std::vector<Span> out;
restart:
    out.clear();
    if (g.degree() < 1 || !(lo < hi)) return out;
    auto chain = sturm_chain(g);
    std::deque<Span> work{{lo, hi}};
    while (!work.empty()) {
        Span s = work.front();
        work.pop_front();
        int n = sturm_count(chain, s.lo, s.hi);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(s);
            continue;
        }
        Rat mid = (s.lo + s.hi) / 2;
        if (g.eval(mid) == 0) {
            extra_exact.push_back(mid);
            g = deflate(g, mid);
            goto restart;
        }
        work.push_back({s.lo, mid});
        work.push_back({mid, s.hi});
    }
    return out;
}

// Shrinks (lo, hi) around the single sign-change root until width <= target.
void refine_span(const RatPoly& g, Span& s, const Rat& target_width) {
    int slo = rat_sign(g.eval(s.lo));
    while (s.hi - s.lo > target_width) {
        Rat mid = (s.lo + s.hi) / 2;
        int sm = rat_sign(g.eval(mid));
        if (sm == 0) {  // landed exactly on the root
            s.lo = mid;
            s.hi = mid;
            return;
        }
        if (sm == slo)
            s.lo = mid;
        else
            s.hi = mid;
    }
}

}  // namespace

std::vector<RootInterval> isolate_roots(const RatPoly& p, const Rat& lo, const Rat& hi_in, bool unbounded) {
    if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "root isolation of the zero polynomial");
    std::vector<RootInterval> result;
    if (p.degree() < 1) return result;

    auto factors = p.squarefree_decomposition();
    struct Pending {
        RatPoly g;
        Span span;
        int mult;
    };
    std::vector<Pending> pendings;

    for (std::size_t mult = 1; mult < factors.size(); ++mult) {
        RatPoly g = factors[mult];
        if (g.degree() < 1) continue;
        Rat hi = unbounded ? std::max(root_bound(g), Rat(lo + 1)) : hi_in;
        if (!(lo < hi)) continue;
        auto rational = extract_rational_roots(g);
        for (const auto& r : rational) {
            bool in_range = (r > lo) && (unbounded || r <= hi_in);
            if (in_range)
                result.push_back({r, r, static_cast<int>(mult), true});
        }
        // endpoint roots may survive if enumeration was capped out
        while (g.degree() >= 1 && g.eval(lo) == 0) g = deflate(g, lo);
        while (!unbounded && g.degree() >= 1 && g.eval(hi) == 0) {
            result.push_back({hi, hi, static_cast<int>(mult), true});
            g = deflate(g, hi);
        }
        std::vector<Rat> extra;
        auto spans = isolate_squarefree(g, lo, hi, extra);
        for (const auto& r : extra)
            result.push_back({r, r, static_cast<int>(mult), true});
        for (auto& s : spans) {
            refine_span(g, s, Rat((hi - lo) / 1024));
            pendings.push_back({g, s, static_cast<int>(mult)});
        }
    }

    // refine until isolating intervals are pairwise disjoint and avoid the
    // exact roots already found (root sets of distinct factors are disjoint)
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 512) {
        changed = false;
        for (std::size_t i = 0; i < pendings.size(); ++i) {
            for (std::size_t j = 0; j < pendings.size(); ++j) {
                if (i == j) continue;
                auto& a = pendings[i].span;
                auto& b = pendings[j].span;
                if (a.lo < b.hi && b.lo < a.hi) {
                    Rat w = std::max(a.hi - a.lo, b.hi - b.lo);
                    refine_span(pendings[i].g, a, w / 4);
                    refine_span(pendings[j].g, b, w / 4);
                    changed = true;
                }
            }
            for (const auto& r : result) {
                if (!r.exact) continue;
                auto& a = pendings[i].span;
                if (r.lo > a.lo && r.lo < a.hi) {
                    refine_span(pendings[i].g, a, (a.hi - a.lo) / 8);
                    changed = true;
                }
            }
        }
    }

    for (const auto& pend : pendings) {
        bool exact = pend.span.lo == pend.span.hi;
        result.push_back({pend.span.lo, pend.span.hi, pend.mult, exact});
    }
    std::sort(result.begin(), result.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo + a.hi < b.lo + b.hi; });
    return result;
}

}  // namespace cyclelab
