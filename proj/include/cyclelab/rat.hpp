#ifndef CYCLELAB_RAT_HPP
#define CYCLELAB_RAT_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "cyclelab/error.hpp"

namespace cyclelab {

// Arbitrary-precision rational. mpq_class keeps values canonical (lowest
// terms, positive denominator, 0 stored as 0/1) as long as every value is
// built through the helpers below or through arithmetic on canonical values.
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
    if (d == 0) fail(ErrorCode::Precondition, "zero denominator");
    Rat q(n, d);
    q.canonicalize();
    return q;
}

inline Rat rat_from_mpz(const mpz_class& n, const mpz_class& d) {
    if (d == 0) fail(ErrorCode::Precondition, "zero denominator");
    Rat q(n, d);
    q.canonicalize();
    return q;
}

/// Parses "p", "p/q", or a decimal like "0.05" (exactly, as 5/100).
inline Rat rat_from_string(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            mpz_class n(s.substr(0, slash));
            mpz_class d(s.substr(slash + 1));
            return rat_from_mpz(n, d);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            if (digits.empty() || digits == "-" || digits == "+")
                fail(ErrorCode::SyntaxError, "bad rational literal '" + s + "'");
            mpz_class n(digits);
            mpz_class d(1);
            for (size_t i = dot + 1; i < s.size(); ++i) d *= 10;
            return rat_from_mpz(n, d);
        }
        mpz_class n(s);
        return Rat(n);
    } catch (const std::invalid_argument&) {
        fail(ErrorCode::SyntaxError, "bad rational literal '" + s + "'");
    }
}

/// Canonical rendering: "p" for integers, "p/q" otherwise.
inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline int rat_sign(const Rat& q) { return sgn(q); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline double rat_to_double(const Rat& q) { return q.get_d(); }

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

}  // namespace cyclelab

#endif
