#ifndef CYCLELAB_TEST_UTIL_HPP
#define CYCLELAB_TEST_UTIL_HPP

#include <random>

#include "cyclelab/parampoly.hpp"
#include "cyclelab/sysdef.hpp"

namespace test_util {

using namespace cyclelab;

inline Rat random_rat(std::mt19937_64& rng, int num_range = 9, int den_range = 4) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return rat(num(rng), den(rng));
}

inline Rat random_nonzero_rat(std::mt19937_64& rng, int num_range = 9, int den_range = 4) {
    for (;;) {
        Rat r = random_rat(rng, num_range, den_range);
        if (r != 0) return r;
    }
}

/// Sparse random polynomial with <= max_terms terms of degree <= max_deg.
inline ParamPoly random_parampoly(std::mt19937_64& rng, const SymTab& t, int max_deg = 5,
                                  int max_terms = 6) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> expo(0, max_deg);
    ParamPoly p(t);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Mono m(t->size(), 0);
        int budget = max_deg;
        for (std::size_t s = 0; s < t->size() && budget > 0; ++s) {
            int e = expo(rng) % (budget + 1);
            m[s] = static_cast<std::uint8_t>(e);
            budget -= e;
        }
        p.add_term(m, random_rat(rng));
    }
    return p;
}

inline ParamPoly parse_param(const std::string& text, const SymTab& t) {
    PlanarPoly p = parse_expression(text, t);
    return p.coeff(0, 0);
}

}  // namespace test_util

#endif
