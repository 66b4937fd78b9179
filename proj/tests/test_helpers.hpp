#pragma once

#include <random>
#include <string>
#include <vector>

#include "rootbound/rational.hpp"
#include "rootbound/series.hpp"

namespace rootbound::testing {

/// Series from exact coefficient strings, zero-padded to `order`.
inline RationalSeries rs(const std::vector<std::string>& coeffs, int order) {
    std::vector<Rational> parsed;
    parsed.reserve(coeffs.size());
    for (const auto& c : coeffs) parsed.push_back(Rational::from_string(c));
    return RationalSeries(parsed, order);
}

inline std::vector<std::string> strings_of(const RationalSeries& s) {
    std::vector<std::string> out;
    for (int n = 0; n <= s.order(); ++n) out.push_back(s[n].str());
    return out;
}

/// Small random rationals (numerator in [-9, 9], denominator in [1, 9]) for
/// exact-arithmetic property tests.
inline Rational random_rational(std::mt19937_64& rng) {
    const long num = static_cast<long>(rng() % 19) - 9;
    const long den = static_cast<long>(rng() % 9) + 1;
    return Rational(num, den);
}

inline RationalSeries random_series(std::mt19937_64& rng, int order, bool zero_constant_term) {
    RationalSeries s(order);
    for (int n = 0; n <= order; ++n) s[n] = random_rational(rng);
    if (zero_constant_term) s[0] = Rational(0);
    return s;
}

}  // namespace rootbound::testing
