#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rootbound/rational.hpp"

namespace rootbound {

/// Formal power series truncated at a fixed order N: coefficients of
/// z^0 .. z^N, nothing beyond index N is ever read or written. The scalar
/// type is either Rational (exact) or std::complex<double>; mixing domains
/// is a compile-time error, mixing orders a runtime one.
template <typename T>
class Series {
  public:
    explicit Series(int order) : coeffs_(check_order(order) + 1, T(0)) {}

    Series(std::vector<T> coeffs, int order) : coeffs_(std::move(coeffs)) {
        check_order(order);
        if (coeffs_.size() > static_cast<std::size_t>(order) + 1)
            throw std::invalid_argument("Series: more coefficients than order allows");
        coeffs_.resize(static_cast<std::size_t>(order) + 1, T(0));
    }

    static Series constant(T value, int order) {
        Series s(order);
        s.coeffs_[0] = std::move(value);
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const T& operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
    T& operator[](int n) { return coeffs_.at(static_cast<std::size_t>(n)); }
    const std::vector<T>& coeffs() const { return coeffs_; }

    friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

  private:
    static int check_order(int order) {
        if (order < 0) throw std::invalid_argument("Series: order must be >= 0");
        return order;
    }

    std::vector<T> coeffs_;
};

namespace detail {
template <typename T>
void require_same_order(const Series<T>& a, const Series<T>& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("Series: truncation orders differ (no implicit resize)");
}
}  // namespace detail

template <typename T>
Series<T> operator+(const Series<T>& a, const Series<T>& b) {
    detail::require_same_order(a, b);
    Series<T> r(a.order());
    for (int n = 0; n <= a.order(); ++n) r[n] = a[n] + b[n];
    return r;
}

template <typename T>
Series<T> operator-(const Series<T>& a, const Series<T>& b) {
    detail::require_same_order(a, b);
    Series<T> r(a.order());
    for (int n = 0; n <= a.order(); ++n) r[n] = a[n] - b[n];
    return r;
}

template <typename T>
Series<T> operator-(const Series<T>& a) {
    Series<T> r(a.order());
    for (int n = 0; n <= a.order(); ++n) r[n] = -a[n];
    return r;
}

/// Truncated Cauchy product, schoolbook O(N^2).
template <typename T>
Series<T> operator*(const Series<T>& a, const Series<T>& b) {
    detail::require_same_order(a, b);
    Series<T> r(a.order());
    for (int n = 0; n <= a.order(); ++n) {
        T acc(0);
        for (int k = 0; k <= n; ++k) acc += a[k] * b[n - k];
        r[n] = acc;
    }
    return r;
}

template <typename T>
Series<T> operator*(const T& s, const Series<T>& a) {
    Series<T> r(a.order());
    for (int n = 0; n <= a.order(); ++n) r[n] = s * a[n];
    return r;
}

/// Multiplicative inverse: r_0 = 1/a_0, r_n = -(1/a_0) * sum_{k=1..n} a_k r_{n-k}.
template <typename T>
Series<T> reciprocal(const Series<T>& a) {
    if (a[0] == T(0)) throw std::domain_error("Series: reciprocal needs a nonzero constant term");
    Series<T> r(a.order());
    const T inv = T(1) / a[0];
    r[0] = inv;
    for (int n = 1; n <= a.order(); ++n) {
        T acc(0);
        for (int k = 1; k <= n; ++k) acc += a[k] * r[n - k];
        r[n] = -inv * acc;
    }
    return r;
}

/// exp of a series with zero constant term, by the derivative recurrence
/// (n+1) h_{n+1} = sum_{k=0..n} (k+1) g_{k+1} h_{n-k}.
template <typename T>
Series<T> exp(const Series<T>& g) {
    if (g[0] != T(0)) throw std::domain_error("Series: exp needs a zero constant term");
    Series<T> h(g.order());
    h[0] = T(1);
    for (int n = 0; n < g.order(); ++n) {
        T acc(0);
        for (int k = 0; k <= n; ++k) acc += T(k + 1) * g[k + 1] * h[n - k];
        h[n + 1] = acc / T(n + 1);
    }
    return h;
}

/// a^m for integer m >= 0 by binary exponentiation; a^0 is the constant 1.
template <typename T>
Series<T> pow(const Series<T>& a, long m) {
    if (m < 0) throw std::invalid_argument("Series: pow exponent must be >= 0");
    Series<T> result = Series<T>::constant(T(1), a.order());
    Series<T> base = a;
    while (m > 0) {
        if (m & 1) result = result * base;
        m >>= 1;
        if (m > 0) base = base * base;
    }
    return result;
}

/// outer(inner) by Horner's scheme; inner must have zero constant term so the
/// truncated composition is well defined.
template <typename T>
Series<T> compose(const Series<T>& outer, const Series<T>& inner) {
    detail::require_same_order(outer, inner);
    if (inner[0] != T(0))
        throw std::domain_error("Series: compose needs an inner series with zero constant term");
    Series<T> r = Series<T>::constant(outer[outer.order()], outer.order());
    for (int n = outer.order() - 1; n >= 0; --n) {
        r = r * inner;
        r[0] += outer[n];
    }
    return r;
}

inline std::complex<double> to_complex(const Rational& q) { return {q.to_double(), 0.0}; }
inline std::complex<double> to_complex(const std::complex<double>& c) { return c; }

/// Horner evaluation at a complex point. Rational coefficients are converted
/// to double here and only here; the recurrences above never round.
template <typename T>
std::complex<double> eval(const Series<T>& a, std::complex<double> z) {
    std::complex<double> acc = to_complex(a[a.order()]);
    for (int n = a.order() - 1; n >= 0; --n) acc = acc * z + to_complex(a[n]);
    return acc;
}

using RationalSeries = Series<Rational>;
using ComplexSeries = Series<std::complex<double>>;

}  // namespace rootbound
