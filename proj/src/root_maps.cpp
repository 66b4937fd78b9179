#include "rootbound/root_maps.hpp"

#include <cmath>

namespace rootbound {

namespace {

Complex int_pow(Complex base, long e) {
    Complex r(1.0, 0.0);
    while (e > 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return r;
}

/// base^p: exact integer exponent when p is integral, principal branch
/// otherwise.
Complex complex_pow(Complex base, const RootParameter& p) {
    if (p.is_integer()) return int_pow(base, p.as_integer());
    return std::pow(base, p.to_double());
}

}  // namespace

std::string method_name(Method m) { return m == Method::newton ? "newton" : "halley"; }

RootParameter::RootParameter(Rational p) : p_(std::move(p)) {
    if (!(p_ > Rational(1))) throw std::invalid_argument("p must exceed 1");
}

RootParameter RootParameter::integer(long p) { return RootParameter(Rational(p)); }

RootParameter RootParameter::parse(const std::string& text) {
    return RootParameter(Rational::from_string(text));
}

long RootParameter::as_integer() const {
    if (!is_integer()) throw std::invalid_argument("p must be an integer >= 2 here");
    return mpz_get_si(p_.num().get_mpz_t());
}

WeightSequence newton_weights(const RootParameter& p) {
    const Rational pv = p.value();
    return WeightSequence{"newton p=" + pv.str(),
                          [pv](int n) { return pv.pow(1 - static_cast<long>(n)); }, 2};
}

WeightSequence halley_weights(const RootParameter& p) {
    const Rational pv = p.value();
    const Rational two_p = Rational(2) * pv;
    const Rational alpha = (pv + Rational(1)) / two_p;
    const Rational beta = (pv - Rational(1)) / two_p;
    return WeightSequence{"halley p=" + pv.str(),
                          [pv, alpha, beta](int n) {
                              const long e = static_cast<long>(n);
                              return pv * (alpha.pow(e) - beta.pow(e));
                          },
                          3};
}

WeightSequence method_weights(Method m, const RootParameter& p) {
    return m == Method::newton ? newton_weights(p) : halley_weights(p);
}

bool halley_weight_identity_holds(const RootParameter& p, int n_max) {
    const Rational pv = p.value();
    const Rational two_p = Rational(2) * pv;
    const Rational alpha_beta = (pv + Rational(1)) * (pv - Rational(1)) / (two_p * two_p);
    const WeightSequence a = halley_weights(p);
    for (int n = 2; n <= n_max; ++n)
        if (a.value(n) - a.value(n + 1) != alpha_beta * a.value(n - 1)) return false;
    return true;
}

Complex newton_residual_map(const RootParameter& p, Complex t) {
    const double pd = p.to_double();
    if (!p.is_integer() && std::abs(t) >= pd)
        throw std::domain_error("newton residual map: non-integer p needs |t| < p");
    const Complex base = 1.0 - t / pd;
    if (std::abs(base) < kPoleTolerance)
        throw PoleError("newton residual map: pole at t = p", std::abs(base));
    return 1.0 - (1.0 - t) / complex_pow(base, p);
}

Complex halley_residual_map(const RootParameter& p, Complex t) {
    const double pd = p.to_double();
    const double radius = 2.0 * pd / (pd + 1.0);
    if (!p.is_integer() && std::abs(t) >= radius)
        throw std::domain_error("halley residual map: non-integer p needs |t| < 2p/(p+1)");
    const Complex den = 2.0 * pd - (pd + 1.0) * t;
    if (std::abs(den) < kPoleTolerance)
        throw PoleError("halley residual map: pole at t = 2p/(p+1)", std::abs(den));
    const Complex ratio = (2.0 * pd - (pd - 1.0) * t) / den;
    return 1.0 - (1.0 - t) * complex_pow(ratio, p);
}

Complex residual_map(Method m, const RootParameter& p, Complex t) {
    return m == Method::newton ? newton_residual_map(p, t) : halley_residual_map(p, t);
}

Complex newton_step(const RootParameter& p, Complex u, Complex z) {
    const long pi = p.as_integer();
    const Complex den = int_pow(u, pi - 1);
    if (std::abs(den) < kPoleTolerance)
        throw PoleError("newton step: iterate too close to 0", std::abs(den));
    return ((static_cast<double>(pi) - 1.0) * u + (1.0 - z) / den) / static_cast<double>(pi);
}

Complex halley_step(const RootParameter& p, Complex v, Complex z) {
    const double pd = static_cast<double>(p.as_integer());
    const Complex vp = int_pow(v, p.as_integer());
    const Complex den = (pd + 1.0) * vp + (pd - 1.0) * (1.0 - z);
    if (std::abs(den) < kPoleTolerance) throw PoleError("halley step: pole", std::abs(den));
    return v * ((pd - 1.0) * vp + (pd + 1.0) * (1.0 - z)) / den;
}

RationalSeries map_series(Method m, const RootParameter& p, int order, SeriesRoute route) {
    const Rational pv = p.value();
    const RationalSeries one = RationalSeries::constant(Rational(1), order);
    RationalSeries one_minus_z(order);
    one_minus_z[0] = Rational(1);
    if (order >= 1) one_minus_z[1] = Rational(-1);

    if (route == SeriesRoute::weights) {
        const WeightSequence a = method_weights(m, p);
        RationalSeries g(order);
        for (int n = 1; n <= order; ++n) g[n] = a.value(n) / Rational(n);
        return one - one_minus_z * exp(g);
    }

    const long pi = p.as_integer();  // closed form needs an integer exponent
    if (m == Method::newton) {
        // 1 - (1-z) (1 - z/p)^{-p}
        RationalSeries base(order);
        base[0] = Rational(1);
        if (order >= 1) base[1] = -(Rational(1) / pv);
        return one - one_minus_z * pow(reciprocal(base), pi);
    }
    // 1 - (1-z) ((2p - (p-1) z) / (2p - (p+1) z))^p
    const Rational two_p = Rational(2) * pv;
    RationalSeries num(order);
    num[0] = two_p;
    if (order >= 1) num[1] = -(pv - Rational(1));
    RationalSeries den(order);
    den[0] = two_p;
    if (order >= 1) den[1] = -(pv + Rational(1));
    return one - one_minus_z * pow(num * reciprocal(den), pi);
}

IterationTrace run_iteration(const RootParameter& p, Method m, Complex z, int k_max) {
    if (k_max < 0) throw std::invalid_argument("run_iteration: k_max must be >= 0");
    const long pi = p.as_integer();
    if (pi < 2) throw std::invalid_argument("run_iteration: integer p >= 2 required");

    IterationTrace trace;
    trace.method = m;
    trace.p = pi;
    trace.z = z;
    trace.steps.reserve(static_cast<std::size_t>(k_max) + 1);

    Complex iterate(1.0, 0.0);
    trace.steps.push_back({iterate, z, std::nullopt});  // residual_0 = 1 - (1-z)/1 = z

    for (int k = 1; k <= k_max; ++k) {
        try {
            iterate = m == Method::newton ? newton_step(p, iterate, z) : halley_step(p, iterate, z);
            const Complex power = int_pow(iterate, pi);
            if (std::abs(power) < kPoleTolerance)
                throw PoleError("residual: iterate^p too close to 0", std::abs(power));
            const Complex residual = 1.0 - (1.0 - z) / power;

            std::optional<double> discrepancy;
            try {
                discrepancy =
                    std::abs(residual - residual_map(m, p, trace.steps.back().residual));
            } catch (const PoleError&) {
                // residual_{k-1} sits on the map's pole; leave unset
            }
            trace.steps.push_back({iterate, residual, discrepancy});
        } catch (const PoleError& e) {
            throw IterationError(k, e.what());
        }
    }
    return trace;
}

}  // namespace rootbound
