#include "rootbound/verification.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace rootbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool excluded(Complex z, double exclusion) {
    return std::abs(z) <= exclusion || std::abs(z - Complex(1.0, 0.0)) <= exclusion;
}

/// Uniform double in [0, 1) from the top 53 bits; the engine's output
/// sequence is pinned by the standard, so samples are reproducible across
/// platforms.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct RatioTracker {
    double max_ratio = -kInf;
    Complex worst{0.0, 0.0};

    void feed(Complex z, double ratio) {
        if (ratio > max_ratio) {
            max_ratio = ratio;
            worst = z;
        }
    }
};

/// Below this magnitude the residual recurrence switches from the direct map
/// formula to the scaled series t^ell * sum c_{n+ell} t^n. The scaled sum
/// stays away from 0 there: c_ell >= 1/16 for both maps and sum c_n <= 1, so
/// |sum| >= c_ell - 0.05 > 0.
constexpr double kSeriesSwitchRadius = 0.05;
constexpr int kScaledSeriesOrder = 48;
constexpr double kLogDoubleMin = -744.0;  // below this exp() underflows to 0

/// Residual trace res_{k+1} = map(res_k) carried in log-polar form once the
/// magnitude is small. The direct formula 1 - (1-t)(...) cancels to float
/// noise below ~1e-16; the scaled-series route keeps full relative precision
/// at any depth and never underflows.
class ResidualTracker {
  public:
    ResidualTracker(Method m, const RootParameter& p) : method_(m), p_(p) {
        const RationalSeries series =
            map_series(m, p, kScaledSeriesOrder, SeriesRoute::weights);
        ell_ = method_exponent(m);
        scaled_.reserve(static_cast<std::size_t>(kScaledSeriesOrder - ell_) + 1);
        for (int n = ell_; n <= kScaledSeriesOrder; ++n) scaled_.push_back(series[n].to_double());
    }

    void reset(Complex z) {
        value_ = z;
        log_mag_ = std::log(std::abs(z));
        phase_ = std::arg(z);
        log_mode_ = std::abs(z) < kSeriesSwitchRadius;
    }

    /// One application of the residual map. May throw PoleError in direct
    /// mode (impossible for samples inside the closed unit disk).
    void step() {
        if (!log_mode_) {
            value_ = residual_map(method_, p_, value_);
            log_mag_ = std::log(std::abs(value_));
            phase_ = std::arg(value_);
            log_mode_ = std::abs(value_) < kSeriesSwitchRadius;
            return;
        }
        const Complex t = representable() ? std::polar(std::exp(log_mag_), phase_)
                                          : Complex(0.0, 0.0);
        Complex s(scaled_.back(), 0.0);
        for (auto it = scaled_.rbegin() + 1; it != scaled_.rend(); ++it) s = s * t + *it;
        log_mag_ = ell_ * log_mag_ + std::log(std::abs(s));
        phase_ = std::remainder(ell_ * phase_ + std::arg(s), kTwoPi);
    }

    double log_magnitude() const { return log_mag_; }
    bool representable() const { return log_mag_ > kLogDoubleMin; }
    double magnitude() const { return representable() ? std::exp(log_mag_) : 0.0; }

  private:
    Method method_;
    RootParameter p_;
    int ell_ = 2;
    std::vector<double> scaled_;  // c_ell, c_{ell+1}, ... as doubles
    bool log_mode_ = false;
    Complex value_{0.0, 0.0};
    double log_mag_ = 0.0;
    double phase_ = 0.0;
};

}  // namespace

std::vector<Complex> sample_disk(const DiskSamplingPlan& plan) {
    if (plan.radii_count < 0 || plan.angle_count < 0 || plan.random_count < 0)
        throw std::invalid_argument("sample_disk: counts must be >= 0");
    if (!(plan.exclusion_radius > 0.0))
        throw std::invalid_argument("sample_disk: exclusion radius must be positive");

    std::vector<Complex> samples;
    samples.reserve(static_cast<std::size_t>(plan.radii_count) *
                        static_cast<std::size_t>(plan.angle_count) +
                    static_cast<std::size_t>(plan.random_count));

    for (int i = 1; i <= plan.radii_count; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(plan.radii_count);
        for (int j = 0; j < plan.angle_count; ++j) {
            const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(plan.angle_count);
            const Complex z = std::polar(r, theta);
            if (!excluded(z, plan.exclusion_radius)) samples.push_back(z);
        }
    }

    std::mt19937_64 rng(plan.seed);
    for (int n = 0; n < plan.random_count; ++n) {
        const double r = std::sqrt(uniform01(rng));  // area-uniform in the disk
        const double theta = kTwoPi * uniform01(rng);
        const Complex z = std::polar(r, theta);
        if (!excluded(z, plan.exclusion_radius)) samples.push_back(z);
    }
    return samples;
}

BoundReport check_map_contraction(Method m, const RootParameter& p, const DiskSamplingPlan& plan,
                                  bool collect_rows) {
    const int e = method_exponent(m);
    const std::vector<Complex> samples = sample_disk(plan);

    BoundReport report;
    report.claim = "|" + std::string(m == Method::newton ? "f" : "g") + "_p(z)| < |z|^" +
                   std::to_string(e) + " on the sampled disk, p = " + p.value().str();
    report.exponent = e;
    report.sample_count = samples.size();

    RatioTracker tracker;
    for (const Complex z : samples) {
        const double bound_log = e * std::log(std::abs(z));
        double log_value = 0.0;
        try {
            const Complex w = residual_map(m, p, z);
            log_value = std::log(std::abs(w));
        } catch (const PoleError& err) {
            report.violations.push_back({z, 0, kInf, bound_log, err.what()});
            continue;
        }
        if (log_value == -kInf) ++report.underflow_count;
        const double ratio = log_value - bound_log;
        tracker.feed(z, ratio);
        if (!(ratio < 0.0))
            report.violations.push_back({z, 0, log_value, bound_log, "strict inequality failed"});
        if (collect_rows) report.rows.push_back({z, 0, log_value, bound_log});
    }
    report.max_log_ratio = tracker.max_ratio;
    report.worst_sample = tracker.worst;
    return report;
}

std::vector<BoundReport> check_residual_bounds(const RootParameter& p, Method m, int k_max,
                                               const DiskSamplingPlan& plan, bool collect_rows) {
    if (k_max < 1) throw std::invalid_argument("check_residual_bounds: k_max must be >= 1");
    const long pi = p.as_integer();
    const int e = method_exponent(m);
    const std::vector<Complex> samples = sample_disk(plan);

    std::vector<BoundReport> reports(static_cast<std::size_t>(k_max));
    std::vector<RatioTracker> trackers(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        BoundReport& r = reports[static_cast<std::size_t>(k - 1)];
        r.claim = "log|residual_k(z)| < " + std::to_string(e) + "^k log|z| at k = " +
                  std::to_string(k) + ", " + method_name(m) + ", p = " + std::to_string(pi);
        r.k = k;
        r.exponent = std::pow(static_cast<double>(e), k);
        r.sample_count = samples.size();
    }

    ResidualTracker residual(m, p);
    for (const Complex z : samples) {
        const double log_z = std::log(std::abs(z));
        residual.reset(z);
        for (int k = 1; k <= k_max; ++k) {
            BoundReport& r = reports[static_cast<std::size_t>(k - 1)];
            const double bound_log = r.exponent * log_z;
            try {
                residual.step();
            } catch (const PoleError& err) {
                r.violations.push_back({z, k, kInf, bound_log, err.what()});
                break;  // this sample has no further residuals
            }
            const double log_value = residual.log_magnitude();
            // Residuals whose magnitude is below the smallest positive
            // double would have hit float 0 on the direct route; the
            // log-form check still applies, they are tallied for the report.
            if (!residual.representable()) ++r.underflow_count;
            const double ratio = log_value - bound_log;
            trackers[static_cast<std::size_t>(k - 1)].feed(z, ratio);
            if (!(ratio < 0.0))
                r.violations.push_back({z, k, log_value, bound_log, "strict inequality failed"});
            if (collect_rows) r.rows.push_back({z, k, log_value, bound_log});
        }
    }

    for (int k = 1; k <= k_max; ++k) {
        reports[static_cast<std::size_t>(k - 1)].max_log_ratio =
            trackers[static_cast<std::size_t>(k - 1)].max_ratio;
        reports[static_cast<std::size_t>(k - 1)].worst_sample =
            trackers[static_cast<std::size_t>(k - 1)].worst;
    }
    return reports;
}

BoundReport check_no_pole_no_zero(const RootParameter& p, Method m, int k_max,
                                  const DiskSamplingPlan& plan, double threshold) {
    if (k_max < 1) throw std::invalid_argument("check_no_pole_no_zero: k_max must be >= 1");
    const long pi = p.as_integer();
    const double pd = static_cast<double>(pi);
    const std::vector<Complex> samples = sample_disk(plan);

    BoundReport report;
    report.claim = "iterates and step denominators stay above " + std::to_string(threshold) +
                   " in magnitude, " + method_name(m) + ", p = " + std::to_string(pi) +
                   ", k <= " + std::to_string(k_max);
    report.k = k_max;
    report.sample_count = samples.size();
    report.note = "sampled evidence, not a proof";

    double min_iterate = kInf;
    double min_denominator = kInf;
    RatioTracker tracker;

    for (const Complex z : samples) {
        Complex iterate(1.0, 0.0);
        double sample_min = kInf;
        bool poled = false;
        for (int k = 1; k <= k_max; ++k) {
            Complex power(1.0, 0.0);
            for (long i = 0; i < pi - (m == Method::newton ? 1 : 0); ++i) power *= iterate;
            const double denom_mag =
                m == Method::newton
                    ? std::abs(power)  // |U^{p-1}|
                    : std::abs((pd + 1.0) * power + (pd - 1.0) * (1.0 - z));
            min_denominator = std::min(min_denominator, denom_mag);
            sample_min = std::min(sample_min, denom_mag);
            try {
                iterate =
                    m == Method::newton ? newton_step(p, iterate, z) : halley_step(p, iterate, z);
            } catch (const PoleError& err) {
                report.violations.push_back({z, k, -kInf, std::log(threshold), err.what()});
                poled = true;
                break;
            }
            const double it_mag = std::abs(iterate);
            min_iterate = std::min(min_iterate, it_mag);
            sample_min = std::min(sample_min, it_mag);
        }
        if (poled) continue;
        // ratio < 0 iff every magnitude at this sample stays above threshold
        const double ratio = std::log(threshold) - std::log(sample_min);
        tracker.feed(z, ratio);
        if (!(ratio < 0.0))
            report.violations.push_back(
                {z, k_max, std::log(sample_min), std::log(threshold), "magnitude at or below threshold"});
    }

    report.max_log_ratio = tracker.max_ratio;
    report.worst_sample = tracker.worst;
    report.min_iterate_magnitude = min_iterate;
    report.min_denominator_magnitude = min_denominator;
    return report;
}

RationalSeries binomial_root_series(const RootParameter& p, int order) {
    const long pi = p.as_integer();
    if (pi < 2) throw std::invalid_argument("binomial_root_series: integer p >= 2 required");
    const Rational pv = p.value();

    // Product formula: t_n = -(prod_{r=1..n-1} (rp-1)) / (n! p^n).
    RationalSeries product_route(order);
    product_route[0] = Rational(1);
    Rational running_product(1);  // prod_{r=1..n-1} (rp - 1)
    Rational n_factorial(1);
    Rational p_power(1);
    for (int n = 1; n <= order; ++n) {
        if (n >= 2) running_product *= Rational(n - 1) * pv - Rational(1);
        n_factorial *= Rational(n);
        p_power *= pv;
        product_route[n] = -(running_product / (n_factorial * p_power));
    }

    // Independent route: binomial recurrence for (1-z)^{alpha}, alpha = 1/p,
    // t_{n+1} = t_n (n - alpha) / (n + 1).
    RationalSeries binomial_route(order);
    binomial_route[0] = Rational(1);
    const Rational alpha = Rational(1) / pv;
    for (int n = 0; n < order; ++n)
        binomial_route[n + 1] = binomial_route[n] * (Rational(n) - alpha) / Rational(n + 1);

    if (!(product_route == binomial_route))
        throw std::logic_error("binomial_root_series: the two routes disagree");
    return product_route;
}

RationalSeries iterate_series(Method m, const RootParameter& p, int k, int order) {
    const long pi = p.as_integer();
    if (pi < 2) throw std::invalid_argument("iterate_series: integer p >= 2 required");
    if (k < 0) throw std::invalid_argument("iterate_series: k must be >= 0");

    const Rational pv = p.value();
    RationalSeries one_minus_z(order);
    one_minus_z[0] = Rational(1);
    if (order >= 1) one_minus_z[1] = Rational(-1);

    RationalSeries u = RationalSeries::constant(Rational(1), order);
    for (int step = 0; step < k; ++step) {
        if (m == Method::newton) {
            const RationalSeries correction = one_minus_z * reciprocal(pow(u, pi - 1));
            u = (Rational(1) / pv) * ((pv - Rational(1)) * u + correction);
        } else {
            const RationalSeries up = pow(u, pi);
            const RationalSeries num = (pv - Rational(1)) * up + (pv + Rational(1)) * one_minus_z;
            const RationalSeries den = (pv + Rational(1)) * up + (pv - Rational(1)) * one_minus_z;
            u = u * num * reciprocal(den);
        }
    }
    return u;
}

int check_prefix_agreement(Method m, const RootParameter& p, int k, int order) {
    const RationalSeries iterate = iterate_series(m, p, k, order);
    const RationalSeries root = binomial_root_series(p, order);
    int n = 0;
    while (n <= order && iterate[n] == root[n]) ++n;
    return n;
}

OrderEstimate estimate_convergence_order(const RootParameter& p, Method m, Complex z, int k_max) {
    const double mag = std::abs(z);
    if (!(mag > 0.0) || !(mag < 1.0))
        throw std::invalid_argument("estimate_convergence_order: need 0 < |z| < 1");
    if (k_max < 1) throw std::invalid_argument("estimate_convergence_order: k_max must be >= 1");

    ResidualTracker residual(m, p);
    residual.reset(z);
    OrderEstimate est;
    est.residual_magnitudes.push_back(mag);
    double prev_log = std::log(mag);
    for (int k = 1; k <= k_max; ++k) {
        residual.step();
        est.residual_magnitudes.push_back(residual.magnitude());
        if (!residual.representable()) est.truncated_by_underflow = true;
        est.ratios.push_back(residual.log_magnitude() / prev_log);
        prev_log = residual.log_magnitude();
    }
    return est;
}

}  // namespace rootbound
