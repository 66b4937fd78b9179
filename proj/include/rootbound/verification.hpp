#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rootbound/root_maps.hpp"
#include "rootbound/series.hpp"

namespace rootbound {

/// Deterministic sample set over the closed unit disk: a polar grid whose
/// outermost radius is the boundary circle, plus seeded uniform points, with
/// small neighborhoods of z = 0 and z = 1 removed (the bounds are vacuous at
/// 0 and approach equality at 1).
struct DiskSamplingPlan {
    int radii_count = 64;
    int angle_count = 128;
    int random_count = 4096;
    std::uint64_t seed = 42;
    double exclusion_radius = 1e-3;
};

std::vector<Complex> sample_disk(const DiskSamplingPlan& plan);

struct SampleViolation {
    Complex z;
    int k = 0;
    double log_value = 0.0;
    double bound_log = 0.0;
    std::string reason;
};

struct SampleRow {
    Complex z;
    int k = 0;
    double log_value = 0.0;
    double bound_log = 0.0;
};

/// Outcome of one sampled strict-inequality check. The claim holds on the
/// sample set iff violations is empty iff max_log_ratio < 0.
struct BoundReport {
    std::string claim;
    int k = 0;              // iteration index for residual reports, else 0
    double exponent = 0.0;  // e in |value| < |z|^e, 0 when not applicable
    std::size_t sample_count = 0;
    double max_log_ratio = 0.0;
    Complex worst_sample{0.0, 0.0};
    std::vector<SampleViolation> violations;
    std::size_t underflow_count = 0;  // samples where the value hit float 0
    std::optional<double> min_iterate_magnitude;
    std::optional<double> min_denominator_magnitude;
    std::optional<std::string> note;
    std::vector<SampleRow> rows;  // per-sample data, filled only on request

    bool passed() const { return violations.empty(); }
};

/// Checks |map(z)| < |z|^e on the sampled disk, e = 2 (Newton map f_p) or
/// 3 (Halley map g_p), comparing in the log domain.
BoundReport check_map_contraction(Method m, const RootParameter& p, const DiskSamplingPlan& plan,
                                  bool collect_rows = false);

/// Checks log|residual_k(z)| < e^k log|z| for k = 1..k_max, e = 2 or 3.
/// Residuals follow the one-step recurrence residual_{k+1} = map(residual_k),
/// carried in log form so that deep-k comparisons neither underflow nor
/// dissolve into float cancellation noise; samples whose residual sits below
/// the smallest positive double are tallied in underflow_count (they satisfy
/// the bound in log form whenever log|z| < 0).
std::vector<BoundReport> check_residual_bounds(const RootParameter& p, Method m, int k_max,
                                               const DiskSamplingPlan& plan,
                                               bool collect_rows = false);

/// Sampled evidence that iterates and step denominators stay away from 0
/// (no zeros, no poles on the disk). Violations are samples whose minimum
/// magnitude fell to `threshold` or below.
BoundReport check_no_pole_no_zero(const RootParameter& p, Method m, int k_max,
                                  const DiskSamplingPlan& plan, double threshold = kPoleTolerance);

/// Exact series of (1-z)^{1/p}: t_0 = 1 and
/// t_n = -(prod_{r=1..n-1} (rp-1)) / (n! p^n), the empty product being 1.
/// Cross-computed by the standard binomial recurrence and asserted equal.
RationalSeries binomial_root_series(const RootParameter& p, int order);

/// Series of the k-th iterate U_k or V_k around 0, computed by running the
/// iteration in exact truncated-series arithmetic (constant terms stay 1, so
/// every reciprocal exists).
RationalSeries iterate_series(Method m, const RootParameter& p, int k, int order);

/// Length of the longest coefficient prefix on which the k-th iterate series
/// agrees exactly with the binomial root series. The guarantee under test:
/// at least 2^k (Newton) or 3^k (Halley) leading coefficients match.
int check_prefix_agreement(Method m, const RootParameter& p, int k, int order);

struct OrderEstimate {
    /// ratios[i] = log|residual_{i+1}| / log|residual_i|; approaches the
    /// method order (2 or 3) as k grows.
    std::vector<double> ratios;
    /// |residual_k| for k = 0..k_max; entries too small for a double are
    /// reported as 0 and flag truncated_by_underflow. The ratios stay exact
    /// regardless (the trace is carried in log form).
    std::vector<double> residual_magnitudes;
    bool truncated_by_underflow = false;
};

/// Empirical order check from the residual trace at one point, 0 < |z| < 1.
OrderEstimate estimate_convergence_order(const RootParameter& p, Method m, Complex z, int k_max);

}  // namespace rootbound
