#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootbound/rational.hpp"
#include "rootbound/series.hpp"
#include "rootbound/positivity.hpp"

namespace rootbound {

using Complex = std::complex<double>;

enum class Method { newton, halley };

std::string method_name(Method m);

/// Contraction exponent of the method's one-step residual map: 2 for the
/// Newton map, 3 for the Halley map.
inline int method_exponent(Method m) { return m == Method::newton ? 2 : 3; }

/// The root exponent p. Maps and weight sequences accept any rational p > 1;
/// running the iterations additionally requires an integer p >= 2.
class RootParameter {
  public:
    explicit RootParameter(Rational p);
    static RootParameter integer(long p);
    static RootParameter parse(const std::string& text);  // "3" or "5/2"

    const Rational& value() const { return p_; }
    bool is_integer() const { return p_.is_integer(); }
    double to_double() const { return p_.to_double(); }

    /// p as a long; throws unless is_integer().
    long as_integer() const;

  private:
    Rational p_;
};

/// Thrown when a complex evaluation lands within tolerance of a pole or a
/// division by (near) zero.
class PoleError : public std::domain_error {
  public:
    PoleError(const std::string& what, double denominator_magnitude)
        : std::domain_error(what + " (denominator magnitude " +
                            std::to_string(denominator_magnitude) + ")"),
          magnitude(denominator_magnitude) {}

    double magnitude;
};

/// Magnitude below which a complex denominator counts as a pole.
inline constexpr double kPoleTolerance = 1e-12;

/// Weight sequence a_n = p^{1-n} driving the Newton residual map.
WeightSequence newton_weights(const RootParameter& p);

/// Weight sequence a_n = p (alpha^n - beta^n), alpha = (p+1)/(2p),
/// beta = (p-1)/(2p), driving the Halley residual map.
WeightSequence halley_weights(const RootParameter& p);

WeightSequence method_weights(Method m, const RootParameter& p);

/// Exact check of the displayed identity a_n - a_{n+1} = alpha beta a_{n-1}
/// for the Halley weights, n >= 2.
bool halley_weight_identity_holds(const RootParameter& p, int n_max);

/// One-step residual map of Newton's iteration:
/// f_p(t) = 1 - (1-t) (1 - t/p)^{-p}. Non-integer p uses the principal power
/// and is restricted to |t| < p.
Complex newton_residual_map(const RootParameter& p, Complex t);

/// One-step residual map of Halley's iteration:
/// g_p(t) = 1 - (1-t) ((2p-(p-1)t)/(2p-(p+1)t))^p. Non-integer p restricted
/// to |t| < 2p/(p+1).
Complex halley_residual_map(const RootParameter& p, Complex t);

Complex residual_map(Method m, const RootParameter& p, Complex t);

/// U_{k+1} = ((p-1) U_k + (1-z)/U_k^{p-1}) / p.
Complex newton_step(const RootParameter& p, Complex u, Complex z);

/// V_{k+1} = V_k ((p-1) V_k^p + (p+1)(1-z)) / ((p+1) V_k^p + (p-1)(1-z)).
Complex halley_step(const RootParameter& p, Complex v, Complex z);

enum class SeriesRoute { closed_form, weights };

/// Exact series of the residual map around 0. The weights route expands
/// 1 - (1-z) exp(sum a_n z^n / n) for any rational p > 1; the closed-form
/// route expands the rational/power expression and needs integer p.
RationalSeries map_series(Method m, const RootParameter& p, int order, SeriesRoute route);

struct IterationStep {
    Complex iterate;   // U_k or V_k at z
    Complex residual;  // 1 - (1-z) / iterate^p
    /// |residual_k - map(residual_{k-1})|, the one-step recurrence
    /// discrepancy; absent at k = 0 and where the map itself poles.
    std::optional<double> recurrence_discrepancy;
};

class IterationError : public std::runtime_error {
  public:
    IterationError(int step, const std::string& what)
        : std::runtime_error("iteration aborted at step " + std::to_string(step) + ": " + what),
          step(step) {}

    int step;
};

struct IterationTrace {
    Method method = Method::newton;
    long p = 2;
    Complex z;
    std::vector<IterationStep> steps;  // index k = 0 .. k_max

    int k_max() const { return static_cast<int>(steps.size()) - 1; }
};

/// Runs k_max steps from the start value 1, recording iterates, residuals and
/// per-step recurrence discrepancies. Pole or division failure aborts with
/// the step index (IterationError).
IterationTrace run_iteration(const RootParameter& p, Method m, Complex z, int k_max);

}  // namespace rootbound
