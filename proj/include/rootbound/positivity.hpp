#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootbound/rational.hpp"

namespace rootbound {

/// Weight sequence (a_n)_{n>=1} of exact rationals. The hypotheses
/// (a_1 = 1, positivity, non-increasing) are re-verified by certify() on the
/// queried prefix; the declaration is never trusted.
struct WeightSequence {
    std::string label;
    std::function<Rational(int)> value;  // defined for n >= 1
    std::optional<int> declared_ell;

    /// a_1 .. a_n as a vector (index 0 unused, set to 0).
    std::vector<Rational> prefix(int n) const;
};

/// Thrown when certification is refused; `violated` names the first property
/// of the input that failed.
class CertifyError : public std::runtime_error {
  public:
    CertifyError(std::string violated_property, const std::string& detail)
        : std::runtime_error("certificate refused: " + violated_property +
                             (detail.empty() ? "" : " (" + detail + ")")),
          violated(std::move(violated_property)) {}

    std::string violated;
};

struct CertificateCheck {
    std::string name;
    bool passed;
};

/// Exact-arithmetic record that the coefficient sequence c_n of
/// F(z) = 1 - (1-z) exp(sum a_n z^n / n) satisfies the sign and sum
/// constraints: c_n = 0 below ell, c_n > 0 from ell on, and the partial sums
/// telescope to 1 - b_m.
struct PositivityCertificate {
    std::string label;
    int ell = 0;
    int order = 0;
    std::vector<Rational> b;  // b_0 .. b_N
    std::vector<Rational> c;  // c_0 .. c_N, c_0 = 0 by convention
    std::vector<CertificateCheck> checks;

    bool all_passed() const;
    bool check(const std::string& name) const;
};

/// b_0 = 1, b_{n+1} = (1/(n+1)) sum_{k=0..n} a_{k+1} b_{n-k}; all b_n > 0 for
/// positive weights.
std::vector<Rational> compute_b(const WeightSequence& a, int order);

/// c_0 = 0, c_{n+1} = b_n - b_{n+1}: the coefficients of 1 - (1-z) B(z).
std::vector<Rational> compute_c_from_differences(const std::vector<Rational>& b);

/// c_0 = c_1 = 0, c_n = (1/n) sum_{k=2..n} (a_{k-1} - a_k) b_{n-k} for n >= 2.
/// Independent route to the same coefficients; certify checks the two agree.
std::vector<Rational> compute_c_from_convolution(const WeightSequence& a,
                                                 const std::vector<Rational>& b, int order);

/// Smallest k <= horizon with a_k < 1. Throws CertifyError when the sequence
/// stays at 1 through the horizon (ell undefined / constant input).
int detect_ell(const WeightSequence& a, int horizon);

/// Runs the whole exact pipeline: verifies the hypotheses on a_1..a_{N+1},
/// detects ell, computes b and both c routes, and records every identity
/// check. Refuses (throws CertifyError) if a hypothesis fails.
PositivityCertificate certify(const WeightSequence& a, int order);

}  // namespace rootbound
