#include "rootbound/positivity.hpp"

#include <algorithm>

namespace rootbound {

std::vector<Rational> WeightSequence::prefix(int n) const {
    std::vector<Rational> a(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) a[static_cast<std::size_t>(i)] = value(i);
    return a;
}

bool PositivityCertificate::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CertificateCheck& c) { return c.passed; });
}

bool PositivityCertificate::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c.passed;
    throw std::out_of_range("no such certificate check: " + name);
}

std::vector<Rational> compute_b(const WeightSequence& a, int order) {
    if (order < 0) throw std::invalid_argument("compute_b: order must be >= 0");
    const std::vector<Rational> w = a.prefix(order + 1);
    std::vector<Rational> b(static_cast<std::size_t>(order) + 1);
    b[0] = Rational(1);
    for (int n = 0; n < order; ++n) {
        Rational acc(0);
        for (int k = 0; k <= n; ++k) acc += w[static_cast<std::size_t>(k + 1)] * b[static_cast<std::size_t>(n - k)];
        b[static_cast<std::size_t>(n + 1)] = acc / Rational(n + 1);
        if (!(b[static_cast<std::size_t>(n + 1)] > Rational(0)))
            throw CertifyError("b positive", a.label + ": b_" + std::to_string(n + 1) +
                                                 " is not positive; weights invalid");
    }
    return b;
}

std::vector<Rational> compute_c_from_differences(const std::vector<Rational>& b) {
    if (b.empty() || b[0] != Rational(1))
        throw std::invalid_argument("compute_c_from_differences: b must start with b_0 = 1");
    std::vector<Rational> c(b.size());
    c[0] = Rational(0);
    for (std::size_t n = 0; n + 1 < b.size(); ++n) c[n + 1] = b[n] - b[n + 1];
    return c;
}

std::vector<Rational> compute_c_from_convolution(const WeightSequence& a,
                                                 const std::vector<Rational>& b, int order) {
    if (b.size() != static_cast<std::size_t>(order) + 1)
        throw std::invalid_argument("compute_c_from_convolution: b has the wrong length");
    const std::vector<Rational> w = a.prefix(std::max(order, 1));
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    for (int n = 2; n <= order; ++n) {
        Rational acc(0);
        for (int k = 2; k <= n; ++k)
            acc += (w[static_cast<std::size_t>(k - 1)] - w[static_cast<std::size_t>(k)]) *
                   b[static_cast<std::size_t>(n - k)];
        c[static_cast<std::size_t>(n)] = acc / Rational(n);
    }
    return c;
}

int detect_ell(const WeightSequence& a, int horizon) {
    if (horizon < 1) throw std::invalid_argument("detect_ell: horizon must be >= 1");
    for (int k = 1; k <= horizon; ++k)
        if (a.value(k) < Rational(1)) return k;
    throw CertifyError("ell defined",
                       a.label + ": sequence constant to horizon " + std::to_string(horizon) +
                           "; no index with a_k < 1");
}

PositivityCertificate certify(const WeightSequence& a, int order) {
    if (order < 1) throw std::invalid_argument("certify: order must be >= 1");
    const std::vector<Rational> w = a.prefix(order + 1);

    if (w[1] != Rational(1))
        throw CertifyError("a_1 = 1", a.label + ": a_1 = " + w[1].str());
    for (int n = 1; n <= order + 1; ++n)
        if (!(w[static_cast<std::size_t>(n)] > Rational(0)))
            throw CertifyError("weights positive", a.label + ": a_" + std::to_string(n) + " = " +
                                                       w[static_cast<std::size_t>(n)].str());
    for (int n = 1; n <= order; ++n)
        if (w[static_cast<std::size_t>(n)] < w[static_cast<std::size_t>(n + 1)])
            throw CertifyError("weights non-increasing",
                               a.label + ": a_" + std::to_string(n) + " < a_" + std::to_string(n + 1));

    const int ell = detect_ell(a, order);
    if (order < ell)
        throw CertifyError("order >= ell", a.label + ": order " + std::to_string(order) +
                                               " below ell " + std::to_string(ell));

    PositivityCertificate cert;
    cert.label = a.label;
    cert.ell = ell;
    cert.order = order;
    cert.checks.push_back({"a1_equals_1", true});
    cert.checks.push_back({"weights_positive", true});
    cert.checks.push_back({"weights_non_increasing", true});

    cert.b = compute_b(a, order);
    bool b_positive = true;
    for (const auto& bn : cert.b) b_positive = b_positive && bn > Rational(0);
    cert.checks.push_back({"b_positive", b_positive});
    cert.checks.push_back({"b1_equals_1", cert.b.size() > 1 && cert.b[1] == Rational(1)});

    cert.c = compute_c_from_differences(cert.b);
    const std::vector<Rational> c_conv = compute_c_from_convolution(a, cert.b, order);
    cert.checks.push_back({"c_routes_agree", cert.c == c_conv});

    // Partial sums: sum_{n=1..m} c_n = 1 - b_m, exactly, for every m.
    bool telescopes = true;
    bool sums_monotone_bounded = true;
    Rational partial(0);
    Rational prev_partial(0);
    for (int m = 1; m <= order; ++m) {
        partial += cert.c[static_cast<std::size_t>(m)];
        telescopes = telescopes && partial == Rational(1) - cert.b[static_cast<std::size_t>(m)];
        sums_monotone_bounded =
            sums_monotone_bounded && partial >= prev_partial && partial <= Rational(1);
        prev_partial = partial;
    }
    cert.checks.push_back({"partial_sums_telescope", telescopes});
    cert.checks.push_back({"partial_sums_monotone_bounded", sums_monotone_bounded});

    bool in_unit_interval = true;
    for (const auto& cn : cert.c)
        in_unit_interval = in_unit_interval && cn >= Rational(0) && cn < Rational(1);
    cert.checks.push_back({"c_in_unit_interval", in_unit_interval});

    bool zero_below_ell = true;
    for (int n = 0; n < ell; ++n)
        zero_below_ell = zero_below_ell && cert.c[static_cast<std::size_t>(n)] == Rational(0);
    cert.checks.push_back({"c_zero_below_ell", zero_below_ell});

    bool positive_from_ell = true;
    for (int n = ell; n <= order; ++n)
        positive_from_ell = positive_from_ell && cert.c[static_cast<std::size_t>(n)] > Rational(0);
    cert.checks.push_back({"c_positive_from_ell", positive_from_ell});

    // Secondary cross-check: the explicit lower bound
    // c_n >= (a_{ell-1} - a_ell) b_{n-ell} / n. a_1 = 1 forces ell >= 2,
    // so a_{ell-1} is always in range.
    const Rational drop =
        w[static_cast<std::size_t>(ell - 1)] - w[static_cast<std::size_t>(ell)];
    bool lower_bound = true;
    for (int n = ell; n <= order; ++n)
        lower_bound = lower_bound && cert.c[static_cast<std::size_t>(n)] >=
                                         drop * cert.b[static_cast<std::size_t>(n - ell)] / Rational(n);
    cert.checks.push_back({"c_lower_bound", lower_bound});

    return cert;
}

}  // namespace rootbound
