#include "rootbound/report_json.hpp"

namespace rootbound {

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json rational_vector_to_json(const std::vector<Rational>& values) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(v.str());
    return arr;
}

json series_to_json(const RationalSeries& series) {
    json arr = json::array();
    for (int n = 0; n <= series.order(); ++n) arr.push_back(series[n].str());
    return arr;
}

json to_json(const PositivityCertificate& cert) {
    json checks = json::object();
    for (const auto& check : cert.checks) checks[check.name] = check.passed;
    return json{{"label", cert.label},
                {"ell", cert.ell},
                {"order", cert.order},
                {"b", rational_vector_to_json(cert.b)},
                {"c", rational_vector_to_json(cert.c)},
                {"checks", checks}};
}

json to_json(const DiskSamplingPlan& plan) {
    return json{{"radii_count", plan.radii_count},
                {"angle_count", plan.angle_count},
                {"random_count", plan.random_count},
                {"seed", plan.seed},
                {"exclusion_radius", plan.exclusion_radius}};
}

json to_json(const BoundReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back(json{{"z", complex_to_json(v.z)},
                                  {"k", v.k},
                                  {"log_value", v.log_value},
                                  {"bound_log", v.bound_log},
                                  {"reason", v.reason}});
    json doc{{"claim", report.claim},
             {"k", report.k},
             {"exponent", report.exponent},
             {"sample_count", report.sample_count},
             {"passed", report.passed()},
             {"max_log_ratio", report.max_log_ratio},
             {"worst_sample", complex_to_json(report.worst_sample)},
             {"underflow_count", report.underflow_count},
             {"violations", violations}};
    if (report.min_iterate_magnitude) doc["min_iterate_magnitude"] = *report.min_iterate_magnitude;
    if (report.min_denominator_magnitude)
        doc["min_denominator_magnitude"] = *report.min_denominator_magnitude;
    if (report.note) doc["note"] = *report.note;
    return doc;
}

json to_json(const IterationTrace& trace) {
    json steps = json::array();
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& s = trace.steps[k];
        json step{{"k", k},
                  {"iterate", complex_to_json(s.iterate)},
                  {"residual", complex_to_json(s.residual)}};
        if (s.recurrence_discrepancy) step["recurrence_discrepancy"] = *s.recurrence_discrepancy;
        steps.push_back(step);
    }
    return json{{"method", method_name(trace.method)},
                {"p", trace.p},
                {"z", complex_to_json(trace.z)},
                {"steps", steps}};
}

json to_json(const OrderEstimate& estimate) {
    return json{{"ratios", estimate.ratios},
                {"residual_magnitudes", estimate.residual_magnitudes},
                {"truncated_by_underflow", estimate.truncated_by_underflow}};
}

}  // namespace rootbound
