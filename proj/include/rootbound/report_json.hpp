#pragma once

#include <json.hpp>

#include "rootbound/root_maps.hpp"
#include "rootbound/positivity.hpp"
#include "rootbound/verification.hpp"

namespace rootbound {

using json = nlohmann::ordered_json;

/// {label, ell, order, b: ["num/den"...], c: [...], checks: {name: bool}}.
/// Rationals serialize as exact strings, never floats.
json to_json(const PositivityCertificate& cert);

json to_json(const DiskSamplingPlan& plan);
json to_json(const BoundReport& report);
json to_json(const IterationTrace& trace);
json to_json(const OrderEstimate& estimate);

json rational_vector_to_json(const std::vector<Rational>& values);
json series_to_json(const RationalSeries& series);
json complex_to_json(Complex z);

}  // namespace rootbound
