#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rootbound/report_json.hpp"
#include "rootbound/root_maps.hpp"
#include "rootbound/positivity.hpp"
#include "rootbound/verification.hpp"

namespace py = pybind11;
using namespace rootbound;

namespace {

py::object json_to_py(const json& node) {
    switch (node.type()) {
        case json::value_t::object: {
            py::dict d;
            for (const auto& [key, value] : node.items()) d[py::str(key)] = json_to_py(value);
            return d;
        }
        case json::value_t::array: {
            py::list l;
            for (const auto& value : node) l.append(json_to_py(value));
            return l;
        }
        case json::value_t::string:
            return py::str(node.get<std::string>());
        case json::value_t::boolean:
            return py::bool_(node.get<bool>());
        case json::value_t::number_integer:
            return py::int_(node.get<long long>());
        case json::value_t::number_unsigned:
            return py::int_(node.get<unsigned long long>());
        case json::value_t::number_float:
            return py::float_(node.get<double>());
        default:
            return py::none();
    }
}

Method method_from(const std::string& name) {
    if (name == "newton" || name == "f") return Method::newton;
    if (name == "halley" || name == "g") return Method::halley;
    throw std::invalid_argument("method must be 'newton' or 'halley' (or map name 'f'/'g')");
}

RootParameter p_from(const py::object& p) {
    if (py::isinstance<py::int_>(p)) return RootParameter::integer(p.cast<long>());
    return RootParameter::parse(p.cast<std::string>());
}

std::vector<std::string> series_strings(const RationalSeries& s) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(s.order()) + 1);
    for (int n = 0; n <= s.order(); ++n) out.push_back(s[n].str());
    return out;
}

DiskSamplingPlan plan_from(int radii, int angles, int random_count, std::uint64_t seed,
                           double exclusion) {
    return DiskSamplingPlan{radii, angles, random_count, seed, exclusion};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact positivity certificates and residual-bound verification for "
              "Newton/Halley pth-root iterations";

    m.def(
        "certify",
        [](const std::string& method, const py::object& p, int order) {
            const PositivityCertificate cert =
                certify(method_weights(method_from(method), p_from(p)), order);
            return json_to_py(to_json(cert));
        },
        py::arg("method"), py::arg("p"), py::arg("order") = 128,
        "Exact positivity certificate for the method's weight sequence");

    m.def(
        "certify_weights",
        [](const std::string& label, const std::vector<std::string>& values, int order) {
            std::vector<Rational> parsed;
            parsed.reserve(values.size());
            for (const auto& v : values) parsed.push_back(Rational::from_string(v));
            WeightSequence seq{label,
                               [parsed](int n) {
                                   if (n < 1 || static_cast<std::size_t>(n) > parsed.size())
                                       throw std::out_of_range("weight index out of range");
                                   return parsed[static_cast<std::size_t>(n - 1)];
                               },
                               std::nullopt};
            return json_to_py(to_json(certify(seq, order)));
        },
        py::arg("label"), py::arg("values"), py::arg("order"),
        "Certify a custom weight sequence given as exact 'num/den' strings for a_1, a_2, ...");

    m.def(
        "weights",
        [](const std::string& method, const py::object& p, int n) {
            return method_weights(method_from(method), p_from(p)).value(n).str();
        },
        py::arg("method"), py::arg("p"), py::arg("n"), "a_n as an exact string");

    m.def(
        "residual_map",
        [](const std::string& map, const py::object& p, Complex t) {
            return residual_map(method_from(map), p_from(p), t);
        },
        py::arg("map"), py::arg("p"), py::arg("t"),
        "One-step residual map f_p ('f'/'newton') or g_p ('g'/'halley') at t");

    m.def(
        "map_series",
        [](const std::string& map, const py::object& p, int order, const std::string& route) {
            return series_strings(map_series(method_from(map), p_from(p), order,
                                             route == "closed" ? SeriesRoute::closed_form
                                                               : SeriesRoute::weights));
        },
        py::arg("map"), py::arg("p"), py::arg("order") = 128, py::arg("route") = "weights",
        "Exact residual-map series coefficients as strings");

    m.def(
        "binomial_root_series",
        [](const py::object& p, int order) {
            return series_strings(binomial_root_series(p_from(p), order));
        },
        py::arg("p"), py::arg("order") = 128, "Exact series of (1-z)^(1/p)");

    m.def(
        "iterate_series",
        [](const std::string& method, const py::object& p, int k, int order) {
            return series_strings(iterate_series(method_from(method), p_from(p), k, order));
        },
        py::arg("method"), py::arg("p"), py::arg("k"), py::arg("order") = 128,
        "Exact series of the k-th iterate");

    m.def(
        "prefix_agreement",
        [](const std::string& method, const py::object& p, int k, int order) {
            return check_prefix_agreement(method_from(method), p_from(p), k, order);
        },
        py::arg("method"), py::arg("p"), py::arg("k"), py::arg("order") = 128,
        "Length of the exact common prefix with the binomial root series");

    m.def(
        "run_iteration",
        [](const std::string& method, const py::object& p, Complex z, int k_max) {
            return json_to_py(to_json(run_iteration(p_from(p), method_from(method), z, k_max)));
        },
        py::arg("method"), py::arg("p"), py::arg("z"), py::arg("k_max") = 3,
        "Iterates, residuals and recurrence discrepancies at one point");

    m.def(
        "estimate_convergence_order",
        [](const std::string& method, const py::object& p, Complex z, int k_max) {
            return json_to_py(
                to_json(estimate_convergence_order(p_from(p), method_from(method), z, k_max)));
        },
        py::arg("method"), py::arg("p"), py::arg("z"), py::arg("k_max") = 3,
        "log-residual ratios along the trace");

    m.def(
        "sample_disk",
        [](int radii, int angles, int random_count, std::uint64_t seed, double exclusion) {
            return sample_disk(plan_from(radii, angles, random_count, seed, exclusion));
        },
        py::arg("radii") = 64, py::arg("angles") = 128, py::arg("random_count") = 4096,
        py::arg("seed") = 42, py::arg("exclusion") = 1e-3,
        "Deterministic sample set over the closed unit disk");

    m.def(
        "check_map_contraction",
        [](const std::string& map, const py::object& p, int radii, int angles, int random_count,
           std::uint64_t seed, double exclusion) {
            return json_to_py(
                to_json(check_map_contraction(method_from(map), p_from(p),
                                              plan_from(radii, angles, random_count, seed, exclusion))));
        },
        py::arg("map"), py::arg("p"), py::arg("radii") = 64, py::arg("angles") = 128,
        py::arg("random_count") = 4096, py::arg("seed") = 42, py::arg("exclusion") = 1e-3,
        "Sampled check of |map(z)| < |z|^e");

    m.def(
        "check_residual_bounds",
        [](const std::string& method, const py::object& p, int k_max, int radii, int angles,
           int random_count, std::uint64_t seed, double exclusion) {
            py::list out;
            for (const auto& report :
                 check_residual_bounds(p_from(p), method_from(method), k_max,
                                       plan_from(radii, angles, random_count, seed, exclusion)))
                out.append(json_to_py(to_json(report)));
            return out;
        },
        py::arg("method"), py::arg("p"), py::arg("k_max") = 3, py::arg("radii") = 64,
        py::arg("angles") = 128, py::arg("random_count") = 4096, py::arg("seed") = 42,
        py::arg("exclusion") = 1e-3, "Sampled residual bounds for k = 1..k_max");

    m.def(
        "check_no_pole_no_zero",
        [](const std::string& method, const py::object& p, int k_max, double threshold, int radii,
           int angles, int random_count, std::uint64_t seed, double exclusion) {
            return json_to_py(
                to_json(check_no_pole_no_zero(p_from(p), method_from(method), k_max,
                                              plan_from(radii, angles, random_count, seed, exclusion),
                                              threshold)));
        },
        py::arg("method"), py::arg("p"), py::arg("k_max") = 3, py::arg("threshold") = kPoleTolerance,
        py::arg("radii") = 64, py::arg("angles") = 128, py::arg("random_count") = 4096,
        py::arg("seed") = 42, py::arg("exclusion") = 1e-3,
        "Sampled evidence that iterates and denominators stay away from 0");

    py::register_exception<CertifyError>(m, "CertifyError", PyExc_ValueError);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
