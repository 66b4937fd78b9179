#include "rootbound/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "rootbound/report_json.hpp"
#include "rootbound/root_maps.hpp"
#include "rootbound/positivity.hpp"
#include "rootbound/verification.hpp"

namespace rootbound {

namespace {

struct CliConfig {
    std::string p_text = "2";
    std::string method = "newton";
    std::string map;
    int order = 128;
    int k_max = 3;
    int iterate_k = 1;
    std::string route = "weights";
    double z_re = 0.5;
    double z_im = 0.0;
    double min_magnitude = kPoleTolerance;
    DiskSamplingPlan plan;
    std::string format = "json";
    std::string output_path;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Method parse_method(const std::string& name) {
    if (name == "newton") return Method::newton;
    if (name == "halley") return Method::halley;
    throw CLI::ValidationError("--method", "must be 'newton' or 'halley'");
}

Method map_to_method(const std::string& map) {
    if (map == "f") return Method::newton;
    if (map == "g") return Method::halley;
    throw CLI::ValidationError("--map", "must be 'f' or 'g'");
}

RootParameter parse_p(const std::string& text, bool integer_required) {
    RootParameter p = RootParameter::parse(text);
    if (integer_required && !p.is_integer())
        throw std::invalid_argument("p must be an integer >= 2 for iteration commands");
    return p;
}

void write_bound_rows(std::ostream& os, const BoundReport& report) {
    for (const auto& row : report.rows)
        os << format_double(row.z.real()) << ',' << format_double(row.z.imag()) << ',' << row.k
           << ',' << format_double(row.log_value) << ',' << format_double(row.bound_log) << ','
           << format_double(row.bound_log - row.log_value) << '\n';
}

constexpr const char* kBoundCsvHeader = "re_z,im_z,k,log_residual,bound_log,margin\n";

class Command {
  public:
    Command(std::ostream& out, const CliConfig& cfg) : out_(out), cfg_(cfg) {}

    /// Writes `doc` (or CSV produced by `csv`) to --output or stdout.
    void emit(const json& doc, const std::function<void(std::ostream&)>& csv = {}) const {
        std::ostringstream body;
        if (cfg_.format == "csv" && csv)
            csv(body);
        else
            body << doc.dump(2) << '\n';
        if (cfg_.output_path.empty()) {
            out_ << body.str();
        } else {
            std::ofstream file(cfg_.output_path, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot open output file " + cfg_.output_path);
            file << body.str();
        }
    }

  private:
    std::ostream& out_;
    const CliConfig& cfg_;
};

int cmd_certify(const CliConfig& cfg, std::ostream& out) {
    const RootParameter p = parse_p(cfg.p_text, false);
    const Method m = parse_method(cfg.method);
    const PositivityCertificate cert = certify(method_weights(m, p), cfg.order);

    json doc{{"command", "certify"}, {"seed", cfg.plan.seed}};
    doc["certificate"] = to_json(cert);
    Command(out, cfg).emit(doc, [&cert](std::ostream& os) {
        os << "n,b,c\n";
        for (std::size_t n = 0; n < cert.b.size(); ++n)
            os << n << ',' << cert.b[n].str() << ',' << cert.c[n].str() << '\n';
    });
    return cert.all_passed() ? 0 : 1;
}

int cmd_contract_check(const CliConfig& cfg, std::ostream& out) {
    const RootParameter p = parse_p(cfg.p_text, false);
    const Method m = map_to_method(cfg.map);
    const BoundReport report = check_map_contraction(m, p, cfg.plan, cfg.format == "csv");

    json doc{{"command", "contract-check"},
             {"map", cfg.map},
             {"p", p.value().str()},
             {"seed", cfg.plan.seed},
             {"plan", to_json(cfg.plan)},
             {"report", to_json(report)}};
    Command(out, cfg).emit(doc, [&report](std::ostream& os) {
        os << kBoundCsvHeader;
        write_bound_rows(os, report);
    });
    return report.passed() ? 0 : 1;
}

int cmd_residual_check(const CliConfig& cfg, std::ostream& out) {
    const RootParameter p = parse_p(cfg.p_text, true);
    const Method m = parse_method(cfg.method);
    const std::vector<BoundReport> reports =
        check_residual_bounds(p, m, cfg.k_max, cfg.plan, cfg.format == "csv");
    const BoundReport evidence = check_no_pole_no_zero(p, m, cfg.k_max, cfg.plan, cfg.min_magnitude);

    bool passed = evidence.passed();
    json bounds = json::array();
    for (const auto& r : reports) {
        passed = passed && r.passed();
        bounds.push_back(to_json(r));
    }
    json doc{{"command", "residual-check"},
             {"method", cfg.method},
             {"p", p.value().str()},
             {"k_max", cfg.k_max},
             {"seed", cfg.plan.seed},
             {"plan", to_json(cfg.plan)},
             {"bounds", bounds},
             {"no_pole_no_zero", to_json(evidence)}};
    Command(out, cfg).emit(doc, [&reports](std::ostream& os) {
        os << kBoundCsvHeader;
        for (const auto& r : reports) write_bound_rows(os, r);
    });
    return passed ? 0 : 1;
}

int cmd_series(const CliConfig& cfg, std::ostream& out, bool iterate_requested) {
    json doc{{"command", "series"}, {"seed", cfg.plan.seed}};
    RationalSeries series(cfg.order);
    if (iterate_requested) {
        const RootParameter p = parse_p(cfg.p_text, true);
        const Method m = parse_method(cfg.method);
        series = iterate_series(m, p, cfg.iterate_k, cfg.order);
        doc["kind"] = "iterate";
        doc["method"] = cfg.method;
        doc["k"] = cfg.iterate_k;
        doc["p"] = p.value().str();
    } else if (cfg.map == "root") {
        const RootParameter p = parse_p(cfg.p_text, true);
        series = binomial_root_series(p, cfg.order);
        doc["kind"] = "root";
        doc["p"] = p.value().str();
    } else {
        const Method m = map_to_method(cfg.map);
        const bool closed = cfg.route == "closed";
        if (!closed && cfg.route != "weights")
            throw CLI::ValidationError("--route", "must be 'closed' or 'weights'");
        const RootParameter p = parse_p(cfg.p_text, closed);
        series = map_series(m, p, cfg.order,
                            closed ? SeriesRoute::closed_form : SeriesRoute::weights);
        doc["kind"] = "map";
        doc["map"] = cfg.map;
        doc["route"] = cfg.route;
        doc["p"] = p.value().str();
    }
    doc["order"] = cfg.order;
    doc["coefficients"] = series_to_json(series);
    Command(out, cfg).emit(doc, [&series](std::ostream& os) {
        os << "n,coefficient\n";
        for (int n = 0; n <= series.order(); ++n) os << n << ',' << series[n].str() << '\n';
    });
    return 0;
}

int required_prefix(Method m, int k) {
    int req = 1;
    for (int i = 0; i < k; ++i) req *= method_exponent(m);
    return req;
}

int cmd_prefix_check(const CliConfig& cfg, std::ostream& out) {
    const RootParameter p = parse_p(cfg.p_text, true);
    const Method m = parse_method(cfg.method);
    if (cfg.order < required_prefix(m, cfg.k_max))
        throw std::invalid_argument("order too small: need at least " +
                                    std::to_string(required_prefix(m, cfg.k_max)) +
                                    " coefficients for k_max");
    bool all_passed = true;
    json results = json::array();
    for (int k = 0; k <= cfg.k_max; ++k) {
        const int required = required_prefix(m, k);
        const int prefix = check_prefix_agreement(m, p, k, cfg.order);
        const bool passed = prefix >= required;
        all_passed = all_passed && passed;
        results.push_back(json{
            {"k", k}, {"required_prefix", required}, {"prefix", prefix}, {"passed", passed}});
    }
    json doc{{"command", "prefix-check"}, {"method", cfg.method},   {"p", p.value().str()},
             {"k_max", cfg.k_max},        {"order", cfg.order},     {"seed", cfg.plan.seed},
             {"results", results},        {"passed", all_passed}};
    Command(out, cfg).emit(doc, [&](std::ostream& os) {
        os << "method,p,k,required_prefix,prefix,passed\n";
        for (const auto& row : results)
            os << cfg.method << ',' << cfg.p_text << ',' << row["k"] << ','
               << row["required_prefix"] << ',' << row["prefix"] << ','
               << (row["passed"].get<bool>() ? 1 : 0) << '\n';
    });
    return all_passed ? 0 : 1;
}

int cmd_order_estimate(const CliConfig& cfg, std::ostream& out) {
    const RootParameter p = parse_p(cfg.p_text, true);
    const Method m = parse_method(cfg.method);
    const Complex z(cfg.z_re, cfg.z_im);
    const OrderEstimate estimate = estimate_convergence_order(p, m, z, cfg.k_max);
    const IterationTrace trace = run_iteration(p, m, z, cfg.k_max);

    json doc{{"command", "order-estimate"},
             {"method", cfg.method},
             {"p", p.value().str()},
             {"z", complex_to_json(z)},
             {"k_max", cfg.k_max},
             {"seed", cfg.plan.seed},
             {"estimate", to_json(estimate)},
             {"trace", to_json(trace)}};
    Command(out, cfg).emit(doc, [&estimate](std::ostream& os) {
        os << "k,residual_magnitude,ratio_from_previous\n";
        for (std::size_t k = 0; k < estimate.residual_magnitudes.size(); ++k) {
            os << k << ',' << format_double(estimate.residual_magnitudes[k]) << ',';
            if (k >= 1 && k - 1 < estimate.ratios.size())
                os << format_double(estimate.ratios[k - 1]);
            os << '\n';
        }
    });
    return 0;
}

int cmd_verify_all(const CliConfig& cfg, std::ostream& out) {
    const RootParameter p = parse_p(cfg.p_text, true);
    bool all_passed = true;
    json doc{{"command", "verify-all"}, {"p", p.value().str()},      {"order", cfg.order},
             {"k_max", cfg.k_max},      {"seed", cfg.plan.seed},     {"plan", to_json(cfg.plan)}};

    json certificates = json::object();
    for (Method m : {Method::newton, Method::halley}) {
        const PositivityCertificate cert = certify(method_weights(m, p), cfg.order);
        all_passed = all_passed && cert.all_passed();
        certificates[method_name(m)] = to_json(cert);
    }
    doc["certificates"] = certificates;

    json contraction = json::object();
    for (Method m : {Method::newton, Method::halley}) {
        const BoundReport report = check_map_contraction(m, p, cfg.plan);
        all_passed = all_passed && report.passed();
        contraction[m == Method::newton ? "f" : "g"] = to_json(report);
    }
    doc["contraction"] = contraction;

    json residual = json::object();
    for (Method m : {Method::newton, Method::halley}) {
        json bounds = json::array();
        for (const auto& report : check_residual_bounds(p, m, cfg.k_max, cfg.plan)) {
            all_passed = all_passed && report.passed();
            bounds.push_back(to_json(report));
        }
        residual[method_name(m)] = bounds;
    }
    doc["residual_bounds"] = residual;

    json prefixes = json::object();
    for (Method m : {Method::newton, Method::halley}) {
        json rows = json::array();
        for (int k = 0; k <= cfg.k_max; ++k) {
            const int required = required_prefix(m, k);
            if (required > cfg.order) break;
            const int prefix = check_prefix_agreement(m, p, k, cfg.order);
            all_passed = all_passed && prefix >= required;
            rows.push_back(json{{"k", k},
                                {"required_prefix", required},
                                {"prefix", prefix},
                                {"passed", prefix >= required}});
        }
        prefixes[method_name(m)] = rows;
    }
    doc["prefix_agreement"] = prefixes;
    doc["all_passed"] = all_passed;

    Command(out, cfg).emit(doc);
    return all_passed ? 0 : 1;
}

void add_plan_options(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--radii", cfg.plan.radii_count, "Polar grid radii count");
    cmd->add_option("--angles", cfg.plan.angle_count, "Polar grid angle count");
    cmd->add_option("--random-count", cfg.plan.random_count, "Seeded random sample count");
    cmd->add_option("--seed", cfg.plan.seed, "RNG seed (echoed in reports)");
    cmd->add_option("--exclusion", cfg.plan.exclusion_radius,
                    "Exclusion radius around z = 0 and z = 1");
}

void add_output_options(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--format", cfg.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output,-o", cfg.output_path, "Write the report to this file");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Exact positivity certificates and residual-bound verification for "
                 "Newton/Halley pth-root iterations"};
    app.require_subcommand(1);

    auto* certify_cmd = app.add_subcommand("certify", "Exact positivity certificate for a method's weights");
    certify_cmd->add_option("--method", cfg.method, "newton or halley");
    certify_cmd->add_option("--p", cfg.p_text, "Root exponent p > 1 (integer or num/den)");
    certify_cmd->add_option("--order,-N", cfg.order, "Truncation order");

    auto* contract_cmd = app.add_subcommand("contract-check", "Sampled check of |map(z)| < |z|^e");
    contract_cmd->add_option("--map", cfg.map, "f (Newton map) or g (Halley map)")->required();
    contract_cmd->add_option("--p", cfg.p_text, "Root exponent p > 1 (integer or num/den)");
    add_plan_options(contract_cmd, cfg);

    auto* residual_cmd =
        app.add_subcommand("residual-check", "Sampled residual bounds |residual_k| < |z|^(e^k)");
    residual_cmd->add_option("--method", cfg.method, "newton or halley");
    residual_cmd->add_option("--p", cfg.p_text, "Integer root exponent p >= 2");
    residual_cmd->add_option("--k-max", cfg.k_max, "Number of iteration steps");
    residual_cmd->add_option("--min-magnitude", cfg.min_magnitude,
                             "No-pole/no-zero evidence threshold");
    add_plan_options(residual_cmd, cfg);

    auto* series_cmd = app.add_subcommand("series", "Exact series expansions");
    auto* map_opt = series_cmd->add_option("--map", cfg.map, "f, g, or root ((1-z)^(1/p))");
    auto* iter_opt =
        series_cmd->add_option("--iterate-k", cfg.iterate_k, "Emit the k-th iterate series");
    series_cmd->add_option("--method", cfg.method, "newton or halley (with --iterate-k)");
    series_cmd->add_option("--p", cfg.p_text, "Root exponent");
    series_cmd->add_option("--order,-N", cfg.order, "Truncation order");
    series_cmd->add_option("--route", cfg.route, "closed or weights (map series only)");
    map_opt->excludes(iter_opt);

    auto* prefix_cmd = app.add_subcommand(
        "prefix-check", "Exact prefix agreement of iterate series with the binomial root series");
    prefix_cmd->add_option("--method", cfg.method, "newton or halley");
    prefix_cmd->add_option("--p", cfg.p_text, "Integer root exponent p >= 2");
    prefix_cmd->add_option("--k-max", cfg.k_max, "Check k = 0..k_max");
    prefix_cmd->add_option("--order,-N", cfg.order, "Truncation order");

    auto* order_cmd =
        app.add_subcommand("order-estimate", "Empirical convergence order from residual logs");
    order_cmd->add_option("--method", cfg.method, "newton or halley");
    order_cmd->add_option("--p", cfg.p_text, "Integer root exponent p >= 2");
    order_cmd->add_option("--z-re", cfg.z_re, "Re(z), default 0.5");
    order_cmd->add_option("--z-im", cfg.z_im, "Im(z), default 0");
    order_cmd->add_option("--k-max", cfg.k_max, "Number of iteration steps");

    auto* all_cmd = app.add_subcommand(
        "verify-all", "Certificates, contraction, residual and prefix checks in one run");
    all_cmd->add_option("--p", cfg.p_text, "Integer root exponent p >= 2");
    all_cmd->add_option("--order,-N", cfg.order, "Truncation order for certificates");
    all_cmd->add_option("--k-max", cfg.k_max, "Iteration depth for residual/prefix checks");
    add_plan_options(all_cmd, cfg);

    for (CLI::App* cmd : {certify_cmd, contract_cmd, residual_cmd, series_cmd, prefix_cmd,
                          order_cmd, all_cmd})
        add_output_options(cmd, cfg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "rootbound: " << e.what() << '\n';
        return 2;
    }

    try {
        if (app.got_subcommand(certify_cmd)) return cmd_certify(cfg, out);
        if (app.got_subcommand(contract_cmd)) return cmd_contract_check(cfg, out);
        if (app.got_subcommand(residual_cmd)) return cmd_residual_check(cfg, out);
        if (app.got_subcommand(series_cmd)) {
            if (!*map_opt && !*iter_opt)
                throw std::invalid_argument("series: pass --map or --iterate-k");
            return cmd_series(cfg, out, static_cast<bool>(*iter_opt));
        }
        if (app.got_subcommand(prefix_cmd)) return cmd_prefix_check(cfg, out);
        if (app.got_subcommand(order_cmd)) return cmd_order_estimate(cfg, out);
        if (app.got_subcommand(all_cmd)) return cmd_verify_all(cfg, out);
    } catch (const CertifyError& e) {
        err << "rootbound: " << e.what() << '\n';
        return 1;  // refused certificate
    } catch (const CLI::ValidationError& e) {
        err << "rootbound: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "rootbound: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "rootbound: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace rootbound
