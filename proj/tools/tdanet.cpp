// Command-line front end: threshold-filtration persistent homology of
// weighted networks and diagram-distance time series.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tdanet/commands.hpp"

namespace {

double parse_degree(const std::string& text) {
    if (text == "inf" || text == "infinity")
        return std::numeric_limits<double>::infinity();
    double value = 0.0;
    if (!tdanet::detail::parse_full_double(text, value))
        throw CLI::ValidationError("--degree", "expected a number or \"inf\", got \"" + text + "\"");
    if (!(value > 0.0))
        throw CLI::ValidationError("--degree", "must be > 0, got \"" + text + "\"");
    return value;
}

tdanet::FiltrationDirection parse_direction(const std::string& text, double theta_max) {
    if (text == "sub") return tdanet::FiltrationDirection::sub_level();
    return tdanet::FiltrationDirection::super_level(theta_max);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistent homology of weighted networks and early-warning distance series"};
    app.require_subcommand(1);

    std::string input, kind = "prices", out, direction = "sub", degree_text = "2";
    int window = 15, stride = 10, max_dim = 2, reference = 0, dim = 0;
    int assets = 30, days = 504;
    double inf_cap = 2.0, theta_max = 2.0;
    std::uint64_t seed = 42;
    std::string diagram_a, diagram_b;

    CLI::App* run = app.add_subcommand("run", "full pipeline: prices to distance series");
    run->add_option("--input", input, "price CSV")->required();
    run->add_option("--kind", kind, "input kind (prices)")
        ->check(CLI::IsMember({"prices", "distance-matrix", "point-cloud"}));
    run->add_option("--window", window, "correlation horizon T (T+1 observations)");
    run->add_option("--stride", stride, "sampling step between diagrams");
    run->add_option("--direction", direction, "sub or super")
        ->check(CLI::IsMember({"sub", "super"}));
    run->add_option("--theta-max", theta_max, "dual weight bound for super-level runs");
    run->add_option("--max-dim", max_dim, "clique dimension cap");
    run->add_option("--degree", degree_text, "Wasserstein degree p, or inf");
    run->add_option("--inf-cap", inf_cap, "finite value replacing infinite deaths");
    run->add_option("--reference", reference, "sample index of the reference diagram");
    run->add_option("--out", out, "output directory")->required();

    CLI::App* diagram = app.add_subcommand("diagram", "one diagram from a matrix or point cloud");
    diagram->add_option("--input", input, "input CSV")->required();
    diagram->add_option("--kind", kind, "distance-matrix or point-cloud")
        ->check(CLI::IsMember({"prices", "distance-matrix", "point-cloud"}))
        ->required();
    diagram->add_option("--direction", direction, "sub or super")
        ->check(CLI::IsMember({"sub", "super"}));
    diagram->add_option("--theta-max", theta_max, "dual weight bound for super-level runs");
    diagram->add_option("--max-dim", max_dim, "clique dimension cap");
    diagram->add_option("--inf-cap", inf_cap, "inf_cap_hint recorded in the JSON");
    diagram->add_option("--out", out, "output JSON path")->required();

    CLI::App* distance = app.add_subcommand("distance", "distance between two diagram files");
    distance->add_option("diagrams", diagram_a, "first diagram JSON")->required();
    distance->add_option("diagram_b", diagram_b, "second diagram JSON")->required();
    distance->add_option("--dim", dim, "homology dimension to compare");
    distance->add_option("--degree", degree_text, "Wasserstein degree p, or inf for bottleneck");
    distance->add_option("--inf-cap", inf_cap, "finite value replacing infinite deaths");

    CLI::App* synth = app.add_subcommand("synth", "seeded regime-shift price panel");
    synth->add_option("--out", out, "output CSV path")->required();
    synth->add_option("--seed", seed, "generator seed");
    synth->add_option("--assets", assets, "number of synthetic assets");
    synth->add_option("--days", days, "number of synthetic trading days");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    // invalid flag combinations are usage errors, not data errors
    if (run->parsed() && kind != "prices") {
        std::cerr << "error: run requires --kind prices\n" << run->help();
        return 2;
    }
    if (diagram->parsed() && kind == "prices") {
        std::cerr << "error: diagram requires --kind distance-matrix or point-cloud\n"
                  << diagram->help();
        return 2;
    }

    try {
        if (run->parsed()) {
            tdanet::RunManifest manifest;
            manifest.input_path = input;
            manifest.kind = kind;
            manifest.out_dir = out;
            manifest.theta_max = theta_max;
            manifest.config.horizon = window;
            manifest.config.stride = stride;
            manifest.config.direction = parse_direction(direction, theta_max);
            manifest.config.max_dim = max_dim;
            manifest.config.degree = parse_degree(degree_text);
            manifest.config.inf_cap = inf_cap;
            manifest.config.reference_index = reference;
            tdanet::cmd_run(manifest);
        } else if (diagram->parsed()) {
            tdanet::cmd_diagram(input, kind, parse_direction(direction, theta_max), max_dim,
                                inf_cap, out);
        } else if (distance->parsed()) {
            const double value =
                tdanet::cmd_distance(diagram_a, diagram_b, dim, parse_degree(degree_text), inf_cap);
            std::cout << tdanet::format_number(value) << "\n";
        } else if (synth->parsed()) {
            tdanet::cmd_synth(out, seed, assets, days);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
