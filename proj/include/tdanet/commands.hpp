#pragma once

#include <cstdio>
#include <filesystem>
#include <string>

#include "tdanet/io.hpp"
#include "tdanet/market_pipeline.hpp"
#include "tdanet/synthetic.hpp"

namespace tdanet {

// Everything one `run` invocation needs, resolved from the command line.
struct RunManifest {
    std::string input_path;
    std::string kind = "prices";  // prices | distance-matrix | point-cloud
    PipelineConfig config;
    std::string out_dir;
    double theta_max = 2.0;  // super-level dual weight bound
};

namespace detail {

inline std::string sample_diagram_filename(std::size_t index, const std::string& date) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "diagram_%04zu_", index);
    return buf + date + ".json";
}

}  // namespace detail

// Full pipeline over a price CSV; writes series.csv plus one diagram JSON per
// sample into the output directory.
inline void cmd_run(const RunManifest& manifest, std::ostream* warnings = &std::cerr) {
    if (manifest.kind != "prices")
        throw std::invalid_argument("run requires --kind prices, got " + manifest.kind);
    if (manifest.out_dir.empty()) throw std::invalid_argument("run requires --out");
    const PricePanel panel = ingest_prices_file(manifest.input_path, warnings);
    const PipelineResult result = run_pipeline(panel, manifest.config, warnings);

    std::filesystem::create_directories(manifest.out_dir);
    const std::filesystem::path out_dir(manifest.out_dir);
    emit_series_file(result.series, (out_dir / "series.csv").string());
    for (std::size_t k = 0; k < result.diagrams.size(); ++k) {
        const std::string name =
            detail::sample_diagram_filename(k, result.series.sample_dates[k]);
        emit_diagram_file(result.diagrams[k], (out_dir / name).string(),
                          manifest.config.inf_cap);
    }
}

// One diagram from a distance matrix or point cloud; writes a diagram JSON.
inline void cmd_diagram(const std::string& input_path, const std::string& kind,
                        const FiltrationDirection& direction, int max_dim, double inf_cap_hint,
                        const std::string& out_path) {
    WeightedGraph graph;
    if (kind == "distance-matrix") {
        DistanceMatrixInput dm = ingest_distance_matrix_file(input_path);
        graph = from_distance_matrix(dm.matrix, std::move(dm.labels));
    } else if (kind == "point-cloud") {
        graph = from_point_cloud(ingest_point_cloud_file(input_path));
    } else {
        throw std::invalid_argument("diagram requires --kind distance-matrix or point-cloud, got " +
                                    kind);
    }
    const PersistenceDiagram d =
        compute_persistence(build_flag_complex(apply_direction(graph, direction), max_dim));
    emit_diagram_file(d, out_path, inf_cap_hint);
}

// Wasserstein (or bottleneck, for an infinite degree) distance between two
// diagram files in one homology dimension.
inline double cmd_distance(const std::string& path_a, const std::string& path_b, int dim,
                           double degree, double inf_cap) {
    const PersistenceDiagram a = ingest_diagram_file(path_a);
    const PersistenceDiagram b = ingest_diagram_file(path_b);
    const MetricConfig cfg{degree, inf_cap};
    if (std::isinf(degree)) return bottleneck(a, b, dim, cfg);
    return wasserstein(a, b, dim, cfg);
}

// Seeded regime-shift price panel written as a price CSV.
inline void cmd_synth(const std::string& out_path, std::uint64_t seed, int assets, int days) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.assets = assets;
    cfg.days = days;
    const PricePanel panel = make_regime_shift_panel(cfg);
    std::ofstream out = detail::open_output(out_path);
    out << "date";
    for (const std::string& ticker : panel.tickers) out << "," << ticker;
    out << "\n";
    for (std::size_t t = 0; t < panel.dates.size(); ++t) {
        out << panel.dates[t];
        for (std::size_t i = 0; i < panel.tickers.size(); ++i)
            out << "," << format_number(panel.prices[i][t]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("failed writing " + out_path);
}

}  // namespace tdanet
