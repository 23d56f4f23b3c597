// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fail.
//
// Usage: acceptance_suite [--cli /path/to/tdanet]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tdanet/commands.hpp"
#include "tdanet/diagram_metrics.hpp"
#include "tdanet/io.hpp"
#include "tdanet/market_pipeline.hpp"
#include "tdanet/persistence.hpp"
#include "tdanet/synthetic.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace tdanet;

namespace {

struct Failure {
    std::string message;
};

void expect(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    expect(static_cast<bool>(in), "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<fs::path> sorted_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

class Runner {
public:
    explicit Runner(std::string cli_path) : cli_path_(std::move(cli_path)) {}

    void criterion(int number, const std::string& name, double time_limit_seconds,
                   const std::function<void()>& body) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            body();
        } catch (const Failure& f) {
            failure = f.message;
        } catch (const std::exception& e) {
            failure = std::string("unexpected exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty() && time_limit_seconds > 0.0 && elapsed > time_limit_seconds) {
            std::ostringstream msg;
            msg << "took " << elapsed << " s, limit " << time_limit_seconds << " s";
            failure = msg.str();
        }
        char timing[32];
        std::snprintf(timing, sizeof(timing), "%.2f s", elapsed);
        if (failure.empty()) {
            std::cout << "[PASS] criterion " << number << ": " << name << " (" << timing << ")\n";
        } else {
            std::cout << "[FAIL] criterion " << number << ": " << name << " (" << timing
                      << ") - " << failure << "\n";
            ++failures_;
        }
    }

    int run_cli(const std::string& args) const {
        expect(!cli_path_.empty(), "CLI path not provided (pass --cli <path>)");
        const std::string command = "\"" + cli_path_ + "\" " + args;
        const int status = std::system(command.c_str());
        if (status < 0) return -1;
        return WEXITSTATUS(status);
    }

    bool has_cli() const { return !cli_path_.empty(); }
    int failures() const { return failures_; }

private:
    std::string cli_path_;
    int failures_ = 0;
};

WeightedGraph k4_with_chords() {
    return make_graph(4, {Edge{0, 1, 1.0}, Edge{1, 2, 1.0}, Edge{2, 3, 1.0}, Edge{0, 3, 1.0},
                          Edge{0, 2, 3.0}, Edge{1, 3, 3.0}});
}

void check_formula_endpoints() {
    expect(correlation_to_distance(1.0) == 0.0, "d(1) must be exactly 0");
    expect(correlation_to_distance(-1.0) == 2.0, "d(-1) must be exactly 2");
    expect(std::abs(correlation_to_distance(0.0) - 1.414214) <= 1e-6,
           "d(0) must be 1.414214 within 1e-6");
    const CorrelationInterval sub =
        threshold_correlation_bound(1.414214, FiltrationDirection::sub_level());
    expect(std::abs(sub.lo - 0.0) <= 1e-6 && sub.hi == 1.0,
           "sub-level bound at 1.414214 must be [0, 1] within 1e-6");
    const CorrelationInterval super =
        threshold_correlation_bound(0.5857864, FiltrationDirection::super_level(2.0));
    expect(super.lo == -1.0 && std::abs(super.hi - 0.0) <= 1e-6,
           "super-level bound at 0.5857864 must be [-1, 0] within 1e-6");
}

void check_homology_oracle() {
    std::mt19937 rng(20240101);
    std::uniform_real_distribution<double> theta_dist(0.0, 1.2);
    for (int trial = 0; trial < 50; ++trial) {
        const WeightedGraph g = testing::random_graph(rng, 10);
        const FilteredComplex k = build_flag_complex(g, 2);
        const PersistenceDiagram d = compute_persistence(k);
        for (int probe = 0; probe < 5; ++probe) {
            const double theta = theta_dist(rng);
            const BettiProfile reduced = betti_at(d, theta);
            const BettiProfile oracle = betti_bruteforce(k, theta);
            expect(reduced.betti[0] == oracle.betti[0] && reduced.betti[1] == oracle.betti[1],
                   "Betti mismatch at trial " + std::to_string(trial));
        }
    }
}

void check_wasserstein_oracle() {
    std::mt19937 rng(20240202);
    for (int trial = 0; trial < 100; ++trial) {
        const PersistenceDiagram a = testing::random_diagram(rng, 5);
        const int remaining = 8 - static_cast<int>(a.points.size());
        const PersistenceDiagram b = testing::random_diagram(rng, std::min(5, remaining));
        for (double p : {1.0, 2.0}) {
            const MetricConfig cfg{p, 2.0};
            const double fast = wasserstein(a, b, 0, cfg);
            const double exact = wasserstein_bruteforce(a, b, 0, cfg);
            expect(std::abs(fast - exact) <= 1e-9,
                   "assignment result differs from the exhaustive minimum at trial " +
                       std::to_string(trial));
        }
    }
}

void check_stability() {
    std::mt19937 rng(20240303);
    std::uniform_real_distribution<double> shift(-0.01, 0.01);
    const double epsilon = 0.01;
    for (int trial = 0; trial < 50; ++trial) {
        const WeightedGraph g = testing::random_complete_graph(rng, 15);
        WeightedGraph perturbed = g;
        for (Edge& e : perturbed.edges) e.weight = std::max(0.0, e.weight + shift(rng));
        const PersistenceDiagram d1 = compute_persistence(build_flag_complex(g, 2));
        const PersistenceDiagram d2 = compute_persistence(build_flag_complex(perturbed, 2));
        for (int dim : {0, 1}) {
            const double b = bottleneck(d1, d2, dim, MetricConfig{2.0, 2.0});
            expect(b <= epsilon + 1e-12, "bottleneck " + std::to_string(b) +
                                             " exceeds epsilon in dim " + std::to_string(dim));
        }
    }
}

void check_canonical_complexes() {
    // K4 with weight-1 cycle and weight-3 chords
    const PersistenceDiagram k4 = compute_persistence(build_flag_complex(k4_with_chords(), 2));
    const auto dim0 = k4.in_dim(0);
    expect(dim0.size() == 4, "K4 fixture must have 4 dim-0 points");
    for (int i = 0; i < 3; ++i)
        expect(dim0[static_cast<std::size_t>(i)] == PersistencePoint{0, 0.0, 1.0},
               "K4 fixture dim-0 finite points must be (0,1)x3");
    expect(dim0[3] == PersistencePoint{0, 0.0, kInfiniteDeath},
           "K4 fixture must keep one essential component");
    const auto dim1 = k4.in_dim(1);
    expect(dim1.size() == 1 && dim1[0] == PersistencePoint{1, 1.0, 3.0},
           "K4 fixture dim-1 must be exactly {(1,3)}");

    // single vertex
    const PersistenceDiagram vertex =
        compute_persistence(build_flag_complex(make_graph(1, std::vector<Edge>{}), 2));
    expect(vertex.points.size() == 1 && vertex.points[0] == PersistencePoint{0, 0.0, kInfiniteDeath},
           "single vertex must be {(0, inf)}");

    // path on n nodes: (0,1) x (n-1) plus one essential, no loops
    for (int n : {2, 6}) {
        std::vector<Edge> edges;
        for (int v = 0; v + 1 < n; ++v) edges.push_back(Edge{v, v + 1, 1.0});
        const PersistenceDiagram path =
            compute_persistence(build_flag_complex(make_graph(n, std::move(edges)), 2));
        int finite = 0, essential = 0;
        for (const PersistencePoint& p : path.in_dim(0)) {
            if (p.essential()) ++essential;
            else {
                expect(p == PersistencePoint{0, 0.0, 1.0}, "path dim-0 points must be (0,1)");
                ++finite;
            }
        }
        expect(finite == n - 1 && essential == 1, "path pairing counts are off");
        expect(path.in_dim(1).empty(), "a tree has no loops");
    }

    // plain 4-cycle: the loop never dies under a dim-2 cap
    const WeightedGraph cycle =
        make_graph(4, {Edge{0, 1, 1.0}, Edge{1, 2, 1.0}, Edge{2, 3, 1.0}, Edge{0, 3, 1.0}});
    const PersistenceDiagram loop = compute_persistence(build_flag_complex(cycle, 2));
    const auto cycle_dim1 = loop.in_dim(1);
    expect(cycle_dim1.size() == 1 && cycle_dim1[0] == PersistencePoint{1, 1.0, kInfiniteDeath},
           "4-cycle dim-1 must be {(1, inf)}");
}

void check_regime_shift() {
    const PricePanel panel = make_regime_shift_panel(SynthConfig{});  // 30 assets, seed 42
    const PipelineResult result = run_pipeline(panel, PipelineConfig{}, nullptr);
    const int shift_at = (SynthConfig{}.days - 1) / 2;
    double first_sum = 0.0, second_sum = 0.0;
    int first_count = 0, second_count = 0;
    for (std::size_t s = 0; s < result.sample_return_indices.size(); ++s) {
        if (result.sample_return_indices[s] < shift_at) {
            first_sum += result.series.distances[0][s];
            ++first_count;
        } else {
            second_sum += result.series.distances[0][s];
            ++second_count;
        }
    }
    expect(first_count > 0 && second_count > 0, "both regimes need samples");
    const double first_mean = first_sum / first_count;
    const double second_mean = second_sum / second_count;
    expect(second_mean > first_mean,
           "dim-0 mean over the factor regime (" + std::to_string(second_mean) +
               ") must exceed the noise regime (" + std::to_string(first_mean) + ")");
}

void check_performance(const Runner& runner, const fs::path& work) {
    const fs::path prices = work / "perf_prices.csv";
    const fs::path out = work / "perf_out";
    expect(runner.run_cli("synth --days 1200 --seed 42 --out \"" + prices.string() + "\"") == 0,
           "synth subcommand failed");
    const auto start = std::chrono::steady_clock::now();
    expect(runner.run_cli("run --input \"" + prices.string() + "\" --kind prices --out \"" +
                          out.string() + "\"") == 0,
           "run subcommand failed");
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    expect(elapsed < 60.0,
           "end-to-end run took " + std::to_string(elapsed) + " s, limit 60 s");
    expect(fs::exists(out / "series.csv"), "run must write series.csv");
    const DiagramDistanceSeries series = ingest_series_file((out / "series.csv").string());
    expect(series.sample_dates.size() >= 110, "expected roughly 118 samples");
}

void check_determinism(const Runner& runner, const fs::path& work) {
    const fs::path prices_a = work / "det_prices_a.csv";
    const fs::path prices_b = work / "det_prices_b.csv";
    expect(runner.run_cli("synth --out \"" + prices_a.string() + "\"") == 0, "synth failed");
    expect(runner.run_cli("synth --out \"" + prices_b.string() + "\"") == 0, "synth failed");
    expect(read_file(prices_a) == read_file(prices_b), "synth output must be byte-identical");

    const fs::path out_a = work / "det_out_a";
    const fs::path out_b = work / "det_out_b";
    for (const fs::path& out : {out_a, out_b})
        expect(runner.run_cli("run --input \"" + prices_a.string() + "\" --kind prices --out \"" +
                              out.string() + "\"") == 0,
               "run failed");
    const std::vector<fs::path> files_a = sorted_files(out_a);
    const std::vector<fs::path> files_b = sorted_files(out_b);
    expect(files_a.size() == files_b.size(), "output file sets differ");
    for (std::size_t k = 0; k < files_a.size(); ++k) {
        expect(files_a[k].filename() == files_b[k].filename(), "output file names differ");
        expect(read_file(files_a[k]) == read_file(files_b[k]),
               "output file " + files_a[k].filename().string() + " differs between runs");
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

    Runner runner(cli_path);
    const fs::path work = fs::temp_directory_path() / "tdanet_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    runner.criterion(1, "correlation-distance formula endpoints", 0.0, check_formula_endpoints);
    runner.criterion(2, "homology oracle equivalence (50 graphs x 5 thresholds)", 10.0,
                     check_homology_oracle);
    runner.criterion(3, "Wasserstein oracle equivalence (100 diagram pairs)", 5.0,
                     check_wasserstein_oracle);
    runner.criterion(4, "bottleneck stability under 0.01 perturbations", 30.0, check_stability);
    runner.criterion(5, "canonical complex diagrams", 0.0, check_canonical_complexes);
    runner.criterion(6, "regime-shift separation on the seeded panel", 0.0, check_regime_shift);
    runner.criterion(7, "performance envelope: 30 assets x 1200 days under 60 s", 0.0,
                     [&] { check_performance(runner, work); });
    runner.criterion(8, "byte-identical outputs across repeated runs", 0.0,
                     [&] { check_determinism(runner, work); });

    fs::remove_all(work);
    if (runner.failures() > 0) {
        std::cout << runner.failures() << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
