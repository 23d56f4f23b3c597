#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tdanet/diagram_metrics.hpp"
#include "tdanet/flag_complex.hpp"
#include "tdanet/persistence.hpp"
#include "tdanet/weighted_graph.hpp"

namespace tdanet {

// Adjusted-close panel, prices[ticker][date]. Strictly positive prices,
// strictly increasing dates, no gaps.
struct PricePanel {
    std::vector<std::string> tickers;
    std::vector<std::string> dates;
    std::vector<std::vector<double>> prices;
};

struct ReturnsPanel {
    std::vector<std::string> tickers;
    std::vector<std::string> dates;  // one fewer than the price dates
    std::vector<std::vector<double>> returns;

    int date_count() const { return static_cast<int>(dates.size()); }
};

struct PipelineConfig {
    int horizon = 15;      // window [t-T, t], i.e. T+1 return observations
    int stride = 10;       // sampling step between diagram snapshots
    FiltrationDirection direction = FiltrationDirection::sub_level();
    int max_dim = 2;
    double degree = 2.0;   // Wasserstein degree p
    double inf_cap = 2.0;  // substituted for infinite deaths before matching
    int reference_index = 0;  // which sample provides the reference diagram
};

// Time-indexed Wasserstein distances to the reference diagram,
// distances[dim][sample].
struct DiagramDistanceSeries {
    std::vector<std::string> sample_dates;
    std::vector<std::vector<double>> distances;
};

struct PipelineResult {
    DiagramDistanceSeries series;
    std::vector<PersistenceDiagram> diagrams;
    std::vector<int> sample_return_indices;
};

inline void validate_panel(const PricePanel& panel) {
    if (panel.tickers.empty()) throw std::invalid_argument("price panel has no tickers");
    if (panel.dates.empty()) throw std::invalid_argument("price panel has no dates");
    if (panel.prices.size() != panel.tickers.size())
        throw std::invalid_argument("price panel has " + std::to_string(panel.prices.size()) +
                                    " price rows but " + std::to_string(panel.tickers.size()) +
                                    " tickers");
    for (std::size_t i = 0; i < panel.prices.size(); ++i) {
        if (panel.prices[i].size() != panel.dates.size())
            throw std::invalid_argument("ticker " + panel.tickers[i] + " has " +
                                        std::to_string(panel.prices[i].size()) +
                                        " prices but the panel has " +
                                        std::to_string(panel.dates.size()) + " dates");
        for (std::size_t t = 0; t < panel.prices[i].size(); ++t)
            if (!std::isfinite(panel.prices[i][t]) || panel.prices[i][t] <= 0.0)
                throw std::invalid_argument("nonpositive price for ticker " + panel.tickers[i] +
                                            " at date " + panel.dates[t]);
    }
    for (std::size_t t = 1; t < panel.dates.size(); ++t)
        if (!(panel.dates[t - 1] < panel.dates[t]))
            throw std::invalid_argument("panel dates are not strictly increasing at " +
                                        panel.dates[t]);
}

// Arithmetic returns x(t) = (S(t+1) - S(t)) / S(t), labeled with the date the
// return period starts.
inline ReturnsPanel compute_returns(const PricePanel& panel) {
    validate_panel(panel);
    if (panel.dates.size() < 2)
        throw std::invalid_argument("need at least 2 dates to compute returns");
    ReturnsPanel out;
    out.tickers = panel.tickers;
    out.dates.assign(panel.dates.begin(), panel.dates.end() - 1);
    out.returns.resize(panel.tickers.size());
    for (std::size_t i = 0; i < panel.tickers.size(); ++i) {
        out.returns[i].resize(out.dates.size());
        for (std::size_t t = 0; t + 1 < panel.dates.size(); ++t)
            out.returns[i][t] =
                (panel.prices[i][t + 1] - panel.prices[i][t]) / panel.prices[i][t];
    }
    return out;
}

// Pearson correlation matrix over the window tau = t-T..t (T+1 observations).
// A zero-variance series in the window gets correlation 0 against everything
// (the no-information value) plus a logged warning; the result is exactly
// symmetric with unit diagonal and clamped into [-1, 1].
inline std::vector<std::vector<double>> rolling_correlation(const ReturnsPanel& r, int t, int horizon,
                                                            std::ostream* warnings = &std::cerr) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (t < horizon || t >= r.date_count())
        throw std::invalid_argument("window [t-T, t] with t=" + std::to_string(t) + ", T=" +
                                    std::to_string(horizon) + " is outside the return range");
    const std::size_t assets = r.tickers.size();
    const int first = t - horizon;
    const int count = horizon + 1;

    std::vector<double> mean(assets, 0.0);
    std::vector<std::vector<double>> dev(assets, std::vector<double>(static_cast<std::size_t>(count)));
    std::vector<double> var(assets, 0.0);
    for (std::size_t i = 0; i < assets; ++i) {
        for (int k = 0; k < count; ++k) mean[i] += r.returns[i][static_cast<std::size_t>(first + k)];
        mean[i] /= count;
        for (int k = 0; k < count; ++k) {
            dev[i][static_cast<std::size_t>(k)] =
                r.returns[i][static_cast<std::size_t>(first + k)] - mean[i];
            var[i] += dev[i][static_cast<std::size_t>(k)] * dev[i][static_cast<std::size_t>(k)];
        }
        if (var[i] == 0.0 && warnings)
            *warnings << "warning: zero variance for " << r.tickers[i] << " in window ending "
                      << r.dates[static_cast<std::size_t>(t)] << "; correlation set to 0\n";
    }

    std::vector<std::vector<double>> c(assets, std::vector<double>(assets, 0.0));
    for (std::size_t i = 0; i < assets; ++i) c[i][i] = 1.0;
    for (std::size_t i = 0; i < assets; ++i) {
        for (std::size_t j = i + 1; j < assets; ++j) {
            double value = 0.0;
            if (var[i] > 0.0 && var[j] > 0.0) {
                double cov = 0.0;
                for (int k = 0; k < count; ++k)
                    cov += dev[i][static_cast<std::size_t>(k)] * dev[j][static_cast<std::size_t>(k)];
                value = cov / std::sqrt(var[i] * var[j]);
                value = std::min(1.0, std::max(-1.0, value));
            }
            c[i][j] = value;
            c[j][i] = value;
        }
    }
    return c;
}

// d = sqrt(2 (1 - c)), mapping correlation 1 -> 0, 0 -> sqrt(2), -1 -> 2.
inline double correlation_to_distance(double c) {
    if (std::isnan(c) || std::abs(c) > 1.0 + 1e-9)
        throw std::invalid_argument("correlation " + std::to_string(c) + " outside [-1, 1]");
    c = std::min(1.0, std::max(-1.0, c));
    const double d = std::sqrt(2.0 * (1.0 - c));
    return std::min(2.0, std::max(0.0, d));
}

struct CorrelationInterval {
    double lo = -1.0;
    double hi = 1.0;
};

// Correlation range of the edges present at threshold theta, for reporting:
// sub-level keeps c in [1 - theta^2/2, 1], super-level (dual weight) keeps
// c in [-1, 1 - (theta_max - theta)^2/2].
inline CorrelationInterval threshold_correlation_bound(double theta,
                                                       const FiltrationDirection& dir) {
    if (!(theta >= 0.0) || theta > 2.0)
        throw std::invalid_argument("threshold " + std::to_string(theta) + " outside [0, 2]");
    auto clamp01 = [](double c) { return std::min(1.0, std::max(-1.0, c)); };
    CorrelationInterval out;
    if (dir.is_super_level()) {
        const double residual = dir.theta_max() - theta;
        out.lo = -1.0;
        out.hi = clamp01(1.0 - 0.5 * residual * residual);
    } else {
        out.lo = clamp01(1.0 - 0.5 * theta * theta);
        out.hi = 1.0;
    }
    return out;
}

namespace detail {

inline PersistenceDiagram diagram_for_window(const ReturnsPanel& returns, int t,
                                             const PipelineConfig& cfg, std::ostream* warnings) {
    const auto corr = rolling_correlation(returns, t, cfg.horizon, warnings);
    const std::size_t assets = returns.tickers.size();
    std::vector<std::vector<double>> dist(assets, std::vector<double>(assets, 0.0));
    for (std::size_t i = 0; i < assets; ++i) {
        for (std::size_t j = i + 1; j < assets; ++j) {
            const double d = correlation_to_distance(corr[i][j]);
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    const WeightedGraph graph =
        apply_direction(from_distance_matrix(dist, returns.tickers), cfg.direction);
    return compute_persistence(build_flag_complex(graph, cfg.max_dim));
}

}  // namespace detail

// The full chain: prices -> returns -> rolling correlations -> distance
// matrices -> directed threshold filtration -> flag complexes -> diagrams ->
// per-dimension Wasserstein distances to the reference sample. Sampling
// starts at the first fully covered window (return index T) and advances by
// the stride; a final partial stride is dropped.
inline PipelineResult run_pipeline(const PricePanel& panel, const PipelineConfig& cfg,
                                   std::ostream* warnings = &std::cerr) {
    if (cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (cfg.stride < 1) throw std::invalid_argument("stride must be >= 1");
    if (cfg.max_dim < 1) throw std::invalid_argument("max_dim must be >= 1");
    if (std::isnan(cfg.degree) || cfg.degree <= 0.0)
        throw std::invalid_argument("degree must be > 0");

    const ReturnsPanel returns = compute_returns(panel);
    if (cfg.horizon + 1 > returns.date_count())
        throw std::invalid_argument("horizon " + std::to_string(cfg.horizon) +
                                    " needs at least " + std::to_string(cfg.horizon + 1) +
                                    " return dates, panel has " +
                                    std::to_string(returns.date_count()));

    std::vector<int> sample_indices;
    for (int t = cfg.horizon; t < returns.date_count(); t += cfg.stride)
        sample_indices.push_back(t);
    if (cfg.reference_index < 0 ||
        cfg.reference_index >= static_cast<int>(sample_indices.size()))
        throw std::invalid_argument("reference index " + std::to_string(cfg.reference_index) +
                                    " outside the " + std::to_string(sample_indices.size()) +
                                    " samples");

    PipelineResult result;
    result.sample_return_indices = sample_indices;
    result.diagrams.reserve(sample_indices.size());
    for (int t : sample_indices) {
        try {
            result.diagrams.push_back(detail::diagram_for_window(returns, t, cfg, warnings));
        } catch (const std::exception& e) {
            throw std::runtime_error("sample at " + returns.dates[static_cast<std::size_t>(t)] +
                                     ": " + e.what());
        }
        result.series.sample_dates.push_back(returns.dates[static_cast<std::size_t>(t)]);
    }

    const PersistenceDiagram& reference =
        result.diagrams[static_cast<std::size_t>(cfg.reference_index)];
    const MetricConfig metric{cfg.degree, cfg.inf_cap};
    result.series.distances.assign(static_cast<std::size_t>(cfg.max_dim),
                                   std::vector<double>(sample_indices.size(), 0.0));
    for (std::size_t s = 0; s < result.diagrams.size(); ++s) {
        for (int dim = 0; dim < cfg.max_dim; ++dim) {
            try {
                result.series.distances[static_cast<std::size_t>(dim)][s] =
                    wasserstein(result.diagrams[s], reference, dim, metric);
            } catch (const std::exception& e) {
                throw std::runtime_error("sample at " + result.series.sample_dates[s] + ": " +
                                         e.what());
            }
        }
    }
    return result;
}

}  // namespace tdanet
