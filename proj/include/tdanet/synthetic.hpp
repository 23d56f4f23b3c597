#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "tdanet/market_pipeline.hpp"

namespace tdanet {

namespace detail {

// Civil-calendar <-> day-count conversion (proleptic Gregorian).
inline std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y = static_cast<int>(yy + (m <= 2));
}

inline std::string iso_date_after(const std::string& start_iso, int day_offset) {
    int y = 0;
    unsigned m = 0, d = 0;
    if (std::sscanf(start_iso.c_str(), "%d-%u-%u", &y, &m, &d) != 3)
        throw std::invalid_argument("bad ISO date " + start_iso);
    civil_from_days(days_from_civil(y, m, d) + day_offset, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return buf;
}

// Standard-normal sampler over mt19937_64 via Box-Muller, so the stream is
// identical across standard library implementations.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

private:
    double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace detail

struct SynthConfig {
    int assets = 30;
    int days = 504;
    std::uint64_t seed = 42;
    double noise_sigma = 0.01;
    double factor_sigma = 0.015;  // common factor in the second half
    double start_price = 100.0;
    std::string start_date = "2004-01-02";
};

// Seeded regime-shift panel: the first half of the return range is
// independent noise, the second half adds a strong common factor, so pairwise
// correlations jump and the distance matrices contract. Prices are integrated
// from the returns at start_price.
inline PricePanel make_regime_shift_panel(const SynthConfig& cfg) {
    if (cfg.assets < 2) throw std::invalid_argument("need at least 2 assets");
    if (cfg.days < 2) throw std::invalid_argument("need at least 2 days");

    const int return_count = cfg.days - 1;
    const int shift_at = return_count / 2;
    detail::GaussianSampler gauss(cfg.seed);

    std::vector<std::vector<double>> returns(
        static_cast<std::size_t>(cfg.assets),
        std::vector<double>(static_cast<std::size_t>(return_count), 0.0));
    for (int t = 0; t < return_count; ++t) {
        const double factor = t >= shift_at ? cfg.factor_sigma * gauss.next() : 0.0;
        for (int i = 0; i < cfg.assets; ++i) {
            double x = cfg.noise_sigma * gauss.next() + factor;
            x = std::min(0.4, std::max(-0.4, x));  // keeps prices positive
            returns[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = x;
        }
    }

    PricePanel panel;
    int width = 2;
    for (int v = cfg.assets - 1; v >= 100; v /= 10) ++width;
    for (int i = 0; i < cfg.assets; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "S%0*d", std::min(width, 12), i);
        panel.tickers.push_back(buf);
    }
    for (int t = 0; t < cfg.days; ++t)
        panel.dates.push_back(detail::iso_date_after(cfg.start_date, t));
    panel.prices.assign(static_cast<std::size_t>(cfg.assets),
                        std::vector<double>(static_cast<std::size_t>(cfg.days), cfg.start_price));
    for (int i = 0; i < cfg.assets; ++i)
        for (int t = 0; t < return_count; ++t)
            panel.prices[static_cast<std::size_t>(i)][static_cast<std::size_t>(t) + 1] =
                panel.prices[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] *
                (1.0 + returns[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]);
    return panel;
}

}  // namespace tdanet
