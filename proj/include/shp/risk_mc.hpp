#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shp/holding_period.hpp"
#include "shp/return_model.hpp"

namespace shp {

struct SimConfig {
    std::uint64_t seed = 42;
    std::int64_t paths = 2'000'000;
    std::int64_t batch = 40'000;  // reduction granularity; results do not depend on it

    void validate() const;
};

struct PnlSample {
    std::vector<double> pnl;      // currency units
    std::vector<double> horizon;  // business days, aligned with pnl
};

// One holding-period draw and one Gaussian return per path, each from its own
// counter-based substream keyed by (seed, path). Horizon draws are therefore
// identical across holding-period families under one seed (common random
// numbers), and output is a pure function of (seed, paths, model, dist).
PnlSample simulate_pnl(const ReturnModel& model, const HoldingPeriodDist& dist,
                       const SimConfig& cfg);

// Linear-interpolated order statistic ("type 7"): p in [0,1], data sorted
// ascending.
double empirical_quantile(std::span<const double> sorted, double p);

// Empirical VaR/ES from a P&L sample: VaR is the negated type-7 (1-c)
// quantile; ES averages losses strictly beyond VaR with ties at the quantile
// included pro-rata.
void var_es_from_pnl(std::span<const double> pnl, double c, double& var, double& es);

// Monte Carlo VaR/ES with standard errors from 50 batch means.
// Requires paths * (1 - c) >= 200.
RiskEstimate mc_var_es(const ReturnModel& model, const HoldingPeriodDist& dist,
                       double c, const SimConfig& cfg);

}  // namespace shp
