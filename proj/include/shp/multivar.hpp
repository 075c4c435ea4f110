#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shp/holding_period.hpp"
#include "shp/return_model.hpp"
#include "shp/risk_analytic.hpp"
#include "shp/risk_mc.hpp"

namespace shp {

// Jointly Gaussian annualized log-returns sharing one common holding period.
// Weights are a linear exposure vector (currency per unit return); they are
// not required to sum to one.
struct MultiAssetModel {
    std::vector<double> mu_annual;             // per-asset drift per year
    std::vector<double> cov_annual;            // row-major n x n covariance per year
    std::vector<double> weights;
    double days_per_year = 250.0;

    std::size_t n_assets() const { return mu_annual.size(); }
    void validate() const;  // symmetry, PSD (via factorization), dimensions
};

// Lower-triangular Cholesky factor of a symmetric PSD matrix (row-major).
// Semi-definite pivots within a small relative tolerance are clamped to
// zero, so correlation +-1 corner cases factor cleanly; indefinite input
// throws std::invalid_argument.
std::vector<double> cholesky_psd(std::span<const double> matrix, std::size_t n);

struct JointSample {
    std::size_t n_assets = 0;
    std::vector<double> returns;  // paths x n_assets, row-major log-returns
    std::vector<double> horizon;  // common holding period per path

    double at(std::size_t path, std::size_t asset) const {
        return returns[path * n_assets + asset];
    }
};

// One common horizon drives all assets on each path:
// returns ~ N(mu * h/days, Q * h/days). Substream layout matches
// simulate_pnl, so the first coordinate of a one-asset model reproduces the
// univariate engine draw for draw.
JointSample simulate_joint(const MultiAssetModel& model, const HoldingPeriodDist& dist,
                           const SimConfig& cfg);

// The weighted sum is Gaussian per horizon, so the portfolio collapses to a
// univariate model with drift w.mu and variance w'Qw (exposure 1; weights
// already carry currency units).
ReturnModel reduce_to_portfolio(const MultiAssetModel& model);

RiskEstimate portfolio_var_es_analytic(const MultiAssetModel& model,
                                       const HoldingPeriodDist& dist, double c,
                                       const SolveOptions& opts = {});

RiskEstimate portfolio_var_es_mc(const MultiAssetModel& model,
                                 const HoldingPeriodDist& dist, double c,
                                 const SimConfig& cfg);

struct TauEstimate {
    double tau = 0.0;
    double stderr_ = 0.0;
};

// Kendall tau-a by O(n log n) inversion counting; continuous margins make
// ties null-probability. Standard error by delete-a-block jackknife over 20
// blocks. Requires >= 10000 pairs and non-constant marginals.
TauEstimate kendall_tau_hat(std::span<const double> x, std::span<const double> y);

struct TailDepPoint {
    double level = 0.0;       // threshold u
    double lambda = 0.0;      // P(X > q_u(X) | Y > q_u(Y)), empirical
    double stderr_ = 0.0;     // binomial
    std::int64_t joint_exceed = 0;
    std::int64_t cond_exceed = 0;
};

// Finite-level conditional exceedance proxy for the tail-dependence
// coefficient; thresholds are empirical per-coordinate quantiles, making the
// statistic margin-free. Requires n * (1-u) >= 500 at each level.
std::vector<TailDepPoint> tail_dep_hat(std::span<const double> x,
                                       std::span<const double> y,
                                       std::span<const double> levels);

struct DependenceReport {
    double rho = 0.0;
    double analytic_tau = 0.0;  // (2/pi) arcsin(rho)
    TauEstimate tau_hat;
    std::vector<TailDepPoint> tail_dep;
    std::int64_t pairs = 0;
};

// (2/pi) arcsin(rho), the Gaussian/t-copula Kendall tau.
double arcsine_tau(double rho);

}  // namespace shp
