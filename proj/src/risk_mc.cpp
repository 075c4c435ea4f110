#include "shp/risk_mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shp/rng.hpp"

namespace shp {

namespace {

constexpr int kStderrBatches = 50;
constexpr std::uint64_t kHorizonSubstream = 0;
constexpr std::uint64_t kReturnSubstream = 1;

}  // namespace

void SimConfig::validate() const {
    if (paths < 10'000) throw std::invalid_argument("SimConfig: paths must be >= 10000");
    if (batch < 1) throw std::invalid_argument("SimConfig: batch must be positive");
}

PnlSample simulate_pnl(const ReturnModel& model, const HoldingPeriodDist& dist,
                       const SimConfig& cfg) {
    model.validate();
    cfg.validate();
    PnlSample out;
    const auto n = static_cast<std::size_t>(cfg.paths);
    out.pnl.resize(n);
    out.horizon.resize(n);
    for (std::int64_t start = 0; start < cfg.paths; start += cfg.batch) {
        const std::int64_t stop = std::min(cfg.paths, start + cfg.batch);
        for (std::int64_t i = start; i < stop; ++i) {
            RngStream hs(cfg.seed, static_cast<std::uint64_t>(i), kHorizonSubstream);
            RngStream rs(cfg.seed, static_cast<std::uint64_t>(i), kReturnSubstream);
            const double h = sample(dist, hs);
            const double r = model.horizon_mean(h) + model.horizon_stdev(h) * rs.normal();
            out.horizon[static_cast<std::size_t>(i)] = h;
            out.pnl[static_cast<std::size_t>(i)] = model.exposure * r;
        }
    }
    return out;
}

double empirical_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("empirical_quantile: p must be in [0,1]");
    const std::size_t n = sorted.size();
    const double pos = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

void var_es_from_pnl(std::span<const double> pnl, double c, double& var, double& es) {
    std::vector<double> sorted(pnl.begin(), pnl.end());
    std::sort(sorted.begin(), sorted.end());
    const double q = empirical_quantile(sorted, 1.0 - c);
    var = -q;
    // Tail mass n*(1-c); losses strictly beyond VaR in full, the remainder
    // filled pro-rata at the quantile itself.
    const double tail = static_cast<double>(sorted.size()) * (1.0 - c);
    double sum = 0.0;
    std::size_t count = 0;
    for (double x : sorted) {
        if (x < q) {
            sum += x;
            ++count;
        } else {
            break;
        }
    }
    sum += (tail - static_cast<double>(count)) * q;
    es = -sum / tail;
}

RiskEstimate mc_var_es(const ReturnModel& model, const HoldingPeriodDist& dist,
                       double c, const SimConfig& cfg) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("mc_var_es: confidence must be in (0,1)");
    if (static_cast<double>(cfg.paths) * (1.0 - c) < 200.0) {
        throw std::invalid_argument("mc_var_es: needs paths*(1-c) >= 200 tail points");
    }
    const PnlSample sample = simulate_pnl(model, dist, cfg);

    RiskEstimate est;
    est.confidence = c;
    est.method = RiskMethod::monte_carlo;
    var_es_from_pnl(sample.pnl, c, est.var, est.es);

    // Standard errors from batch means over 50 contiguous slices.
    const std::size_t n = sample.pnl.size();
    const std::size_t per = n / kStderrBatches;
    double var_sum = 0.0, var_sq = 0.0, es_sum = 0.0, es_sq = 0.0;
    for (int b = 0; b < kStderrBatches; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * per;
        const std::size_t hi = (b == kStderrBatches - 1) ? n : lo + per;
        double v, e;
        var_es_from_pnl(std::span<const double>(sample.pnl).subspan(lo, hi - lo), c, v, e);
        var_sum += v;
        var_sq += v * v;
        es_sum += e;
        es_sq += e * e;
    }
    const double nb = kStderrBatches;
    const double var_var = (var_sq - var_sum * var_sum / nb) / (nb - 1.0);
    const double es_var = (es_sq - es_sum * es_sum / nb) / (nb - 1.0);
    est.var_stderr = std::sqrt(std::fmax(0.0, var_var) / nb);
    est.es_stderr = std::sqrt(std::fmax(0.0, es_var) / nb);
    return est;
}

}  // namespace shp
