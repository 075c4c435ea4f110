#include "shp/multivar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "shp/rng.hpp"

namespace shp {

namespace {

constexpr std::uint64_t kHorizonSubstream = 0;
constexpr std::uint64_t kReturnSubstream = 1;

// Counts inversions in v by merge sort; v is consumed as scratch.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch,
                               std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, scratch, lo, mid) +
                        count_inversions(v, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
            scratch[k++] = v[i++];
        } else {
            inv += mid - i;
            scratch[k++] = v[j++];
        }
    }
    while (i < mid) scratch[k++] = v[i++];
    while (j < hi) scratch[k++] = v[j++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}


}  // namespace

void MultiAssetModel::validate() const {
    const std::size_t n = n_assets();
    if (n == 0) throw std::invalid_argument("MultiAssetModel: no assets");
    if (cov_annual.size() != n * n) throw std::invalid_argument("MultiAssetModel: covariance dimension mismatch");
    if (weights.size() != n) throw std::invalid_argument("MultiAssetModel: weights dimension mismatch");
    if (!(days_per_year > 0.0)) throw std::invalid_argument("MultiAssetModel: days_per_year must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = cov_annual[i * n + j], b = cov_annual[j * n + i];
            if (std::fabs(a - b) > 1e-12 * std::fmax(1.0, std::fabs(a))) {
                throw std::invalid_argument("MultiAssetModel: covariance not symmetric");
            }
        }
    }
    (void)cholesky_psd(cov_annual, n);  // throws if not PSD
}

std::vector<double> cholesky_psd(std::span<const double> matrix, std::size_t n) {
    if (matrix.size() != n * n) throw std::invalid_argument("cholesky_psd: dimension mismatch");
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += matrix[i * n + i];
    const double tol = 1e-10 * std::fmax(trace, 1e-300);
    std::vector<double> L(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = matrix[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= L[j * n + k] * L[j * n + k];
        if (d < -tol) throw std::invalid_argument("cholesky_psd: matrix is not positive semi-definite");
        d = std::fmax(d, 0.0);
        const double ljj = std::sqrt(d);
        L[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = matrix[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
            L[i * n + j] = (ljj > 0.0) ? s / ljj : 0.0;
        }
    }
    return L;
}

JointSample simulate_joint(const MultiAssetModel& model, const HoldingPeriodDist& dist,
                           const SimConfig& cfg) {
    model.validate();
    cfg.validate();
    const std::size_t m = model.n_assets();
    const auto npaths = static_cast<std::size_t>(cfg.paths);
    const std::vector<double> L = cholesky_psd(model.cov_annual, m);

    JointSample out;
    out.n_assets = m;
    out.returns.resize(npaths * m);
    out.horizon.resize(npaths);
    std::vector<double> z(m);
    for (std::size_t i = 0; i < npaths; ++i) {
        RngStream hs(cfg.seed, i, kHorizonSubstream);
        RngStream rs(cfg.seed, i, kReturnSubstream);
        const double h = sample(dist, hs);
        const double tscale = h / model.days_per_year;
        const double vol = std::sqrt(tscale);
        for (std::size_t j = 0; j < m; ++j) z[j] = rs.normal();
        out.horizon[i] = h;
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k <= j; ++k) s += L[j * m + k] * z[k];
            out.returns[i * m + j] = model.mu_annual[j] * tscale + vol * s;
        }
    }
    return out;
}

ReturnModel reduce_to_portfolio(const MultiAssetModel& model) {
    model.validate();
    const std::size_t n = model.n_assets();
    double mu = 0.0, var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mu += model.weights[i] * model.mu_annual[i];
        for (std::size_t j = 0; j < n; ++j) {
            var += model.weights[i] * model.weights[j] * model.cov_annual[i * n + j];
        }
    }
    if (!(var > 0.0)) throw std::invalid_argument("reduce_to_portfolio: portfolio variance must be positive");
    ReturnModel rm;
    rm.mu_annual = mu;
    rm.sigma_annual = std::sqrt(var);
    rm.days_per_year = model.days_per_year;
    rm.exposure = 1.0;
    return rm;
}

RiskEstimate portfolio_var_es_analytic(const MultiAssetModel& model,
                                       const HoldingPeriodDist& dist, double c,
                                       const SolveOptions& opts) {
    return risk_report(reduce_to_portfolio(model), dist, c, opts);
}

RiskEstimate portfolio_var_es_mc(const MultiAssetModel& model,
                                 const HoldingPeriodDist& dist, double c,
                                 const SimConfig& cfg) {
    return mc_var_es(reduce_to_portfolio(model), dist, c, cfg);
}

TauEstimate kendall_tau_hat(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (y.size() != n) throw std::invalid_argument("kendall_tau_hat: size mismatch");
    if (n < 10'000) throw std::invalid_argument("kendall_tau_hat: needs at least 10000 pairs");
    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
    if (*xmin == *xmax || *ymin == *ymax) {
        throw std::invalid_argument("kendall_tau_hat: degenerate constant marginal");
    }

    // Sort by x once; every leave-block-out tau then only needs to filter
    // the x-ordered y sequence (the relative x-order of the survivors is
    // unchanged) and count inversions, which keeps the jackknife exact while
    // avoiding twenty comparison sorts.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> y_by_x(n);
    for (std::size_t i = 0; i < n; ++i) y_by_x[i] = y[idx[i]];

    auto tau_from_inversions = [](std::vector<double>& seq, std::vector<double>& scratch) {
        const std::size_t m = seq.size();
        const std::uint64_t inv = count_inversions(seq, scratch, 0, m);
        const double total = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
        return 1.0 - 2.0 * static_cast<double>(inv) / total;
    };

    std::vector<double> seq(y_by_x), scratch(n);
    TauEstimate est;
    est.tau = tau_from_inversions(seq, scratch);

    constexpr int kBlocks = 20;
    const std::size_t per = n / kBlocks;
    std::vector<double> leave(kBlocks);
    for (int b = 0; b < kBlocks; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * per;
        const std::size_t hi = (b == kBlocks - 1) ? n : lo + per;
        seq.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t orig = idx[i];
            if (orig >= lo && orig < hi) continue;
            seq.push_back(y_by_x[i]);
        }
        leave[b] = tau_from_inversions(seq, scratch);
    }
    const double mean = std::accumulate(leave.begin(), leave.end(), 0.0) / kBlocks;
    double ss = 0.0;
    for (double t : leave) ss += (t - mean) * (t - mean);
    est.stderr_ = std::sqrt((kBlocks - 1.0) / kBlocks * ss);
    return est;
}

std::vector<TailDepPoint> tail_dep_hat(std::span<const double> x,
                                       std::span<const double> y,
                                       std::span<const double> levels) {
    const std::size_t n = x.size();
    if (y.size() != n) throw std::invalid_argument("tail_dep_hat: size mismatch");
    if (n == 0) throw std::invalid_argument("tail_dep_hat: empty sample");
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    std::vector<TailDepPoint> out;
    out.reserve(levels.size());
    for (double u : levels) {
        if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("tail_dep_hat: level must be in (0,1)");
        if (static_cast<double>(n) * (1.0 - u) < 500.0) {
            throw std::invalid_argument("tail_dep_hat: needs paths*(1-u) >= 500 exceedances");
        }
        const double qx = empirical_quantile(xs, u);
        const double qy = empirical_quantile(ys, u);
        std::int64_t joint = 0, cond = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i] > qy) {
                ++cond;
                if (x[i] > qx) ++joint;
            }
        }
        TailDepPoint p;
        p.level = u;
        p.joint_exceed = joint;
        p.cond_exceed = cond;
        p.lambda = cond > 0 ? static_cast<double>(joint) / static_cast<double>(cond) : 0.0;
        p.stderr_ = cond > 0 ? std::sqrt(p.lambda * (1.0 - p.lambda) / static_cast<double>(cond)) : 0.0;
        out.push_back(p);
    }
    return out;
}

double arcsine_tau(double rho) {
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("arcsine_tau: rho must be in [-1,1]");
    return 2.0 / M_PI * std::asin(rho);
}

}  // namespace shp
