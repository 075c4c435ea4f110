#include "shp/holding_period.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "shp/special_functions.hpp"

namespace shp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void validate(HoldingPeriodDist& dist) {
    std::visit(
        [](auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                require(d.h > 0.0, "PointMass: h must be positive");
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                require(d.h1 > 0.0 && d.h2 > 0.0, "TwoPoint: horizons must be positive");
                require(d.h1 < d.h2, "TwoPoint: requires h1 < h2");
                require(d.p1 >= 0.0 && d.p1 <= 1.0, "TwoPoint: p1 must be in [0,1]");
            } else if constexpr (std::is_same_v<T, Exponential>) {
                require(d.rate > 0.0, "Exponential: rate must be positive");
            } else if constexpr (std::is_same_v<T, GeneralizedPareto>) {
                require(d.scale > 0.0, "GeneralizedPareto: scale must be positive");
                require(d.shape > 0.0, "GeneralizedPareto: shape must be positive");
            } else if constexpr (std::is_same_v<T, ScaledInverseGamma>) {
                require(d.shape > 0.0, "ScaledInverseGamma: shape must be positive");
                require(d.scale > 0.0, "ScaledInverseGamma: scale must be positive");
            } else if constexpr (std::is_same_v<T, Empirical>) {
                require(!d.samples.empty(), "Empirical: samples must be nonempty");
                for (double s : d.samples) require(s > 0.0, "Empirical: samples must be positive");
                std::sort(d.samples.begin(), d.samples.end());
            }
        },
        dist);
}

double cdf(const HoldingPeriodDist& dist, double x) {
    if (x < 0.0) throw std::invalid_argument("cdf: x must be nonnegative");
    return std::visit(
        [x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return x >= d.h ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                if (x < d.h1) return 0.0;
                if (x < d.h2) return d.p1;
                return 1.0;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return -std::expm1(-d.rate * x);
            } else if constexpr (std::is_same_v<T, GeneralizedPareto>) {
                return -std::expm1(d.shape * (std::log(d.scale) - std::log(d.scale + x)));
            } else if constexpr (std::is_same_v<T, ScaledInverseGamma>) {
                if (x == 0.0) return 0.0;
                return gamma_q(d.shape, d.shape * d.scale / x);
            } else {
                auto it = std::upper_bound(d.samples.begin(), d.samples.end(), x);
                return static_cast<double>(it - d.samples.begin()) /
                       static_cast<double>(d.samples.size());
            }
        },
        dist);
}

double quantile(const HoldingPeriodDist& dist, double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("quantile: u must be in (0,1)");
    return std::visit(
        [u](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return d.h;
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                return u <= d.p1 ? d.h1 : d.h2;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return -std::log1p(-u) / d.rate;
            } else if constexpr (std::is_same_v<T, GeneralizedPareto>) {
                return d.scale * std::expm1(-std::log1p(-u) / d.shape);
            } else if constexpr (std::is_same_v<T, ScaledInverseGamma>) {
                // F(x) = Q(alpha, alpha*k/x) = u  =>  alpha*k/x = P^{-1}(alpha, 1-u).
                // 1-u rounds to 1.0 for u below half an ulp; keep p in [0,1).
                double p = std::fmin(1.0 - u, 1.0 - std::numeric_limits<double>::epsilon() / 2.0);
                double t = gamma_p_inv(d.shape, p);
                return d.shape * d.scale / t;
            } else {
                const auto n = d.samples.size();
                auto idx = static_cast<std::size_t>(std::ceil(u * static_cast<double>(n)));
                if (idx == 0) idx = 1;
                if (idx > n) idx = n;
                return d.samples[idx - 1];
            }
        },
        dist);
}

double survival_quantile(const HoldingPeriodDist& dist, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("survival_quantile: p must be in (0,1)");
    }
    return std::visit(
        [p](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return d.h;
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                // quantile(1-p) selects h1 iff 1-p <= p1.
                return p >= 1.0 - d.p1 ? d.h1 : d.h2;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return -std::log(p) / d.rate;
            } else if constexpr (std::is_same_v<T, GeneralizedPareto>) {
                return d.scale * std::expm1(-std::log(p) / d.shape);
            } else if constexpr (std::is_same_v<T, ScaledInverseGamma>) {
                return d.shape * d.scale / gamma_p_inv(d.shape, p);
            } else {
                const auto n = d.samples.size();
                // ceil((1-p) n) = n - floor(p n), exact even for tiny p.
                auto idx = n - static_cast<std::size_t>(std::floor(p * static_cast<double>(n)));
                if (idx == 0) idx = 1;
                if (idx > n) idx = n;
                return d.samples[idx - 1];
            }
        },
        dist);
}

double sample(const HoldingPeriodDist& dist, RngStream& stream) {
    return quantile(dist, stream.uniform());
}

DistMoments moments(const HoldingPeriodDist& dist) {
    double mean = std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return d.h;
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                return d.p1 * d.h1 + (1.0 - d.p1) * d.h2;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return 1.0 / d.rate;
            } else if constexpr (std::is_same_v<T, GeneralizedPareto>) {
                return d.shape > 1.0 ? d.scale / (d.shape - 1.0) : kInf;
            } else if constexpr (std::is_same_v<T, ScaledInverseGamma>) {
                return d.shape > 1.0 ? d.scale * d.shape / (d.shape - 1.0) : kInf;
            } else {
                return std::accumulate(d.samples.begin(), d.samples.end(), 0.0) /
                       static_cast<double>(d.samples.size());
            }
        },
        dist);
    return DistMoments{mean, quantile(dist, 0.5)};
}

bool is_discrete(const HoldingPeriodDist& dist) {
    return std::holds_alternative<PointMass>(dist) ||
           std::holds_alternative<TwoPoint>(dist) ||
           std::holds_alternative<Empirical>(dist);
}

std::vector<Atom> atoms(const HoldingPeriodDist& dist) {
    if (const auto* pm = std::get_if<PointMass>(&dist)) {
        return {Atom{pm->h, 1.0}};
    }
    if (const auto* tp = std::get_if<TwoPoint>(&dist)) {
        return {Atom{tp->h1, tp->p1}, Atom{tp->h2, 1.0 - tp->p1}};
    }
    if (const auto* em = std::get_if<Empirical>(&dist)) {
        std::vector<Atom> out;
        const double w = 1.0 / static_cast<double>(em->samples.size());
        for (double s : em->samples) {
            if (!out.empty() && out.back().h == s) {
                out.back().p += w;
            } else {
                out.push_back(Atom{s, w});
            }
        }
        return out;
    }
    throw std::invalid_argument("atoms: distribution is not discrete");
}

std::vector<double> quantile_breakpoints(const HoldingPeriodDist& dist) {
    if (!is_discrete(dist)) return {};
    std::vector<double> out;
    double cum = 0.0;
    auto as = atoms(dist);
    for (std::size_t i = 0; i + 1 < as.size(); ++i) {
        cum += as[i].p;
        out.push_back(cum);
    }
    return out;
}

HoldingPeriodDist calibrate_to_quantile(Family family, QuantileTarget target,
                                        std::optional<double> fixed_param) {
    if (!(target.u > 0.0 && target.u < 1.0)) {
        throw std::invalid_argument("calibrate_to_quantile: target u must be in (0,1)");
    }
    if (!(target.x > 0.0)) {
        throw std::invalid_argument("calibrate_to_quantile: target x must be positive");
    }
    HoldingPeriodDist out = [&]() -> HoldingPeriodDist {
        switch (family) {
            case Family::point_mass:
                return PointMass{target.x};
            case Family::exponential:
                return Exponential{-std::log1p(-target.u) / target.x};
            case Family::generalized_pareto: {
                if (!fixed_param) {
                    throw std::invalid_argument(
                        "calibrate_to_quantile: generalized_pareto needs fixed scale k");
                }
                double k = *fixed_param;
                if (!(k > 0.0)) throw std::invalid_argument("calibrate_to_quantile: scale must be positive");
                double alpha = std::log1p(-target.u) / (std::log(k) - std::log(k + target.x));
                return GeneralizedPareto{k, alpha};
            }
            case Family::scaled_inverse_gamma: {
                if (!fixed_param) {
                    throw std::invalid_argument(
                        "calibrate_to_quantile: scaled_inverse_gamma needs fixed shape alpha");
                }
                double alpha = *fixed_param;
                if (!(alpha > 0.0)) throw std::invalid_argument("calibrate_to_quantile: shape must be positive");
                // Q(alpha, alpha*k/x) = u  =>  k = x * P^{-1}(alpha, 1-u) / alpha.
                double t = gamma_p_inv(alpha, 1.0 - target.u);
                return ScaledInverseGamma{alpha, target.x * t / alpha};
            }
            default:
                throw std::invalid_argument(
                    "calibrate_to_quantile: family has no one-parameter calibration");
        }
    }();
    validate(out);
    return out;
}

}  // namespace shp
