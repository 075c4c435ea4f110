#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "shp/rng.hpp"

namespace shp {

// Holding-period laws. Horizons are real-valued business days, strictly
// positive; continuous families keep the heavy-tail behavior that drives the
// liquidity adjustment.

struct PointMass {
    double h;  // business days
};

struct TwoPoint {
    double h1;  // business days
    double h2;
    double p1;  // probability of h1
};

struct Exponential {
    double rate;  // 1 / business days
};

// Survival (k/(k+x))^alpha; moments finite only below order alpha.
struct GeneralizedPareto {
    double scale;  // k, business days
    double shape;  // alpha
};

// k * X where X has density alpha^alpha / Gamma(alpha) x^(-alpha-1) e^(-alpha/x).
// Mixing Gaussian returns with this law yields Student t with 2*alpha df.
struct ScaledInverseGamma {
    double shape;  // alpha
    double scale;  // k, business days
};

struct Empirical {
    std::vector<double> samples;  // sorted at validation
};

using HoldingPeriodDist = std::variant<PointMass, TwoPoint, Exponential,
                                       GeneralizedPareto, ScaledInverseGamma,
                                       Empirical>;

enum class Family {
    point_mass,
    two_point,
    exponential,
    generalized_pareto,
    scaled_inverse_gamma,
    empirical,
};

// Throws std::invalid_argument on parameter violations (nonpositive
// horizons/rates/shapes, probabilities outside [0,1], empty samples).
// Sorts Empirical samples in place.
void validate(HoldingPeriodDist& dist);

double cdf(const HoldingPeriodDist& dist, double x);

// Generalized inverse of the cdf; u must lie in (0,1). Closed form except
// ScaledInverseGamma, which inverts through the regularized gamma inverse.
double quantile(const HoldingPeriodDist& dist, double u);

// Upper-tail quantile: the horizon at survival probability p, i.e.
// quantile(dist, 1-p) computed without forming 1-p, so tail probabilities far
// below machine epsilon of 1 stay resolvable. p must lie in (0,1).
double survival_quantile(const HoldingPeriodDist& dist, double p);

// Inverse-transform draw: one uniform from the stream, pushed through
// quantile, so a fixed seed fixes the whole path.
double sample(const HoldingPeriodDist& dist, RngStream& stream);

struct DistMoments {
    double mean;    // +infinity when the tail index is <= 1
    double median;
};

DistMoments moments(const HoldingPeriodDist& dist);

bool is_discrete(const HoldingPeriodDist& dist);

struct Atom {
    double h;
    double p;
};

// Support of a discrete law as (horizon, probability) pairs, horizons
// ascending, probabilities summing to 1. Throws for continuous families.
std::vector<Atom> atoms(const HoldingPeriodDist& dist);

// cdf levels at which the quantile function jumps; used as quadrature panel
// edges so the quantile-substitution integral stays exact on discrete laws.
// Empty for continuous families.
std::vector<double> quantile_breakpoints(const HoldingPeriodDist& dist);

struct QuantileTarget {
    double u;  // probability
    double x;  // business days
};

// Solves the single free parameter of the family so that cdf(x) = u:
//   exponential            -> rate          (no fixed parameter)
//   generalized_pareto     -> shape, fixed_param = scale k
//   scaled_inverse_gamma   -> scale, fixed_param = shape alpha
//   point_mass             -> PointMass{x}
// Throws for infeasible targets or families without a one-parameter
// calibration (two_point, empirical).
HoldingPeriodDist calibrate_to_quantile(Family family, QuantileTarget target,
                                        std::optional<double> fixed_param = std::nullopt);

}  // namespace shp
