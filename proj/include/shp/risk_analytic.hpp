#pragma once

#include "shp/holding_period.hpp"
#include "shp/return_model.hpp"

namespace shp {

// Closed-form Gaussian VaR/ES for a fixed horizon, in currency units.
double normal_var(const ReturnModel& model, double h, double c);
double normal_es(const ReturnModel& model, double h, double c);

enum class MixtureIntegration {
    automatic,  // exact sum for discrete laws, quadrature otherwise
    exact_sum,
    quadrature,
};

struct SolveOptions {
    double tolerance = 1e-10;  // on the confidence scale
    MixtureIntegration integration = MixtureIntegration::automatic;
    int quadrature_nodes = 16;
    int max_bracket_expansions = 60;
};

// P(loss <= v) under the holding-period mixture, v in currency units.
// Strictly increasing in v; the quadrature path substitutes h = F_H^{-1}(u)
// so heavy horizon tails become an integrable endpoint.
double mixture_loss_cdf(const ReturnModel& model, const HoldingPeriodDist& dist,
                        double v, const SolveOptions& opts = {});

// VaR under the mixture: the unique root of mixture_loss_cdf(v) = c, found
// by Brent's method on an expanding bracket.
double shp_var(const ReturnModel& model, const HoldingPeriodDist& dist, double c,
               const SolveOptions& opts = {});

// ES under the mixture at the given VaR (produced by shp_var at the same c).
double shp_es(const ReturnModel& model, const HoldingPeriodDist& dist, double c,
              double var, const SolveOptions& opts = {});

// shp_var + shp_es bundled, method = root_search.
RiskEstimate risk_report(const ReturnModel& model, const HoldingPeriodDist& dist,
                         double c, const SolveOptions& opts = {});

}  // namespace shp
