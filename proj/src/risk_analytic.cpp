#include "shp/risk_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shp/numerics.hpp"
#include "shp/special_functions.hpp"

namespace shp {

namespace {

void check_confidence(double c) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("confidence must be in (0,1)");
}

bool use_exact_sum(const HoldingPeriodDist& dist, const SolveOptions& opts) {
    switch (opts.integration) {
        case MixtureIntegration::exact_sum:
            if (!is_discrete(dist)) {
                throw std::invalid_argument("exact_sum integration requires a discrete law");
            }
            return true;
        case MixtureIntegration::quadrature:
            return false;
        case MixtureIntegration::automatic:
        default:
            return is_discrete(dist);
    }
}

// Integrates g(h) against the holding-period law, either as an exact finite
// sum over atoms or by Gauss-Legendre on the quantile substitution
// h = F_H^{-1}(u).
template <typename Fn>
double mix_integral(const HoldingPeriodDist& dist, const SolveOptions& opts,
                    bool exact, Fn&& g) {
    if (exact) {
        double s = 0.0;
        for (const Atom& a : atoms(dist)) s += a.p * g(a.h);
        return s;
    }
    // Quantile substitution split at u = 1/2. The upper half integrates in
    // the survival variable p = 1-u (exact for u >= 1/2), whose dyadic panels
    // reach far below machine epsilon of 1 -- needed because heavy-tailed ES
    // integrands behave like p^(-1/alpha) near p = 0 and the 1/(1-c) factor
    // amplifies any truncated tail mass.
    const auto breaks = quantile_breakpoints(dist);
    std::vector<double> lower_edges{0.0, 0.5};
    std::vector<double> upper_edges{0.0, 0.5};
    for (int j = 1; j <= 52; ++j) lower_edges.push_back(std::ldexp(1.0, -j));
    for (int j = 1; j <= 330; ++j) upper_edges.push_back(std::ldexp(1.0, -j));
    for (double b : breaks) {
        if (b < 0.5) lower_edges.push_back(b);
        else if (b > 0.5) upper_edges.push_back(1.0 - b);
    }
    const double u_min = std::numeric_limits<double>::min();
    const double lower = integrate_panels(
        [&](double u) { return g(quantile(dist, std::fmax(u, u_min))); },
        lower_edges, opts.quadrature_nodes);
    const double upper = integrate_panels(
        [&](double p) { return g(survival_quantile(dist, p)); }, upper_edges,
        opts.quadrature_nodes);
    return lower + upper;
}

// ES integrand per horizon in return units:
// -mu_h Phi((-mu_h - v)/sigma_h) + sigma_h p((-mu_h - v)/sigma_h).
double es_term(const ReturnModel& model, double h, double v_ret) {
    const double mu = model.horizon_mean(h);
    const double sd = model.horizon_stdev(h);
    const double z = (-mu - v_ret) / sd;
    return -mu * norm_cdf(z) + sd * norm_pdf(z);
}

}  // namespace

double normal_var(const ReturnModel& model, double h, double c) {
    model.validate();
    check_confidence(c);
    if (!(h > 0.0)) throw std::invalid_argument("normal_var: h must be positive");
    return model.exposure *
           (-model.horizon_mean(h) + norm_cdf_inv(c) * model.horizon_stdev(h));
}

double normal_es(const ReturnModel& model, double h, double c) {
    model.validate();
    check_confidence(c);
    if (!(h > 0.0)) throw std::invalid_argument("normal_es: h must be positive");
    const double z = norm_cdf_inv(c);
    return model.exposure *
           (-model.horizon_mean(h) + model.horizon_stdev(h) * norm_pdf(z) / (1.0 - c));
}

double mixture_loss_cdf(const ReturnModel& model, const HoldingPeriodDist& dist,
                        double v, const SolveOptions& opts) {
    model.validate();
    const double v_ret = v / model.exposure;
    const bool exact = use_exact_sum(dist, opts);
    return mix_integral(dist, opts, exact, [&](double h) {
        return norm_cdf((model.horizon_mean(h) + v_ret) / model.horizon_stdev(h));
    });
}

double shp_var(const ReturnModel& model, const HoldingPeriodDist& dist, double c,
               const SolveOptions& opts) {
    model.validate();
    check_confidence(c);
    const bool exact = use_exact_sum(dist, opts);
    auto g = [&](double v_ret) {
        return mix_integral(dist, opts, exact, [&](double h) {
                   return norm_cdf((model.horizon_mean(h) + v_ret) /
                                   model.horizon_stdev(h));
               }) -
               c;
    };

    // Initial upper bracket: the fixed-horizon VaR at a horizon quantile well
    // past c, expanded geometrically if the mixture needs more.
    const double h_hi = quantile(dist, 1.0 - (1.0 - c) / 10.0);
    double hi = -model.horizon_mean(h_hi) + norm_cdf_inv(c) * model.horizon_stdev(h_hi);
    if (!(hi > 0.0)) hi = model.horizon_stdev(h_hi);
    double lo = 0.0;
    double glo = g(lo);
    double ghi = g(hi);
    int expansions = 0;
    while (ghi < 0.0) {
        if (++expansions > opts.max_bracket_expansions) {
            throw std::runtime_error("shp_var: bracket expansion failed (upper)");
        }
        lo = hi;
        glo = ghi;
        hi *= 2.0;
        ghi = g(hi);
    }
    while (glo > 0.0) {
        if (++expansions > opts.max_bracket_expansions) {
            throw std::runtime_error("shp_var: bracket expansion failed (lower)");
        }
        hi = lo;
        ghi = glo;
        lo = (lo == 0.0) ? -model.horizon_stdev(h_hi) : lo * 2.0;
        glo = g(lo);
    }
    const double xtol = 1e-13 * std::fmax(1.0, std::fabs(hi));
    double v_ret = brent_root(g, lo, hi, xtol, opts.tolerance);
    return model.exposure * v_ret;
}

double shp_es(const ReturnModel& model, const HoldingPeriodDist& dist, double c,
              double var, const SolveOptions& opts) {
    model.validate();
    check_confidence(c);
    const double v_ret = var / model.exposure;
    const bool exact = use_exact_sum(dist, opts);
    double integral = mix_integral(dist, opts, exact,
                                   [&](double h) { return es_term(model, h, v_ret); });
    return model.exposure * integral / (1.0 - c);
}

RiskEstimate risk_report(const ReturnModel& model, const HoldingPeriodDist& dist,
                         double c, const SolveOptions& opts) {
    RiskEstimate est;
    est.confidence = c;
    est.method = RiskMethod::root_search;
    est.var = shp_var(model, dist, c, opts);
    est.es = shp_es(model, dist, c, est.var, opts);
    return est;
}

}  // namespace shp
