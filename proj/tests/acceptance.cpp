// Acceptance suite: one [PASS]/[FAIL] line per criterion. A criterion line
// fails only if one of its sub-checks fails; the detail text says which.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "shp/multivar.hpp"
#include "shp/risk_analytic.hpp"
#include "shp/risk_mc.hpp"
#include "shp/special_functions.hpp"

using namespace shp;

namespace {

const ReturnModel kModel{};
const double kC = 0.9996;

struct Criterion {
    std::string name;
    bool ok = true;
    std::vector<std::string> notes;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }

    void finish() const {
        std::ostringstream line;
        line << (ok ? "[PASS] " : "[FAIL] ") << name;
        for (std::size_t i = 0; i < notes.size(); ++i) {
            line << (i == 0 ? " -- " : "; ") << notes[i];
        }
        std::printf("%s\n", line.str().c_str());
        std::fflush(stdout);
        CHECK_MESSAGE(ok, name);
    }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << std::fixed << v;
    return os.str();
}

std::vector<HoldingPeriodDist> six_configs() {
    return {
        PointMass{10.0},
        PointMass{75.0},
        TwoPoint{10.0, 75.0, 0.99},
        Exponential{std::log(100.0) / 75.0},
        GeneralizedPareto{9.0, 2.0651},
        ScaledInverseGamma{1.5, 8.66 / 3.0},
    };
}

const char* config_name(std::size_t i) {
    static const char* names[] = {"const10", "const75", "twopoint", "exp", "gpd", "invgamma"};
    return names[i];
}

struct Columns {
    std::vector<double> x, y;
};

Columns joint_columns(double rho, const HoldingPeriodDist& dist, std::int64_t paths,
                      std::uint64_t seed = 42) {
    MultiAssetModel m;
    m.mu_annual = {0.0, 0.0};
    const double s2 = 0.09;
    m.cov_annual = {s2, rho * s2, rho * s2, s2};
    m.weights = {1.0, 1.0};
    SimConfig cfg;
    cfg.seed = seed;
    cfg.paths = paths;
    JointSample js = simulate_joint(m, dist, cfg);
    Columns c;
    const std::size_t n = js.horizon.size();
    c.x.resize(n);
    c.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.x[i] = js.at(i, 0);
        c.y[i] = js.at(i, 1);
    }
    return c;
}

}  // namespace

TEST_CASE("criterion 1: fixed-horizon and two-point analytic reproduction") {
    Criterion c{"criterion 1: table-2 analytic values (normal 10/75 b.d., two-point mixture)"};
    auto near = [&](double got, double target, const std::string& what) {
        c.check(std::fabs(got - target) <= 0.05,
                what + " = " + num(got) + " vs target " + num(target) + " +-0.05");
    };
    near(normal_var(kModel, 10.0, kC), 20.18, "normal VaR(10)");
    near(normal_es(kModel, 10.0, kC), 21.74, "normal ES(10)");
    near(normal_var(kModel, 75.0, kC), 55.54, "normal VaR(75)");
    near(normal_es(kModel, 75.0, kC), 59.81, "normal ES(75)");
    HoldingPeriodDist tp = TwoPoint{10.0, 75.0, 0.99};
    RiskEstimate est = risk_report(kModel, tp, kC);
    near(est.var, 29.23, "two-point VaR");
    near(est.es, 35.47, "two-point ES");
    if (!c.ok) {
        c.notes.push_back(
            "the two-point ES target conflicts with the stated mixture-ES formula, whose value "
            "is 35.851; the companion simulation column prints 36.1, consistent with the "
            "formula and not with 35.47");
    }
    c.finish();
}

TEST_CASE("criterion 2: heavy-tailed root-search reproduction") {
    Criterion c{"criterion 2: table-3 root-search VaR/ES and ES/VaR ratios"};
    const std::vector<HoldingPeriodDist> fams = {
        Exponential{std::log(100.0) / 75.0},
        GeneralizedPareto{9.0, 2.0651},
        ScaledInverseGamma{1.5, 8.66 / 3.0},
    };
    const double var_t[] = {39.2, 41.9, 46.7};
    const double es_t[] = {44.7, 56.9, 73.0};
    const double ratio_t[] = {14.0, 36.0, 55.0};
    const char* names[] = {"exp", "gpd", "invgamma"};
    for (std::size_t i = 0; i < fams.size(); ++i) {
        RiskEstimate est = risk_report(kModel, fams[i], kC);
        c.check(std::fabs(est.var - var_t[i]) <= 0.3,
                std::string(names[i]) + " VaR = " + num(est.var) + " vs " + num(var_t[i]) + " +-0.3");
        c.check(std::fabs(est.es - es_t[i]) <= 0.5,
                std::string(names[i]) + " ES = " + num(est.es) + " vs " + num(es_t[i]) + " +-0.5");
        const double ratio = 100.0 * (est.es / est.var - 1.0);
        c.check(std::fabs(ratio - ratio_t[i]) <= 2.0,
                std::string(names[i]) + " ES/VaR-1 = " + num(ratio) + "% vs " + num(ratio_t[i]) +
                    "% +-2");
    }
    if (!c.ok) {
        c.notes.push_back(
            "the inverse-gamma ratio implied by the model's own ES and VaR integrals is 57.26%, "
            "0.26 points outside the stated band; the 55% figure matches a truncated tail "
            "integral, not the full one");
    }
    c.finish();
}

TEST_CASE("criterion 3: monte carlo oracle agreement at two million paths") {
    Criterion c{"criterion 3: |mc - analytic| <= 3*stderr in all six configurations, deterministic seed"};
    SimConfig cfg;  // defaults: seed 42, 2M paths
    auto fams = six_configs();
    for (std::size_t i = 0; i < fams.size(); ++i) {
        RiskEstimate mc = mc_var_es(kModel, fams[i], kC, cfg);
        RiskEstimate an = risk_report(kModel, fams[i], kC);
        c.check(std::fabs(mc.var - an.var) <= 3.0 * mc.var_stderr,
                std::string(config_name(i)) + " VaR off by " + num(std::fabs(mc.var - an.var)) +
                    " vs 3*stderr " + num(3.0 * mc.var_stderr));
        c.check(std::fabs(mc.es - an.es) <= 3.0 * mc.es_stderr,
                std::string(config_name(i)) + " ES off by " + num(std::fabs(mc.es - an.es)) +
                    " vs 3*stderr " + num(3.0 * mc.es_stderr));
    }
    RiskEstimate a = mc_var_es(kModel, fams[2], kC, cfg);
    RiskEstimate b = mc_var_es(kModel, fams[2], kC, cfg);
    c.check(a.var == b.var && a.es == b.es, "fixed seed must reproduce identical estimates");
    c.finish();
}

TEST_CASE("criterion 4: holding-period statistics, analytic and simulated") {
    Criterion c{"criterion 4: table-3 means and medians"};
    HoldingPeriodDist ex = Exponential{std::log(100.0) / 75.0};
    HoldingPeriodDist gp = GeneralizedPareto{9.0, 2.0651};
    HoldingPeriodDist ig = ScaledInverseGamma{1.5, 8.66 / 3.0};

    // Analytic. The inverse-gamma mean target is the exact 8.66 that the
    // published 8.6 rounds from.
    auto near = [&](double got, double target, const std::string& what) {
        c.check(std::fabs(got - target) <= 0.05,
                what + " = " + num(got) + " vs " + num(target) + " +-0.05");
    };
    DistMoments me = moments(ex), mg = moments(gp), mi = moments(ig);
    near(me.mean, 16.3, "exp mean");
    near(mg.mean, 8.45, "gpd mean");
    near(mi.mean, 8.66, "invgamma mean");
    near(me.median, 11.3, "exp median");
    c.check(mg.median >= 3.55 && mg.median <= 3.75,
            "gpd median = " + num(mg.median) + " vs 3.6-3.7");
    near(mi.median, 3.7, "invgamma median");

    // Simulation: sample mean within 3 sample standard errors, analytic
    // median inside a 3-sigma binomial order-statistic band.
    SimConfig cfg;
    cfg.paths = 2'000'000;
    for (auto [dist, label] : {std::pair{ex, "exp"}, {gp, "gpd"}, {ig, "invgamma"}}) {
        PnlSample s = simulate_pnl(kModel, dist, cfg);
        const auto n = static_cast<double>(s.horizon.size());
        const double mean = std::accumulate(s.horizon.begin(), s.horizon.end(), 0.0) / n;
        double ss = 0.0;
        for (double h : s.horizon) ss += (h - mean) * (h - mean);
        const double se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        const double m_an = moments(dist).mean;
        c.check(std::fabs(mean - m_an) <= 3.0 * se,
                std::string(label) + " simulated mean " + num(mean) + " vs analytic " + num(m_an) +
                    " +-3*" + num(se));
        std::vector<double> sorted(s.horizon);
        std::sort(sorted.begin(), sorted.end());
        const double half_width = 3.0 * 0.5 / std::sqrt(n);
        const double lo = empirical_quantile(sorted, 0.5 - half_width);
        const double hi = empirical_quantile(sorted, 0.5 + half_width);
        const double med_an = moments(dist).median;
        c.check(med_an >= lo && med_an <= hi,
                std::string(label) + " analytic median " + num(med_an) +
                    " outside simulated band [" + num(lo) + ", " + num(hi) + "]");
    }
    c.finish();
}

TEST_CASE("criterion 5: property suite") {
    Criterion c{"criterion 5: round-trip, degenerate reduction, ES >= VaR, monotone G, quadrature vs exact sum"};
    auto fams = six_configs();

    for (const auto& d : fams) {
        for (double u : {1e-6, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0 - 1e-6}) {
            const double x = quantile(d, u);
            const double round = cdf(d, x);
            // Generalized inverse: cdf(quantile(u)) >= u with equality for
            // continuous laws; discrete laws land on the atom's cdf level.
            if (!is_discrete(d)) {
                c.check(std::fabs(round - u) < 1e-9, "cdf(quantile(u)) round trip at u=" + num(u));
            } else {
                c.check(round >= u - 1e-12, "discrete quantile covers u=" + num(u));
            }
        }
    }

    for (double h : {1.0, 10.0, 75.0, 250.0}) {
        HoldingPeriodDist pm = PointMass{h};
        const double v = shp_var(kModel, pm, kC);
        const double e = shp_es(kModel, pm, kC, v);
        c.check(std::fabs(v - normal_var(kModel, h, kC)) / normal_var(kModel, h, kC) < 1e-9,
                "degenerate VaR reduction at h=" + num(h));
        c.check(std::fabs(e - normal_es(kModel, h, kC)) / normal_es(kModel, h, kC) < 1e-9,
                "degenerate ES reduction at h=" + num(h));
    }

    for (const auto& d : fams) {
        for (double conf : {0.9, 0.99, 0.999, kC}) {
            const double v = shp_var(kModel, d, conf);
            c.check(shp_es(kModel, d, conf, v) >= v, "ES >= VaR at c=" + num(conf));
        }
        double prev = -1.0;
        bool monotone = true;
        for (double v = -20.0; v <= 120.0; v += 1.0) {
            const double g = mixture_loss_cdf(kModel, d, v);
            if (g < prev || (g < 1.0 && g <= prev)) monotone = false;
            prev = g;
        }
        c.check(monotone, "G(v) must increase strictly until saturation");
    }

    std::vector<double> samples;
    for (int i = 0; i < 99; ++i) samples.push_back(10.0);
    samples.push_back(75.0);
    HoldingPeriodDist em = Empirical{samples};
    validate(em);
    SolveOptions exact;
    exact.integration = MixtureIntegration::exact_sum;
    SolveOptions quad;
    quad.integration = MixtureIntegration::quadrature;
    const double ve = shp_var(kModel, em, kC, exact);
    const double vq = shp_var(kModel, em, kC, quad);
    c.check(std::fabs(ve - vq) < 1e-6, "quadrature vs exact-sum VaR differ by " + num(std::fabs(ve - vq)));
    const double ee = shp_es(kModel, em, kC, ve, exact);
    const double eq = shp_es(kModel, em, kC, ve, quad);
    c.check(std::fabs(ee - eq) < 1e-6, "quadrature vs exact-sum ES differ by " + num(std::fabs(ee - eq)));
    c.finish();
}

TEST_CASE("criterion 6: dependence suite") {
    Criterion c{"criterion 6: tau invariance, inverse-gamma tail-dependence anchor, heavy-tail dominance"};

    auto fams = six_configs();
    for (double rho : {0.1, 0.5, 0.9}) {
        for (std::size_t i = 0; i < fams.size(); ++i) {
            Columns cols = joint_columns(rho, fams[i], 1'000'000);
            TauEstimate t = kendall_tau_hat(cols.x, cols.y);
            const double target = arcsine_tau(rho);
            c.check(std::fabs(t.tau - target) <= 3.0 * t.stderr_,
                    std::string(config_name(i)) + " rho=" + num(rho) + ": tau_hat " + num(t.tau) +
                        " vs " + num(target) + " +-3*" + num(t.stderr_));
        }
    }

    // Inverse-gamma common horizon with alpha = 1.5 makes returns t with 3
    // degrees of freedom; at rho = 0 the t-copula tail dependence is
    // 2 (1 - T_4(2)).
    const double anchor = 2.0 * (1.0 - student_t_cdf(2.0, 4.0));
    const std::vector<double> levels{0.999};
    HoldingPeriodDist ig = ScaledInverseGamma{1.5, 8.66 / 3.0};
    {
        Columns cols = joint_columns(0.0, ig, 10'000'000);
        auto pts = tail_dep_hat(cols.x, cols.y, levels);
        c.check(std::fabs(pts[0].lambda - anchor) <= 0.02,
                "invgamma lambda(0.999) = " + num(pts[0].lambda) + " vs anchor " + num(anchor) +
                    " +-0.02");

        HoldingPeriodDist ex = Exponential{std::log(100.0) / 75.0};
        Columns ecols = joint_columns(0.0, ex, 10'000'000);
        auto epts = tail_dep_hat(ecols.x, ecols.y, levels);
        const double gap = pts[0].lambda - epts[0].lambda;
        const double se = std::hypot(pts[0].stderr_, epts[0].stderr_);
        c.check(gap >= 5.0 * se, "invgamma lambda " + num(pts[0].lambda) + " must exceed exp lambda " +
                                     num(epts[0].lambda) + " by 5*stderr " + num(5.0 * se));
    }
    c.finish();
}

TEST_CASE("criterion 7: calibration") {
    Criterion c{"criterion 7: calibrate_to_quantile hits cdf(x)=u to 1e-10; exponential mean 16.29"};
    struct Case {
        Family family;
        QuantileTarget target;
        std::optional<double> fixed;
    };
    const std::vector<Case> cases = {
        {Family::point_mass, {0.5, 20.0}, std::nullopt},
        {Family::exponential, {0.99, 75.0}, std::nullopt},
        {Family::exponential, {0.9, 30.0}, std::nullopt},
        {Family::generalized_pareto, {0.99, 75.0}, 9.0},
        {Family::generalized_pareto, {0.95, 40.0}, 5.0},
        {Family::scaled_inverse_gamma, {0.99, 75.0}, 1.5},
        {Family::scaled_inverse_gamma, {0.9, 20.0}, 2.5},
    };
    for (const auto& cs : cases) {
        HoldingPeriodDist d = calibrate_to_quantile(cs.family, cs.target, cs.fixed);
        const double hit = cdf(d, cs.target.x);
        if (cs.family == Family::point_mass) {
            c.check(hit >= cs.target.u, "point-mass cdf at target must reach u");
        } else {
            c.check(std::fabs(hit - cs.target.u) < 1e-10,
                    "cdf(x) = " + num(hit) + " vs u = " + num(cs.target.u));
        }
    }
    HoldingPeriodDist ex = calibrate_to_quantile(Family::exponential, {0.99, 75.0});
    const double mean = moments(ex).mean;
    c.check(std::fabs(mean - 16.29) <= 0.005, "exp mean = " + num(mean) + " vs 16.29");
    c.finish();
}
