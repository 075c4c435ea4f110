#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "shp/risk_analytic.hpp"
#include "shp/special_functions.hpp"

using namespace shp;

namespace {

const ReturnModel kModel{};  // paper defaults: mu -1.5%/y, sigma 30%/y, 250 d/y, exposure 100
const double kC = 0.9996;

HoldingPeriodDist make(HoldingPeriodDist d) {
    validate(d);
    return d;
}

// Frozen against an independent high-precision quadrature oracle
// (h-domain integration at 25-digit arithmetic).
constexpr double kTwoPointVar = 29.22772191;
constexpr double kTwoPointEs = 35.85115308;
constexpr double kExpVar = 39.00803122;
constexpr double kExpEs = 44.47143131;
constexpr double kGpdVar = 41.7987158;
constexpr double kGpdEs = 56.76187408;
constexpr double kSigVar = 46.69271481;
constexpr double kSigEs = 73.43150;

}  // namespace

TEST_CASE("normal_var closed form") {
    CHECK(normal_var(kModel, 10.0, kC) == doctest::Approx(20.176768683).epsilon(1e-9));
    CHECK(normal_var(kModel, 75.0, kC) == doctest::Approx(55.542039959).epsilon(1e-9));
    // c = 0.5: pure drift.
    CHECK(normal_var(kModel, 10.0, 0.5) == doctest::Approx(-100.0 * (-0.015) * 10.0 / 250.0).epsilon(1e-12));
    CHECK_THROWS_AS(normal_var(kModel, -1.0, kC), std::invalid_argument);
    CHECK_THROWS_AS(normal_var(kModel, 10.0, 1.0), std::invalid_argument);
}

TEST_CASE("normal_es closed form") {
    CHECK(normal_es(kModel, 10.0, kC) == doctest::Approx(21.736972604).epsilon(1e-9));
    CHECK(normal_es(kModel, 75.0, kC) == doctest::Approx(59.814834368).epsilon(1e-9));
    double h = 30.0;
    double expect = -100.0 * kModel.horizon_mean(h) +
                    100.0 * kModel.horizon_stdev(h) * norm_pdf(0.0) / 0.5;
    CHECK(normal_es(kModel, h, 0.5) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(normal_es(kModel, 10.0, kC) > normal_var(kModel, 10.0, kC));
}

TEST_CASE("shp_var on the two-point mixture") {
    auto tp = make(TwoPoint{10.0, 75.0, 0.99});
    CHECK(shp_var(kModel, tp, kC) == doctest::Approx(kTwoPointVar).epsilon(1e-8));
    CHECK(shp_es(kModel, tp, kC, shp_var(kModel, tp, kC)) == doctest::Approx(kTwoPointEs).epsilon(1e-8));
}

TEST_CASE("degenerate point-mass mixture reduces to the closed form") {
    for (double h : {1.0, 10.0, 75.0, 250.0}) {
        auto pm = make(PointMass{h});
        double v = shp_var(kModel, pm, kC);
        double e = shp_es(kModel, pm, kC, v);
        CHECK(std::fabs(v - normal_var(kModel, h, kC)) / normal_var(kModel, h, kC) < 1e-9);
        CHECK(std::fabs(e - normal_es(kModel, h, kC)) / normal_es(kModel, h, kC) < 1e-9);
    }
}

TEST_CASE("continuous families against frozen oracle values") {
    auto exp = calibrate_to_quantile(Family::exponential, {0.99, 75.0});
    CHECK(shp_var(kModel, exp, kC) == doctest::Approx(kExpVar).epsilon(2e-7));
    CHECK(shp_es(kModel, exp, kC, shp_var(kModel, exp, kC)) == doctest::Approx(kExpEs).epsilon(2e-7));

    auto gpd = make(GeneralizedPareto{9.0, 2.0651});
    CHECK(shp_var(kModel, gpd, kC) == doctest::Approx(kGpdVar).epsilon(2e-7));
    CHECK(shp_es(kModel, gpd, kC, shp_var(kModel, gpd, kC)) == doctest::Approx(kGpdEs).epsilon(2e-7));

    auto sig = make(ScaledInverseGamma{1.5, 8.66 / 3.0});
    CHECK(shp_var(kModel, sig, kC) == doctest::Approx(kSigVar).epsilon(2e-7));
    CHECK(shp_es(kModel, sig, kC, shp_var(kModel, sig, kC)) == doctest::Approx(kSigEs).epsilon(1e-6));
}

TEST_CASE("risk_report bundles var and es") {
    auto tp = make(TwoPoint{10.0, 75.0, 0.99});
    RiskEstimate est = risk_report(kModel, tp, kC);
    CHECK(est.var == doctest::Approx(kTwoPointVar).epsilon(1e-8));
    CHECK(est.es == doctest::Approx(kTwoPointEs).epsilon(1e-8));
    CHECK(est.method == RiskMethod::root_search);
    CHECK(est.var_stderr == 0.0);

    RiskEstimate pm75 = risk_report(kModel, make(PointMass{75.0}), kC);
    CHECK(pm75.var == doctest::Approx(55.5420).epsilon(1e-5));
    CHECK(pm75.es == doctest::Approx(59.8148).epsilon(1e-5));

    RiskEstimate sig = risk_report(kModel, make(ScaledInverseGamma{1.5, 8.66 / 3.0}), kC);
    CHECK(sig.es / sig.var - 1.0 == doctest::Approx(0.57265).epsilon(1e-3));
}

TEST_CASE("mixture loss cdf is strictly increasing in the loss level") {
    std::vector<HoldingPeriodDist> fams = {
        make(PointMass{10.0}),
        make(TwoPoint{10.0, 75.0, 0.99}),
        make(Exponential{std::log(100.0) / 75.0}),
        make(GeneralizedPareto{9.0, 2.0651}),
        make(ScaledInverseGamma{1.5, 8.66 / 3.0}),
        make(Empirical{{4.0, 9.0, 21.0, 60.0}}),
    };
    for (const auto& d : fams) {
        double prev = -1.0;
        for (double v = -20.0; v <= 120.0; v += 2.5) {
            double g = mixture_loss_cdf(kModel, d, v);
            CHECK(g >= prev);
            // Strict until the cdf saturates to 1 in double precision.
            if (g < 1.0) CHECK(g > prev);
            prev = g;
        }
    }
}

TEST_CASE("two-point mixture VaR lies between the fixed-horizon VaRs") {
    auto tp = make(TwoPoint{10.0, 75.0, 0.99});
    double v = shp_var(kModel, tp, kC);
    CHECK(normal_var(kModel, 10.0, kC) <= v);
    CHECK(v <= normal_var(kModel, 75.0, kC));
}

TEST_CASE("es dominates var across families and confidence levels") {
    std::vector<HoldingPeriodDist> fams = {
        make(TwoPoint{10.0, 75.0, 0.99}),
        make(Exponential{std::log(100.0) / 75.0}),
        make(GeneralizedPareto{9.0, 2.0651}),
        make(ScaledInverseGamma{1.5, 8.66 / 3.0}),
    };
    for (const auto& d : fams) {
        for (double c : {0.9, 0.99, 0.9996}) {
            double v = shp_var(kModel, d, c);
            CHECK(shp_es(kModel, d, c, v) >= v);
        }
    }
}

TEST_CASE("tail heaviness ordering across continuous families") {
    auto ratio = [&](const HoldingPeriodDist& d) {
        RiskEstimate est = risk_report(kModel, d, kC);
        return est.es / est.var - 1.0;
    };
    double r_exp = ratio(calibrate_to_quantile(Family::exponential, {0.99, 75.0}));
    double r_gpd = ratio(make(GeneralizedPareto{9.0, 2.0651}));
    double r_sig = ratio(make(ScaledInverseGamma{1.5, 8.66 / 3.0}));
    CHECK(r_exp < r_gpd);
    CHECK(r_gpd < r_sig);
}

TEST_CASE("quadrature path matches the exact sum on a discrete law") {
    // Two-point law expressed as an empirical two-atom sample; the quadrature
    // path sees the atoms only through quantile breakpoints.
    std::vector<double> samples;
    for (int i = 0; i < 99; ++i) samples.push_back(10.0);
    samples.push_back(75.0);
    auto em = make(Empirical{samples});

    SolveOptions exact;
    exact.integration = MixtureIntegration::exact_sum;
    SolveOptions quad;
    quad.integration = MixtureIntegration::quadrature;

    double v_exact = shp_var(kModel, em, kC, exact);
    double v_quad = shp_var(kModel, em, kC, quad);
    CHECK(std::fabs(v_exact - v_quad) < 1e-6);
    double e_exact = shp_es(kModel, em, kC, v_exact, exact);
    double e_quad = shp_es(kModel, em, kC, v_exact, quad);
    CHECK(std::fabs(e_exact - e_quad) < 1e-6);
    // And the empirical two-atom law matches the TwoPoint family itself.
    CHECK(v_exact == doctest::Approx(kTwoPointVar).epsilon(1e-8));

    CHECK_THROWS_AS(shp_var(kModel, make(Exponential{0.05}), kC, exact), std::invalid_argument);
}
