#pragma once

#include <cmath>
#include <stdexcept>

namespace shp {

// Annualized Gaussian log-return model. Horizon h in business days scales the
// drift linearly and the volatility by the square root (Brownian scaling).
struct ReturnModel {
    double mu_annual = -0.015;     // log-return drift per year
    double sigma_annual = 0.30;    // log-return volatility per year
    double days_per_year = 250.0;  // business days
    double exposure = 100.0;       // currency units

    double horizon_mean(double h) const { return mu_annual * h / days_per_year; }
    double horizon_stdev(double h) const { return sigma_annual * std::sqrt(h / days_per_year); }

    void validate() const {
        if (!(sigma_annual > 0.0)) throw std::invalid_argument("ReturnModel: sigma_annual must be positive");
        if (!(days_per_year > 0.0)) throw std::invalid_argument("ReturnModel: days_per_year must be positive");
        if (!(exposure > 0.0)) throw std::invalid_argument("ReturnModel: exposure must be positive");
    }
};

enum class RiskMethod { closed_form, root_search, monte_carlo };

// VaR and ES as positive currency losses; stderrs are zero unless the method
// is monte_carlo.
struct RiskEstimate {
    double var = 0.0;
    double es = 0.0;
    double confidence = 0.0;
    RiskMethod method = RiskMethod::closed_form;
    double var_stderr = 0.0;
    double es_stderr = 0.0;
};

}  // namespace shp
