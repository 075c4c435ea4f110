#pragma once

#include <functional>
#include <span>
#include <vector>

namespace shp {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule, computed once by Newton iteration on the
// Legendre polynomial roots and cached per n.
const GaussLegendreRule& gauss_legendre(int n);

// Composite Gauss-Legendre over the panels defined by an ascending edge
// list. Edges may repeat; zero-width panels are skipped. Nodes are strictly
// interior to each panel, so f is never evaluated at an edge.
double integrate_panels(const std::function<double(double)>& f,
                        std::span<const double> edges, int nodes_per_panel = 16);

// Composite Gauss-Legendre integral of f over (0,1). Panels refine
// dyadically toward both endpoints (down to ~2^-52), so integrable endpoint
// singularities such as (1-u)^(-2/3) from heavy-tailed horizon quantiles are
// resolved without truncating the domain. Extra interior breakpoints (e.g.
// the jump locations of a discrete quantile function) become panel edges,
// making piecewise-smooth integrands exact to rule accuracy.
double integrate_unit(const std::function<double(double)>& f,
                      std::span<const double> interior_breakpoints = {},
                      int nodes_per_panel = 16);

// Brent root-search on [a,b] with f(a), f(b) of opposite sign. Stops when
// the bracket is below xtol or |f| below ftol. Throws std::invalid_argument
// if the bracket does not straddle a sign change.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol, double ftol, int max_iter = 200);

}  // namespace shp
