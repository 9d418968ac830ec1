#ifndef STOCHDOM_DOMINANCE_CORE_HPP
#define STOCHDOM_DOMINANCE_CORE_HPP

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochdom/distribution_catalog.hpp"
#include "stochdom/reference_models.hpp"
#include "stochdom/special_fn.hpp"

namespace stochdom {

enum class Sign { minus, plus, none };

// Sign-change structure of a function: number of changes (zeros omitted),
// the first nonzero sign, and bisection-refined change locations.
struct CrossingReport {
    int count = 0;
    Sign first_sign = Sign::none;
    std::vector<double> locations;
    bool unreliable = false;
};

CrossingReport sign_changes(const std::function<double(double)>& f, double lo,
                            double hi, int grid_size, double zero_tol = 1e-12);
CrossingReport sign_changes_on_grid(const std::function<double(double)>& f,
                                    std::span<const double> grid,
                                    double zero_tol = 1e-12);

// A distribution given by its CDF and quantile function; what the numeric
// machinery needs to probe where the probability mass lives.
struct RealDist {
    std::function<double(double)> cdf;
    std::function<double(double)> quantile;
    std::optional<double> mean;
};

RealDist to_real_dist(const ParametricDistribution& d);
RealDist order_stat_dist(const ParametricDistribution& d, const OrderStatSpec& s);

// Probe abscissae: per-distribution quantile grids merged, so roughly one
// point per 2/points of combined probability mass.
std::vector<double> probe_grid(const RealDist& x, const RealDist& y, int points = 4096,
                               double eps = 1e-9);

CrossingReport cdf_sign_changes(const RealDist& x, const RealDist& y,
                                int grid_size = 4096);

enum class SsdOutcome { holds, fails, inconclusive };

struct SsdResult {
    SsdOutcome verdict = SsdOutcome::inconclusive;
    double worst_x = 0.0;      // witness: argmax of the integrated CDF gap
    double worst_gap = 0.0;    // sup of integral(F_X - F_Y)
    double tolerance = 0.0;
    bool tail_checked = false; // limit at +infinity verified through means
    bool integration_ok = true;
};

struct SsdOptions {
    int grid_size = 1024;
    double tol_factor = 1e-7;  // tolerance = tol_factor * max(1, |EX|, |EY|)
    double eps = 1e-9;         // quantile range probed: [eps, 1-eps]
};

// Numeric SSD verdict: integrates F_X - F_Y along an expanding checkpoint
// grid (refined at CDF crossings, where the integral has local extrema).
// "holds" additionally requires the tail limit E(Y) - E(X) <= tolerance,
// which needs both means; without them the best possible verdict is
// "inconclusive". Never claims "fails" unless a witness exceeds tolerance.
SsdResult ssd_numeric(const RealDist& x, const RealDist& y, const SsdOptions& opts = {});

// CDF of X_{i:n} under parent d: x -> I_{F_d(x)}(i, n-i+1).
std::function<double(double)> order_stat_cdf(const ParametricDistribution& d,
                                             const OrderStatSpec& s);

struct DivergentMeanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Whether E X_{i:n} is finite, from the family's tail behaviour.
bool order_stat_mean_exists(const ParametricDistribution& d, const OrderStatSpec& s);

// E X_{i:n} by quadrature in probability space:
// integral over p of quantile(p) * beta_pdf(p, i, n-i+1).
double order_stat_mean(const ParametricDistribution& d, const OrderStatSpec& s,
                       const Accuracy& acc = {1e-12, 1e-9});

// E X_{k:k}. Closed form for dagum and loglogistic parents; quadrature for
// the rest. Throws DivergentMeanError when the mean is infinite.
double maxima_mean(const ParametricDistribution& d, int k);

// Fractional dominance degree: the largest h with E(X_{h:h}) >= E(Y_{h:h}),
// valid under the single-crossing precondition. fsd is set when F_X <= F_Y
// everywhere probed (every h holds).
struct DominanceDegree {
    bool fsd = false;
    int k = 0;                // meaningful when !fsd
    int certified_up_to = 0;  // largest h actually verified
    bool exhausted = false;   // scan hit k_max with every h holding

    bool at_least(int i) const { return fsd || k >= i; }
};

struct DegreeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

DominanceDegree dominance_degree(const ParametricDistribution& x,
                                 const ParametricDistribution& y, int k_max);

}  // namespace stochdom

#endif
