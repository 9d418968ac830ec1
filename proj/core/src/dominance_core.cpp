#include "stochdom/dominance_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stochdom/quadrature.hpp"

namespace stochdom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Sign sign_of(double v, double zero_tol) {
    if (std::fabs(v) <= zero_tol) return Sign::none;
    return v < 0.0 ? Sign::minus : Sign::plus;
}

// Locate a sign change of f inside [a, b] by bisection, to near machine
// precision relative to the crossing location.
double bisect_crossing(const std::function<double(double)>& f, double a, double b,
                       double fa, bool& converged) {
    converged = false;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (b - a <= 1e-12 + 1e-12 * std::fabs(m)) {
            converged = true;
            return m;
        }
        const double fm = f(m);
        if (fm == 0.0) {
            converged = true;
            return m;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    converged = true;  // 200 halvings exhaust double precision
    return 0.5 * (a + b);
}

}  // namespace

CrossingReport sign_changes_on_grid(const std::function<double(double)>& f,
                                    std::span<const double> grid, double zero_tol) {
    CrossingReport report;
    if (grid.size() < 2) return report;
    double prev_x = 0.0;
    Sign prev = Sign::none;
    for (double x : grid) {
        const Sign s = sign_of(f(x), zero_tol);
        if (s == Sign::none) continue;
        if (report.first_sign == Sign::none) report.first_sign = s;
        if (prev != Sign::none && s != prev) {
            ++report.count;
            bool ok = true;
            const double loc =
                bisect_crossing(f, prev_x, x, prev == Sign::minus ? -1.0 : 1.0, ok);
            if (!ok) report.unreliable = true;
            report.locations.push_back(loc);
        }
        prev = s;
        prev_x = x;
    }
    return report;
}

CrossingReport sign_changes(const std::function<double(double)>& f, double lo,
                            double hi, int grid_size, double zero_tol) {
    if (grid_size < 64) throw std::invalid_argument("sign_changes: grid_size < 64");
    if (!(lo < hi)) throw std::invalid_argument("sign_changes: empty interval");
    std::vector<double> grid(static_cast<std::size_t>(grid_size));
    for (int k = 0; k < grid_size; ++k)
        grid[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (grid_size - 1.0);
    return sign_changes_on_grid(f, grid, zero_tol);
}

RealDist to_real_dist(const ParametricDistribution& d) {
    return RealDist{[d](double x) { return d.cdf(x); },
                    [d](double p) { return d.quantile(p); }, std::nullopt};
}

RealDist order_stat_dist(const ParametricDistribution& d, const OrderStatSpec& s) {
    const double a = s.rank;
    const double b = s.size - s.rank + 1;
    RealDist out;
    out.cdf = [d, a, b](double x) { return beta_cdf(d.cdf(x), a, b); };
    out.quantile = [d, a, b](double p) { return d.quantile(beta_quantile(p, a, b)); };
    if (order_stat_mean_exists(d, s)) out.mean = order_stat_mean(d, s);
    return out;
}

std::vector<double> probe_grid(const RealDist& x, const RealDist& y, int points,
                               double eps) {
    if (points < 16) throw std::invalid_argument("probe_grid: too few points");
    const int per = points / 2;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points) + 2);
    for (int k = 0; k < per; ++k) {
        const double p = eps + (1.0 - 2.0 * eps) * (k + 0.5) / per;
        grid.push_back(x.quantile(p));
        grid.push_back(y.quantile(p));
    }
    grid.push_back(std::min(x.quantile(eps), y.quantile(eps)));
    grid.push_back(std::max(x.quantile(1.0 - eps), y.quantile(1.0 - eps)));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

CrossingReport cdf_sign_changes(const RealDist& x, const RealDist& y, int grid_size) {
    const std::vector<double> grid = probe_grid(x, y, grid_size);
    auto diff = [&](double t) { return x.cdf(t) - y.cdf(t); };
    return sign_changes_on_grid(diff, grid);
}

SsdResult ssd_numeric(const RealDist& x, const RealDist& y, const SsdOptions& opts) {
    SsdResult res;

    double scale = 1.0;
    if (x.mean) scale = std::max(scale, std::fabs(*x.mean));
    if (y.mean) scale = std::max(scale, std::fabs(*y.mean));
    res.tolerance = opts.tol_factor * scale;

    auto diff = [&](double t) { return x.cdf(t) - y.cdf(t); };

    // Checkpoints: mass-spaced grid plus refined CDF crossings (the local
    // extrema of the integrated difference).
    std::vector<double> checkpoints = probe_grid(x, y, opts.grid_size, opts.eps);
    {
        const CrossingReport crossings = sign_changes_on_grid(diff, checkpoints);
        if (crossings.unreliable) res.integration_ok = false;
        checkpoints.insert(checkpoints.end(), crossings.locations.begin(),
                           crossings.locations.end());
        std::sort(checkpoints.begin(), checkpoints.end());
        checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                          checkpoints.end());
    }

    const Accuracy seg_acc{std::max(1e-14, res.tolerance * 1e-3 /
                                               static_cast<double>(checkpoints.size())),
                           1e-10};
    double integral = 0.0;
    res.worst_x = checkpoints.front();
    res.worst_gap = 0.0;
    for (std::size_t k = 0; k + 1 < checkpoints.size(); ++k) {
        const QuadResult q =
            integrate(diff, checkpoints[k], checkpoints[k + 1], seg_acc, 24);
        if (!q.converged) res.integration_ok = false;
        integral += q.value;
        if (integral > res.worst_gap) {
            res.worst_gap = integral;
            res.worst_x = checkpoints[k + 1];
        }
    }

    // Tail: integral(F_X - F_Y) tends to E(Y) - E(X).
    if (x.mean && y.mean) {
        res.tail_checked = true;
        const double at_infinity = *y.mean - *x.mean;
        if (at_infinity > res.worst_gap) {
            res.worst_gap = at_infinity;
            res.worst_x = kInf;
        }
    }

    if (res.worst_gap > res.tolerance)
        res.verdict = SsdOutcome::fails;
    else if (res.tail_checked && res.integration_ok)
        res.verdict = SsdOutcome::holds;
    else
        res.verdict = SsdOutcome::inconclusive;
    return res;
}

std::function<double(double)> order_stat_cdf(const ParametricDistribution& d,
                                             const OrderStatSpec& s) {
    const double a = s.rank;
    const double b = s.size - s.rank + 1;
    return [d, a, b](double x) { return beta_cdf(d.cdf(x), a, b); };
}

bool order_stat_mean_exists(const ParametricDistribution& d, const OrderStatSpec& s) {
    const int lower_count = s.rank;              // draws below in the lower tail
    const int upper_count = s.size - s.rank + 1; // draws above in the upper tail
    switch (d.family()) {
        case Family::cauchy:
            // Both tails decay like 1/x.
            return lower_count >= 2 && upper_count >= 2;
        case Family::log_logistic:
        case Family::pareto:
        case Family::dagum:
            // Upper tail index a; lower tail is bounded or polynomially thin.
            return d.param("a") * upper_count > 1.0;
        default:
            return true;  // exponential-type or bounded tails
    }
}

double order_stat_mean(const ParametricDistribution& d, const OrderStatSpec& s,
                       const Accuracy& acc) {
    if (!order_stat_mean_exists(d, s))
        throw DivergentMeanError("order_stat_mean: E X_{" + std::to_string(s.rank) +
                                 ":" + std::to_string(s.size) + "} diverges for " +
                                 d.to_spec_string());
    const double a = s.rank;
    const double b = s.size - s.rank + 1;
    // Split at the median of the beta weight and integrate the upper half
    // in the complement variable, where beta_pdf(1-q, a, b) =
    // beta_pdf(q, b, a) exactly and the parent quantile is evaluated
    // through its complement form. This keeps the heavy-tail singularity
    // at a representable endpoint.
    auto lower = [&](double p) {
        if (p <= 0.0) return 0.0;
        return d.quantile(p) * beta_pdf(p, a, b);
    };
    auto upper = [&](double q) {
        if (q <= 0.0) return 0.0;
        return d.quantile_complement(q) * beta_pdf(q, b, a);
    };
    const Accuracy half{0.5 * acc.abs_tol, 0.5 * acc.rel_tol};
    const QuadResult lo = integrate(lower, 0.0, 0.5, half, 30);
    const QuadResult hi = integrate(upper, 0.0, 0.5, half, 30);
    if (!lo.converged || !hi.converged)
        throw DivergentMeanError("order_stat_mean: quadrature failed to converge for " +
                                 d.to_spec_string());
    return lo.value + hi.value;
}

namespace {

// E X_{k:k} closed forms.
//
// Dagum(a, p, b): maxima are Dagum(a, k p, b), whose mean is
//   b * Gamma(1 - 1/a) * Gamma(k p + 1/a) / Gamma(k p),   a > 1.
// Log-logistic(a, b):
//   b * k * Gamma(1 - 1/a) * Gamma(1/a + k) / Gamma(1 + k),   a > 1.
std::optional<double> maxima_mean_closed_form(const ParametricDistribution& d, int k) {
    switch (d.family()) {
        case Family::dagum: {
            const double a = d.param("a");
            if (a <= 1.0)
                throw DivergentMeanError("maxima_mean: dagum shape a <= 1");
            const double kp = k * d.param("p");
            const double inv_a = 1.0 / a;
            return d.param("b") * std::exp(log_gamma(1.0 - inv_a) +
                                           log_gamma(kp + inv_a) - log_gamma(kp));
        }
        case Family::log_logistic: {
            const double a = d.param("a");
            if (a <= 1.0)
                throw DivergentMeanError("maxima_mean: loglogistic shape a <= 1");
            const double inv_a = 1.0 / a;
            return d.param("b") * k *
                   std::exp(log_gamma(1.0 - inv_a) + log_gamma(inv_a + k) -
                            log_gamma(1.0 + k));
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

double maxima_mean(const ParametricDistribution& d, int k) {
    if (k < 1) throw std::invalid_argument("maxima_mean: need k >= 1");
    if (auto closed = maxima_mean_closed_form(d, k)) return *closed;
    return order_stat_mean(d, OrderStatSpec(k, k));
}

DominanceDegree dominance_degree(const ParametricDistribution& x,
                                 const ParametricDistribution& y, int k_max) {
    if (k_max < 1) throw std::invalid_argument("dominance_degree: need k_max >= 1");

    const CrossingReport crossings = cdf_sign_changes(to_real_dist(x), to_real_dist(y));
    if (crossings.count == 0) {
        // No crossing: identical CDFs or pointwise domination one way.
        if (crossings.first_sign == Sign::plus)
            throw DegreeError("dominance_degree: F_X >= F_Y everywhere probed; "
                              "X cannot dominate Y");
        DominanceDegree deg;
        deg.fsd = true;
        deg.certified_up_to = k_max;
        return deg;
    }
    if (crossings.count > 1 || crossings.first_sign != Sign::minus)
        throw DegreeError("dominance_degree: CDF difference is not single-crossing "
                          "with initial minus sign");

    DominanceDegree deg;
    for (int h = 1; h <= k_max; ++h) {
        const double ex = maxima_mean(x, h);
        const double ey = maxima_mean(y, h);
        if (ex >= ey) {
            deg.k = h;
            deg.certified_up_to = h;
        } else {
            if (h == 1)
                throw DegreeError("dominance_degree: E(X) < E(Y); no dominance of any "
                                  "degree");
            return deg;
        }
    }
    deg.exhausted = true;
    return deg;
}

}  // namespace stochdom
