#include "stochdom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace stochdom {

namespace {

// G7,K15 nodes/weights on [-1, 1].
const double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898,  0.000000000000000,  0.207784955007898,
     0.405845151377397,  0.586087235467691,  0.741531185599394,
     0.864864423359769,  0.949107912342759,  0.991455371120813};

const double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};

const double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Panel {
    double a, b;
    double integral;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 15; ++i) {
        fv[i] = f(c + h * kKronrodNodes[i]);
        if (!std::isfinite(fv[i])) fv[i] = 0.0;  // endpoint-singular integrand guard
    }
    evals += 15;
    double kron = 0.0;
    for (int i = 0; i < 15; ++i) kron += kKronrodWeights[i] * fv[i];
    double gauss = 0.0;
    for (int i = 0; i < 7; ++i) gauss += kGaussWeights[i] * fv[2 * i + 1];
    kron *= h;
    gauss *= h;
    const double diff = std::fabs(kron - gauss);
    const double scale = std::fabs(kron) + 1e-300;
    // QUADPACK-style sharpened estimate.
    const double err = diff * std::min(1.0, std::pow(200.0 * diff / scale, 1.5));
    return {a, b, kron, std::max(err, diff * 1e-6)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Accuracy& acc, int max_depth) {
    acc.validate();
    QuadResult out;
    if (a == b) return out;

    // Globally adaptive: keep splitting the worst panel until the summed
    // error estimate meets the tolerance. Splitting a panel stops once its
    // midpoint is no longer representable between the endpoints, so
    // endpoint singularities are chased down to machine resolution.
    const long max_panels = 1L << std::min(max_depth, 15);

    std::priority_queue<Panel> panels;
    std::vector<Panel> frozen;  // panels that cannot be split further
    panels.push(gk15(f, a, b, out.evaluations));
    double total = panels.top().integral;
    double total_err = panels.top().error;

    auto tolerance = [&] {
        return std::max(acc.abs_tol, acc.rel_tol * std::fabs(total));
    };

    long n_panels = 1;
    while (total_err > tolerance() && n_panels < max_panels && !panels.empty()) {
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a) || !(mid < worst.b)) {
            frozen.push_back(worst);
            continue;
        }
        const Panel left = gk15(f, worst.a, mid, out.evaluations);
        const Panel right = gk15(f, mid, worst.b, out.evaluations);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++n_panels;
    }

    // Recompute the totals from scratch to shed accumulated cancellation.
    total = 0.0;
    total_err = 0.0;
    for (const Panel& p : frozen) {
        total += p.integral;
        total_err += p.error;
    }
    while (!panels.empty()) {
        total += panels.top().integral;
        total_err += panels.top().error;
        panels.pop();
    }
    out.value = total;
    out.error = total_err;
    out.converged = total_err <= tolerance();
    return out;
}

}  // namespace stochdom
