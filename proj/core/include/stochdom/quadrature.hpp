#ifndef STOCHDOM_QUADRATURE_HPP
#define STOCHDOM_QUADRATURE_HPP

#include <functional>

#include "stochdom/special_fn.hpp"

namespace stochdom {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // accumulated error estimate
    bool converged = true;
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b]. Kronrod
// nodes are strictly interior, so integrable endpoint singularities are
// never evaluated directly.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Accuracy& acc = {}, int max_depth = 48);

}  // namespace stochdom

#endif
