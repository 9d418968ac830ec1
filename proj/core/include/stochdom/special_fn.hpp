#ifndef STOCHDOM_SPECIAL_FN_HPP
#define STOCHDOM_SPECIAL_FN_HPP

#include <stdexcept>

namespace stochdom {

// Absolute/relative tolerance pair used by the numerical routines.
struct Accuracy {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;

    void validate() const {
        if (abs_tol <= 0.0 || rel_tol <= 0.0)
            throw std::invalid_argument("Accuracy: tolerances must be positive");
    }
};

// ln Gamma(x) for x > 0. Accurate to ~1e-14 relative over the whole range.
double log_gamma(double x);

// Gamma(x) with sign, defined for positive x and negative non-integer x
// (via the reflection formula). Needed for factors like Gamma(-1/3) in
// heavy-tail maxima means.
double gamma_signed(double x);

// Digamma psi(x) for x > 0; absolute error well under 1e-10.
double digamma(double x);

// Sum of 1/k for k in [lo, hi], accumulated smallest-term-first.
double harmonic_tail(long lo, long hi);

// Density and regularized CDF of beta(a, b). beta_pdf returns +infinity at
// an endpoint when the density diverges there (a < 1 at x = 0, b < 1 at
// x = 1). beta_cdf is the regularized incomplete beta I_x(a, b).
double beta_pdf(double x, double a, double b);
double beta_cdf(double x, double a, double b);

// Inverse of beta_cdf in x: returns x with I_x(a, b) = p.
double beta_quantile(double p, double a, double b);

}  // namespace stochdom

#endif
