#include "stochdom/reference_models.hpp"

#include <cmath>
#include <limits>

#include "stochdom/special_fn.hpp"

namespace stochdom {

double ReferenceTransform::cdf(double x) const {
    switch (kind) {
        case TransformKind::uniform:
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return x;
        case TransformKind::logit:
            return 1.0 / (1.0 + std::exp(-x));
        case TransformKind::exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-x);
        case TransformKind::odds:
            return x <= 0.0 ? 0.0 : x / (1.0 + x);
    }
    return 0.0;
}

double ReferenceTransform::quantile(double p) const {
    if (!(p >= 0.0) || !(p <= 1.0))
        throw std::domain_error("ReferenceTransform::quantile: p outside [0,1]");
    switch (kind) {
        case TransformKind::uniform:
            return p;
        case TransformKind::logit:
            if (p == 0.0) return -std::numeric_limits<double>::infinity();
            if (p == 1.0) return std::numeric_limits<double>::infinity();
            return std::log(p / (1.0 - p));
        case TransformKind::exponential:
            if (p == 1.0) return std::numeric_limits<double>::infinity();
            return -std::log1p(-p);
        case TransformKind::odds:
            if (p == 1.0) return std::numeric_limits<double>::infinity();
            return p / (1.0 - p);
    }
    return 0.0;
}

const char* to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::uniform: return "uniform";
        case TransformKind::logit: return "logit";
        case TransformKind::exponential: return "exponential";
        case TransformKind::odds: return "odds";
    }
    return "?";
}

TransformKind transform_kind_from_string(const std::string& name) {
    if (name == "uniform") return TransformKind::uniform;
    if (name == "logit") return TransformKind::logit;
    if (name == "exponential") return TransformKind::exponential;
    if (name == "odds") return TransformKind::odds;
    throw std::invalid_argument("unknown transform kind: " + name);
}

double expected_transformed_beta(const ReferenceTransform& t, const OrderStatSpec& s) {
    const double i = s.rank;
    const double n = s.size;
    switch (t.kind) {
        case TransformKind::uniform:
            return i / (n + 1.0);
        case TransformKind::logit:
            return digamma(i) - digamma(n - i + 1.0);
        case TransformKind::exponential:
            return harmonic_tail(s.size - s.rank + 1, s.size);
        case TransformKind::odds:
            if (s.rank == s.size) return std::numeric_limits<double>::infinity();
            return i / (n - i);
    }
    return 0.0;
}

BetaRatioReport beta_ratio_crossings(double a1, double b1, double a2, double b2,
                                     int grid_points) {
    if (!(a1 > 0.0) || !(b1 > 0.0) || !(a2 > 0.0) || !(b2 > 0.0))
        throw std::domain_error("beta_ratio_crossings: parameters must be positive");

    BetaRatioReport report;
    report.ratio_monotone_increasing = (a1 >= a2 && b1 <= b2);
    report.density_sign_changes_le_2_starting_minus = (a1 >= a2);

    // Sign pattern of f_{B1} - f_{B2} on an interior grid (zeros omitted).
    std::string pattern;
    for (int k = 1; k < grid_points; ++k) {
        const double x = static_cast<double>(k) / grid_points;
        const double d = beta_pdf(x, a1, b1) - beta_pdf(x, a2, b2);
        if (std::fabs(d) <= 1e-12) continue;
        const char sign = d < 0.0 ? '-' : '+';
        if (pattern.empty() || pattern.back() != sign) pattern.push_back(sign);
    }
    report.grid_pattern = pattern;
    if (report.density_sign_changes_le_2_starting_minus) {
        const bool le2_starting_minus =
            pattern.empty() || pattern == "-" || pattern == "-+" || pattern == "-+-";
        report.grid_consistent = le2_starting_minus;
    }
    return report;
}

}  // namespace stochdom
