#ifndef STOCHDOM_REFERENCE_MODELS_HPP
#define STOCHDOM_REFERENCE_MODELS_HPP

#include <stdexcept>
#include <string>

namespace stochdom {

// The four reference distributions H used throughout: their CDFs and
// quantile functions H^{-1}.
//
//   uniform      H(x) = x on [0,1]          H^{-1}(p) = p
//   logit        H(x) = 1/(1+e^{-x})        H^{-1}(p) = log(p/(1-p))
//   exponential  H(x) = 1-e^{-x}            H^{-1}(p) = -log(1-p)
//   odds         H(x) = x/(1+x)             H^{-1}(p) = p/(1-p)
//
// uniform, exponential and odds satisfy H^{-1}(0) = H(0) = 0; logit does
// not (its quantile diverges at 0), which is why the convexity test only
// accepts the other three.
enum class TransformKind { uniform, logit, exponential, odds };

struct ReferenceTransform {
    TransformKind kind = TransformKind::uniform;

    double cdf(double x) const;
    double quantile(double p) const;  // p in (0,1); endpoints give limits
    bool quantile_vanishes_at_zero() const { return kind != TransformKind::logit; }

    static ReferenceTransform make(TransformKind k) { return ReferenceTransform{k}; }
};

const char* to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& name);

// Identifies the order statistic X_{rank:size}; equivalently the lifetime
// of a (size-rank+1)-out-of-size system.
struct OrderStatSpec {
    int rank = 1;
    int size = 1;

    OrderStatSpec() = default;
    OrderStatSpec(int i, int n) : rank(i), size(n) {
        if (n < 1 || i < 1 || i > n)
            throw std::invalid_argument("OrderStatSpec: need 1 <= rank <= size");
    }
};

// E(H^{-1} o B) where B ~ beta(i, n-i+1). Closed forms:
//   uniform      i/(n+1)
//   logit        psi(i) - psi(n-i+1)
//   exponential  sum_{k=n-i+1}^{n} 1/k
//   odds         i/(n-i), +infinity when i = n
double expected_transformed_beta(const ReferenceTransform& t, const OrderStatSpec& s);

// Crossing structure of two beta densities f_{B1}, f_{B2} with
// B1 ~ beta(a1,b1), B2 ~ beta(a2,b2). The analytic flags come from the
// parameter conditions; grid_consistent reports whether a dense sign scan
// of f_{B1}-f_{B2} agrees with the two-sign-changes claim.
struct BetaRatioReport {
    bool ratio_monotone_increasing = false;
    bool density_sign_changes_le_2_starting_minus = false;
    bool grid_consistent = true;
    std::string grid_pattern;  // e.g. "-+" or "-+-"
};

BetaRatioReport beta_ratio_crossings(double a1, double b1, double a2, double b2,
                                     int grid_points = 10000);

}  // namespace stochdom

#endif
