#ifndef STOCHDOM_SSD_CONDITIONS_HPP
#define STOCHDOM_SSD_CONDITIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stochdom/distribution_catalog.hpp"
#include "stochdom/dominance_core.hpp"
#include "stochdom/reference_models.hpp"

namespace stochdom {

// Outcome of one sufficient-condition check. These conditions are one
// sided: certified == false means "not decidable by this condition",
// never "dominance fails". lhs/rhs are the two sides of the inequality
// actually compared, kept for explainable output.
struct DominanceVerdict {
    bool certified = false;
    ConvexityClass condition_checked = ConvexityClass::CO;
    bool condition_used = false;  // certified through condition_checked
    double lhs = 0.0;
    double rhs = 0.0;
    bool rank_ok = false;         // i >= j
    bool degree_ok = true;        // two-sample only: i <= degree k (or FSD)
};

// One-sample rule: with parent in the given class, X_{i:n} >=_2 X_{j:m}
// whenever i >= j and the class inequality holds:
//   C    i/(n+1) >= j/(m+1)
//   CL   psi(i)-psi(n-i+1) >= psi(j)-psi(m-j+1)
//   IFR  sum_{k=n-i+1}^n 1/k >= sum_{k=m-j+1}^m 1/k
//   CO   i/n >= j/m
// C and CO are decided in exact integer arithmetic to avoid
// floating-point ties at the boundary.
DominanceVerdict corollary1(ConvexityClass c, const OrderStatSpec& si,
                            const OrderStatSpec& sj);

// Two-sample rule: X_{i:n} >=_2 Y_{j:m} when additionally X dominates Y at
// fractional degree 1+1/k with k >= i (FSD counts as every degree).
DominanceVerdict corollary2(ConvexityClass class_of_y, const DominanceDegree& degree,
                            const OrderStatSpec& si, const OrderStatSpec& sj);

// Smallest rank i in [j, n] whose one-sample verdict certifies, if any.
// The scanned predicate is monotone in i; the optional trace records each
// (i, certified) step.
struct MinRankStep {
    int i;
    bool certified;
};
std::optional<int> min_rank(ConvexityClass c, int n, const OrderStatSpec& sj,
                            std::vector<MinRankStep>* trace = nullptr);

// Search over one free parameter of a family template for the interval
// where X_{i:n} >=_2 Y_{j:m} is certified through corollary2. For each
// candidate, the single-crossing precondition of dominance_degree must
// hold; candidates violating it simply fail the predicate.
struct ParamRangeRequest {
    Family family = Family::log_logistic;
    std::map<std::string, double> fixed;
    std::string free_name = "a";
    double lo = 0.0;
    double hi = 1.0;
    double resolution = 1e-3;
    int scan_points = 64;
};

struct ParamRangeScanStep {
    double value;
    bool certified;
};

struct ParamRangeResult {
    bool found = false;
    double lo = 0.0;
    double hi = 0.0;
    long predicate_evaluations = 0;
    std::vector<ParamRangeScanStep> scan;  // coarse-grid trace
    std::string note;
};

ParamRangeResult param_range_search(const ParamRangeRequest& request,
                                    const ParametricDistribution& y,
                                    const OrderStatSpec& si, const OrderStatSpec& sj,
                                    ConvexityClass class_of_y);

}  // namespace stochdom

#endif
