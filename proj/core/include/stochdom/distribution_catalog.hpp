#ifndef STOCHDOM_DISTRIBUTION_CATALOG_HPP
#define STOCHDOM_DISTRIBUTION_CATALOG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stochdom {

enum class Family {
    uniform,
    power_function,
    logistic,
    gumbel,
    exponential,
    normal,
    beta,
    gamma,
    weibull,
    cauchy,
    lognormal,
    log_logistic,
    pareto,
    dagum,
};

// Shape classes ordered by how much they assume about the parent:
//   C    convex CDF (increasing density, bounded support)
//   CL   convex log-odds
//   IFR  convex cumulative hazard (increasing failure rate)
//   CO   convex odds F/(1-F), the widest class
enum class ConvexityClass { C, CL, IFR, CO };

const char* to_string(Family f);
const char* to_string(ConvexityClass c);
ConvexityClass convexity_class_from_string(const std::string& name);

// Error raised by the distribution-spec parser; position is the byte
// offset into the spec string where parsing failed.
struct SpecParseError : std::runtime_error {
    SpecParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg), position(pos) {}
    std::size_t position;
};

// An immutable parametric distribution from the catalog. All families have
// closed-form or numerically inverted quantile functions, so sampling is
// done by inverse transform.
class ParametricDistribution {
  public:
    static ParametricDistribution make(Family family,
                                       const std::map<std::string, double>& params);

    // Parses the CLI spec grammar: family(name=value,...), e.g.
    // "gamma(a=2,b=1)" or "dagum(a=3,p=2,b=3)".
    static ParametricDistribution parse(std::string_view spec);

    double cdf(double x) const;
    double pdf(double x) const;
    double quantile(double p) const;  // p in (0,1)

    // Q(1-q) evaluated from the complement q directly, so the upper tail
    // stays accurate when 1-q is not representable. Exact for the
    // heavy-tailed families; light-tailed families fall back to
    // quantile(1-q) with q floored at 1e-12.
    double quantile_complement(double q) const;

    // Support endpoints (may be infinite).
    std::pair<double, double> support() const;

    // n i.i.d. draws by inverse transform, sorted ascending. Deterministic
    // in (n, seed) across platforms.
    std::vector<double> sample(int n, std::uint64_t seed) const;

    Family family() const { return family_; }
    double param(std::string_view name) const;
    const std::map<std::string, double>& params() const { return params_; }
    std::string to_spec_string() const;

  private:
    ParametricDistribution(Family f, std::map<std::string, double> p)
        : family_(f), params_(std::move(p)) {}

    Family family_;
    std::map<std::string, double> params_;
};

// Catalog answer for "is F in this class". `member` evaluates any
// parameter condition at the distribution's parameters; `condition` is the
// condition text (empty for unconditional rows). Families outside the
// catalog's class table (dagum) report non-membership with a note.
struct MembershipVerdict {
    bool member = false;
    std::string condition;
};

MembershipVerdict class_membership(const ParametricDistribution& d, ConvexityClass c);

// Independent numerical check: nondecreasing difference quotients of
// H^{-1} o F on a quantile-spaced grid. Used to surface disagreements with
// the catalog table instead of silently overriding it.
bool numeric_convexity_check(const ParametricDistribution& d, ConvexityClass c,
                             int grid_points = 200);

}  // namespace stochdom

#endif
