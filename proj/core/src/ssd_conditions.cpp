#include "stochdom/ssd_conditions.hpp"

#include <cmath>
#include <cstdint>

#include "stochdom/special_fn.hpp"

namespace stochdom {

namespace {

TransformKind transform_for(ConvexityClass c) {
    switch (c) {
        case ConvexityClass::C: return TransformKind::uniform;
        case ConvexityClass::CL: return TransformKind::logit;
        case ConvexityClass::IFR: return TransformKind::exponential;
        case ConvexityClass::CO: return TransformKind::odds;
    }
    return TransformKind::uniform;
}

bool condition_holds(ConvexityClass c, const OrderStatSpec& si, const OrderStatSpec& sj) {
    const std::int64_t i = si.rank, n = si.size;
    const std::int64_t j = sj.rank, m = sj.size;
    switch (c) {
        case ConvexityClass::C:
            // i/(n+1) >= j/(m+1), exactly.
            return i * (m + 1) >= j * (n + 1);
        case ConvexityClass::CO:
            // i/n >= j/m, exactly; covers the odds expectation comparison
            // including the i = n infinity convention.
            return i * m >= j * n;
        case ConvexityClass::CL:
        case ConvexityClass::IFR: {
            const ReferenceTransform t = ReferenceTransform::make(transform_for(c));
            return expected_transformed_beta(t, si) >= expected_transformed_beta(t, sj);
        }
    }
    return false;
}

}  // namespace

DominanceVerdict corollary1(ConvexityClass c, const OrderStatSpec& si,
                            const OrderStatSpec& sj) {
    DominanceVerdict v;
    v.condition_checked = c;
    v.rank_ok = si.rank >= sj.rank;
    const ReferenceTransform t = ReferenceTransform::make(transform_for(c));
    v.lhs = expected_transformed_beta(t, si);
    v.rhs = expected_transformed_beta(t, sj);
    v.certified = v.rank_ok && condition_holds(c, si, sj);
    v.condition_used = v.certified;
    return v;
}

DominanceVerdict corollary2(ConvexityClass class_of_y, const DominanceDegree& degree,
                            const OrderStatSpec& si, const OrderStatSpec& sj) {
    DominanceVerdict v = corollary1(class_of_y, si, sj);
    v.degree_ok = degree.at_least(si.rank);
    v.certified = v.certified && v.degree_ok;
    v.condition_used = v.certified;
    return v;
}

std::optional<int> min_rank(ConvexityClass c, int n, const OrderStatSpec& sj,
                            std::vector<MinRankStep>* trace) {
    for (int i = sj.rank; i <= n; ++i) {
        const bool certified = corollary1(c, OrderStatSpec(i, n), sj).certified;
        if (trace) trace->push_back({i, certified});
        if (certified) return i;
    }
    return std::nullopt;
}

ParamRangeResult param_range_search(const ParamRangeRequest& request,
                                    const ParametricDistribution& y,
                                    const OrderStatSpec& si, const OrderStatSpec& sj,
                                    ConvexityClass class_of_y) {
    if (!(request.lo < request.hi))
        throw std::invalid_argument("param_range_search: need lo < hi");
    if (request.scan_points < 2)
        throw std::invalid_argument("param_range_search: need scan_points >= 2");

    ParamRangeResult result;

    // The rank/class part of the certificate does not depend on the free
    // parameter; bail out early if it can never hold.
    if (!corollary1(class_of_y, si, sj).certified) {
        result.note = "class condition on (i,n,j,m) fails; no parameter can certify";
        return result;
    }

    auto candidate = [&](double value) {
        std::map<std::string, double> params = request.fixed;
        params[request.free_name] = value;
        return ParametricDistribution::make(request.family, params);
    };

    auto certified = [&](double value) {
        ++result.predicate_evaluations;
        try {
            const DominanceDegree deg = dominance_degree(candidate(value), y, si.rank);
            return deg.fsd || deg.exhausted;  // every h <= i verified
        } catch (const DegreeError&) {
            return false;  // crossing precondition violated, or no dominance
        } catch (const DivergentMeanError&) {
            return false;
        }
    };

    // Coarse scan, then bisection to the requested resolution on each edge
    // of the certified stretch.
    const int points = request.scan_points;
    std::vector<double> grid(static_cast<std::size_t>(points));
    std::vector<char> ok(static_cast<std::size_t>(points));
    int first = -1, last = -1;
    for (int k = 0; k < points; ++k) {
        grid[static_cast<std::size_t>(k)] =
            request.lo + (request.hi - request.lo) * k / (points - 1.0);
        ok[static_cast<std::size_t>(k)] = certified(grid[static_cast<std::size_t>(k)]) ? 1 : 0;
        result.scan.push_back({grid[static_cast<std::size_t>(k)],
                               ok[static_cast<std::size_t>(k)] != 0});
        if (ok[static_cast<std::size_t>(k)]) {
            if (first < 0) first = k;
            last = k;
        }
    }
    if (first < 0) {
        result.note = "no certified parameter value in bounds";
        return result;
    }
    for (int k = first; k <= last; ++k) {
        if (!ok[static_cast<std::size_t>(k)]) {
            result.note = "certified set not contiguous on scan grid; returning the "
                          "component containing the first certified point";
            last = k - 1;
            break;
        }
    }

    double lo = grid[static_cast<std::size_t>(first)];
    if (first > 0) {
        double bad = grid[static_cast<std::size_t>(first - 1)];
        while (lo - bad > request.resolution) {
            const double mid = 0.5 * (lo + bad);
            (certified(mid) ? lo : bad) = mid;
        }
    }
    double hi = grid[static_cast<std::size_t>(last)];
    if (last + 1 < points) {
        double bad = grid[static_cast<std::size_t>(last + 1)];
        while (bad - hi > request.resolution) {
            const double mid = 0.5 * (hi + bad);
            (certified(mid) ? hi : bad) = mid;
        }
    }

    result.found = true;
    result.lo = lo;
    result.hi = hi;
    return result;
}

}  // namespace stochdom
