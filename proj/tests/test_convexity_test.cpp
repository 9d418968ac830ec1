#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <random>

#include "stochdom/convexity_test.hpp"
#include "stochdom/rng.hpp"
#include "support/oracles.hpp"

using namespace stochdom;

namespace {

std::filesystem::path temp_dir(const char* tag) {
    auto dir = std::filesystem::temp_directory_path() /
               (std::string("stochdom_test_") + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::vector<double> random_sample(std::mt19937_64& gen, int n) {
    // mixture of shapes so hull structure varies
    const ReferenceTransform odds = ReferenceTransform::make(TransformKind::odds);
    std::vector<double> out(static_cast<std::size_t>(n));
    const int mode = static_cast<int>(gen() % 3);
    for (double& v : out) {
        const double u = uniform01(gen);
        if (mode == 0)
            v = odds.quantile(u);
        else if (mode == 1)
            v = u * u;
        else
            v = std::exp(2.0 * u) - 1.0 + 0.001 * u;
    }
    return out;
}

}  // namespace

TEST_CASE("TransformedEmpirical validates and jitters its input") {
    CHECK_THROWS_AS(TransformedEmpirical::from_sample({1.0, 2.0}, TransformKind::odds),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        TransformedEmpirical::from_sample({1.0, 1.0, 1.0, 1.0}, TransformKind::odds),
        std::invalid_argument);
    CHECK_THROWS_AS(
        TransformedEmpirical::from_sample({1.0, 2.0, 3.0}, TransformKind::logit),
        std::invalid_argument);

    const auto te =
        TransformedEmpirical::from_sample({3.0, 1.0, 2.0, 2.0}, TransformKind::odds);
    CHECK(te.jittered);
    CHECK(te.n() == 4);
    for (int j = 2; j <= te.n(); ++j)
        CHECK(te.x[static_cast<std::size_t>(j) - 1] > te.x[static_cast<std::size_t>(j) - 2]);
    CHECK(te.node_height(1) == 0.0);
    CHECK(te.h.size() == 3);
    CHECK(te.h[0] == doctest::Approx(0.25 / 0.75));
}

TEST_CASE("gcm of a convex configuration is the configuration itself") {
    // Sample points placed on the node diagonal: x_j = H^{-1}((j-1)/n),
    // so the nodes (x_j, h_{j-1}) are collinear and the hull touches all.
    const int n = 12;
    const ReferenceTransform odds = ReferenceTransform::make(TransformKind::odds);
    std::vector<double> sample(n);
    for (int j = 1; j <= n; ++j) sample[j - 1] = odds.quantile((j - 1.0) / n);
    const auto te = TransformedEmpirical::from_sample(sample, TransformKind::odds);
    const auto g = gcm(te);
    for (int j = 1; j <= n; ++j)
        CHECK(std::fabs(g.g[static_cast<std::size_t>(j) - 1] -
                        te.node_height(j)) <= 1e-12);
    CHECK(ks_statistic(te, g) == 0.0);
    CHECK(g.contact.size() == static_cast<std::size_t>(n));
}

TEST_CASE("three-point gcm with the middle node above the chord") {
    // nodes (0,0), (1,h_1), (100,h_2); the chord from the ends lies far
    // below the middle node.
    const auto te =
        TransformedEmpirical::from_sample({0.0, 1.0, 100.0}, TransformKind::odds);
    const auto g = gcm(te);
    const double h1 = te.h[0];
    const double h2 = te.h[1];
    const double chord = h2 * (1.0 - 0.0) / (100.0 - 0.0);
    CHECK(g.g[0] == 0.0);
    CHECK(g.g[1] == doctest::Approx(chord).epsilon(1e-12));
    CHECK(g.g[2] == doctest::Approx(h2).epsilon(1e-12));
    CHECK(ks_statistic(te, g) == doctest::Approx((h1 - chord) / h1).epsilon(1e-12));
}

TEST_CASE("hull gcm equals the brute-force min-over-lines definition") {
    std::mt19937_64 gen(42);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 3 + static_cast<int>(gen() % 38);
        const TransformKind kind =
            (gen() % 2) ? TransformKind::odds : TransformKind::exponential;
        auto te = TransformedEmpirical::from_sample(random_sample(gen, n), kind);
        const auto fast = gcm(te);
        const auto brute = test_support::gcm_brute_force(te);
        for (int j = 0; j < n; ++j) {
            CAPTURE(trial);
            CAPTURE(j);
            CHECK(std::fabs(fast.g[static_cast<std::size_t>(j)] -
                            brute[static_cast<std::size_t>(j)]) <=
                  std::max(1.0, std::fabs(brute[static_cast<std::size_t>(j)])) * 1e-12);
        }
    }
}

TEST_CASE("gcm invariants on random instances") {
    std::mt19937_64 gen(4242);
    for (int trial = 0; trial < 10'000; ++trial) {
        const int n = 3 + static_cast<int>(gen() % 58);
        const TransformKind kind = (gen() % 3) == 0 ? TransformKind::uniform
                                   : (gen() % 3) == 1 ? TransformKind::exponential
                                                      : TransformKind::odds;
        auto te = TransformedEmpirical::from_sample(random_sample(gen, n), kind);
        const auto g = gcm(te);

        // endpoints and minorant
        CHECK(g.g.front() == te.node_height(1));
        CHECK(g.g.back() == te.node_height(n));
        for (int j = 1; j <= n; ++j)
            CHECK(g.g[static_cast<std::size_t>(j) - 1] <=
                  te.node_height(j) + 1e-12 * std::max(1.0, te.node_height(j)));

        // convexity: nondecreasing difference quotients
        double prev_q = -1e308;
        for (int j = 1; j < n; ++j) {
            const double dx = te.x[static_cast<std::size_t>(j)] -
                              te.x[static_cast<std::size_t>(j) - 1];
            const double q = (g.g[static_cast<std::size_t>(j)] -
                              g.g[static_cast<std::size_t>(j) - 1]) /
                             dx;
            CHECK(q >= prev_q - 1e-9 * std::max(1.0, std::fabs(q)));
            prev_q = std::max(prev_q, q);
        }

        // weighted statistic bounds
        const double stat = ks_statistic(te, g);
        CHECK(stat >= 0.0);
        if (kind != TransformKind::uniform) CHECK(stat <= 1.0);
    }
}

TEST_CASE("gcm maximality: no node value can be raised") {
    std::mt19937_64 gen(777);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + static_cast<int>(gen() % 30);
        auto te = TransformedEmpirical::from_sample(random_sample(gen, n),
                                                    TransformKind::odds);
        const auto g = gcm(te);
        for (int j = 1; j <= n; ++j) {
            const double eps =
                1e-6 * std::max(1.0, std::fabs(g.g[static_cast<std::size_t>(j) - 1]));
            std::vector<double> raised = g.g;
            raised[static_cast<std::size_t>(j) - 1] += eps;
            // raising must break either the minorant bound at j or
            // convexity of the difference quotients around j
            bool violates = raised[static_cast<std::size_t>(j) - 1] >
                            te.node_height(j) + 1e-12 * std::max(1.0, te.node_height(j));
            if (!violates) {
                double prev_q = -1e308;
                for (int k = 1; k < n && !violates; ++k) {
                    const double dx = te.x[static_cast<std::size_t>(k)] -
                                      te.x[static_cast<std::size_t>(k) - 1];
                    const double q = (raised[static_cast<std::size_t>(k)] -
                                      raised[static_cast<std::size_t>(k) - 1]) /
                                     dx;
                    if (q < prev_q - 1e-12 * std::max(1.0, std::fabs(q))) violates = true;
                    prev_q = q;
                }
            }
            CHECK(violates);
        }
    }
}

TEST_CASE("null distribution determinism and structure") {
    const auto a = null_distribution(TransformKind::odds, 12, 600, 2024, 1);
    const auto b = null_distribution(TransformKind::odds, 12, 600, 2024, 3);
    CHECK(a.stats == b.stats);  // worker count cannot change the result
    CHECK_FALSE(a.low_precision);
    CHECK(std::is_sorted(a.stats.begin(), a.stats.end()));
    for (double v : a.stats) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    const auto c = null_distribution(TransformKind::odds, 12, 600, 2025, 1);
    CHECK(a.stats != c.stats);

    CHECK(null_distribution(TransformKind::odds, 10, 20, 1, 1).low_precision);
    CHECK_THROWS_AS(null_distribution(TransformKind::logit, 10, 20, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(null_distribution(TransformKind::odds, 2, 20, 1, 1),
                    std::invalid_argument);
}

TEST_CASE("null table cache round trip") {
    const auto dir = temp_dir("cache");
    const auto table = null_distribution(TransformKind::odds, 10, 550, 31, 1);
    save_null_table(dir, table);
    const auto loaded = load_null_table(dir, TransformKind::odds, 10, 550, 31);
    REQUIRE(loaded.has_value());
    CHECK(loaded->stats.size() == table.stats.size());
    for (std::size_t k = 0; k < table.stats.size(); ++k)
        CHECK(std::fabs(loaded->stats[k] - table.stats[k]) <= 1e-15);

    CHECK_FALSE(load_null_table(dir, TransformKind::odds, 10, 551, 31).has_value());
    CHECK_FALSE(load_null_table(dir, TransformKind::exponential, 10, 550, 31).has_value());

    // corrupted cache entries are ignored, then regenerated
    {
        std::ofstream out(null_table_path(dir, TransformKind::odds, 10, 550, 31));
        out << "kind,n,runs,seed\nodds,10,550,31\nnot-a-number\n";
    }
    CHECK_FALSE(load_null_table(dir, TransformKind::odds, 10, 550, 31).has_value());
    const auto regenerated =
        load_or_simulate_null(dir, TransformKind::odds, 10, 550, 31, 1);
    CHECK(regenerated.stats == table.stats);
    CHECK(load_null_table(dir, TransformKind::odds, 10, 550, 31).has_value());
    std::filesystem::remove_all(dir);
}

TEST_CASE("run_test p-values, decisions and plot payload") {
    const auto null = null_distribution(TransformKind::odds, 12, 999, 5150, 1);

    SUBCASE("a convex-by-construction sample has statistic 0 and p close to 1") {
        const ReferenceTransform odds = ReferenceTransform::make(TransformKind::odds);
        std::vector<double> sample(12);
        for (int j = 1; j <= 12; ++j) sample[j - 1] = odds.quantile((j - 1.0) / 12.0);
        const auto r = run_test(sample, TransformKind::odds, null, 0.1);
        CHECK(r.statistic == 0.0);
        CHECK(r.p_value == doctest::Approx(1.0).epsilon(0.01));
        CHECK_FALSE(r.reject);
        CHECK(r.plot_x.size() == 12);
        CHECK(r.plot_gcm.size() == 12);
        CHECK(r.plot_step.size() == 12);
    }
    SUBCASE("size mismatch is reported") {
        std::vector<double> sample(9, 0.0);
        for (int k = 0; k < 9; ++k) sample[static_cast<std::size_t>(k)] = k + 0.5;
        CHECK_THROWS_AS(run_test(sample, TransformKind::odds, null, 0.1),
                        SampleSizeMismatch);
    }
    SUBCASE("p-value is the continuity-corrected exceedance fraction") {
        std::mt19937_64 gen(6);
        const ReferenceTransform odds = ReferenceTransform::make(TransformKind::odds);
        std::vector<double> sample(12);
        for (double& v : sample) v = odds.quantile(uniform01(gen));
        const auto r = run_test(sample, TransformKind::odds, null, 0.1);
        long ge = 0;
        for (double v : null.stats)
            if (v >= r.statistic) ++ge;
        CHECK(r.p_value == doctest::Approx((ge + 1.0) / (999.0 + 1.0)).epsilon(1e-12));
        CHECK(r.reject == (r.p_value <= 0.1));
        CHECK(r.critical_value == null.quantile(0.9));
    }
}

TEST_CASE("rejection rate under the reference itself stays near the level") {
    const int n = 20;
    const auto null = null_distribution(TransformKind::odds, n, 3000, 909, 2);
    const ReferenceTransform odds = ReferenceTransform::make(TransformKind::odds);
    int reject05 = 0, reject10 = 0;
    const int reps = 1000;
    for (int rep = 0; rep < reps; ++rep) {
        std::mt19937_64 gen(derive_seed(31337, static_cast<std::uint64_t>(rep)));
        std::vector<double> sample(n);
        for (double& v : sample) v = odds.quantile(uniform01(gen));
        const auto r = run_test(sample, TransformKind::odds, null, 0.1);
        if (r.p_value <= 0.05) ++reject05;
        if (r.reject) ++reject10;
    }
    CHECK(std::fabs(reject05 / static_cast<double>(reps) - 0.05) <= 0.03);
    CHECK(std::fabs(reject10 / static_cast<double>(reps) - 0.10) <= 0.03);
}

TEST_CASE("statistics under an odds-convex member sit below the null") {
    // least favorable property: the null table stochastically dominates
    // the statistic distribution of any class member.
    const int n = 25;
    const auto null = null_distribution(TransformKind::odds, n, 2000, 11, 2);
    const auto gamma21 = ParametricDistribution::parse("gamma(a=2,b=1)");
    std::vector<double> stats;
    for (int rep = 0; rep < 400; ++rep)
        stats.push_back(ks_statistic(
            gamma21.sample(n, derive_seed(5757, static_cast<std::uint64_t>(rep))),
            TransformKind::odds));
    std::sort(stats.begin(), stats.end());
    for (int d = 1; d <= 9; ++d) {
        const double q_member = stats[static_cast<std::size_t>(
            std::ceil(d / 10.0 * static_cast<double>(stats.size())) - 1)];
        const double q_null = null.quantile(d / 10.0);
        CAPTURE(d);
        CHECK(q_member <= q_null + 0.02);
    }
}

TEST_CASE("power study grid shape and the figure regimes") {
    const auto rows = power_study({ParametricDistribution::parse("gamma(a=2,b=1)"),
                                   ParametricDistribution::parse("pareto(a=0.5,b=1)")},
                                  {20}, 200, 0.1, 1500, 8080, std::nullopt,
                                  TransformKind::odds, 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].family == "gamma(a=2,b=1)");
    CHECK(rows[0].n == 20);

    // odds-convex regime: large p-values, acceptance dominates
    CHECK(rows[0].mean_p > 0.5);
    CHECK(rows[0].acceptance > 0.9);
    // strongly non-convex regime: small p-values, frequent rejection
    CHECK(rows[1].mean_p < 0.3);
    CHECK(rows[1].acceptance < 0.7);

    const auto degenerate =
        power_study({ParametricDistribution::parse("gamma(a=2,b=1)")}, {10}, 1, 0.1, 600,
                    1, std::nullopt, TransformKind::odds, 1);
    REQUIRE(degenerate.size() == 1);
    CHECK(degenerate[0].sd_p == 0.0);
    CHECK((degenerate[0].acceptance == 0.0 || degenerate[0].acceptance == 1.0));
}
