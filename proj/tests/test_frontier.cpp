#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "mveu/dominance.hpp"
#include "mveu/frontier.hpp"
#include "test_support.hpp"

using namespace mveu;
using mveu_test::Rng;

namespace {

AssetUniverse two_asset_universe() {
    Eigen::VectorXd means(2);
    means << 0.1, 0.2;
    Eigen::MatrixXd cov(2, 2);
    cov << 0.01, 0.0, 0.0, 0.04;
    return AssetUniverse(means, cov, {"low", "high"});
}

AssetUniverse random_universe(Rng& rng, int n) {
    std::uniform_real_distribution<double> mean_dist(0.02, 0.3);
    Eigen::VectorXd means(n);
    for (int i = 0; i < n; ++i) means[i] = mean_dist(rng);
    return AssetUniverse(means, mveu_test::random_spd(rng, n, 0.2));
}

}  // namespace

TEST_CASE("universe validation") {
    Eigen::VectorXd means(2);
    means << 0.1, 0.2;
    Eigen::MatrixXd asym(2, 2);
    asym << 0.01, 0.002, 0.001, 0.04;
    CHECK_THROWS_AS(AssetUniverse(means, asym), domain_error);

    Eigen::MatrixXd indefinite(2, 2);
    indefinite << 0.01, 0.05, 0.05, 0.04;
    CHECK_THROWS_AS(AssetUniverse(means, indefinite), domain_error);

    Eigen::MatrixXd wrong(3, 3);
    wrong.setIdentity();
    CHECK_THROWS_AS(AssetUniverse(means, wrong), domain_error);
    CHECK_THROWS_AS(AssetUniverse(means, Eigen::MatrixXd::Identity(2, 2), {"only-one"}),
                    domain_error);
}

TEST_CASE("two-asset closed forms") {
    const auto u = two_asset_universe();

    const auto p = min_variance_for_mean(u, 0.12);
    CHECK_THAT(p.weights[0], Catch::Matchers::WithinAbs(0.8, 1e-10));
    CHECK_THAT(p.weights[1], Catch::Matchers::WithinAbs(0.2, 1e-10));
    CHECK_THAT(p.moments.mu, Catch::Matchers::WithinAbs(0.12, 1e-12));
    CHECK_THAT(p.moments.variance(), Catch::Matchers::WithinAbs(0.008, 1e-12));

    const auto t = tangency_portfolio(u, 0.05);
    CHECK_THAT(t.weights[0], Catch::Matchers::WithinAbs(4.0 / 7.0, 1e-10));
    CHECK_THAT(t.weights[1], Catch::Matchers::WithinAbs(3.0 / 7.0, 1e-10));

    // MRS constancy at the tangency: (mu_j - rf) / cov(r_j, r_M) equal across assets
    const Eigen::VectorXd cov_m = u.cov() * t.weights;
    CHECK_THAT(0.05 / cov_m[0], Catch::Matchers::WithinRel(0.15 / cov_m[1], 1e-12));
}

TEST_CASE("single-asset universe") {
    Eigen::VectorXd means(1);
    means << 0.1;
    Eigen::MatrixXd cov(1, 1);
    cov << 0.04;
    const AssetUniverse u(means, cov);
    CHECK(min_variance_for_mean(u, 0.1).weights[0] == 1.0);
    CHECK_THROWS_AS(min_variance_for_mean(u, 0.2), domain_error);
    CHECK(tangency_portfolio(u, 0.05).weights[0] == 1.0);
    CHECK_THROWS_AS(tangency_portfolio(u, 0.1), domain_error);
}

TEST_CASE("frontier sampling") {
    const auto u = two_asset_universe();
    const auto samples = frontier_sample(u, {0.10, 0.12, 0.15, 0.20});
    REQUIRE(samples.size() == 4);
    // endpoints are the pure assets
    CHECK_THAT(samples.front().weights[0], Catch::Matchers::WithinAbs(1.0, 1e-10));
    CHECK_THAT(samples.back().weights[1], Catch::Matchers::WithinAbs(1.0, 1e-10));
    // variance is minimized at the interior minimum-variance point
    CHECK(samples[1].moments.sigma < samples[0].moments.sigma);
    CHECK(samples[1].moments.sigma < samples[2].moments.sigma);

    // the global minimum-variance portfolio has variance <= every sample
    const auto gmv = global_min_variance(u);
    for (const auto& s : samples) CHECK(gmv.moments.sigma <= s.moments.sigma + 1e-14);

    // no sampled efficient point MV-dominates another
    for (const auto& s1 : samples)
        for (const auto& s2 : samples)
            if (s1.moments.mu >= gmv.moments.mu && s2.moments.mu >= gmv.moments.mu &&
                &s1 != &s2)
                CHECK(mv_dominance(s1.moments, s2.moments).relation == Relation::none);
}

TEST_CASE("a dominated asset never makes the efficient frontier alone") {
    Eigen::VectorXd means(3);
    means << 0.1, 0.2, 0.09;  // asset 3 MV-dominated by asset 1
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(3, 3);
    cov.diagonal() << 0.01, 0.04, 0.0144;
    const AssetUniverse u(means, cov);
    REQUIRE(mv_dominance({0.1, 0.1}, {0.09, 0.12}).relation == Relation::strict_dominance);
    const double gmv_mu = global_min_variance(u).moments.mu;
    for (double mu = gmv_mu; mu <= 0.2; mu += 0.01)
        CHECK(std::abs(min_variance_for_mean(u, mu).weights[2] - 1.0) > 0.05);
}

TEST_CASE("KKT residuals and scaling symmetry on random universes") {
    Rng rng(89);
    std::uniform_int_distribution<int> n_dist(2, 12);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = n_dist(rng);
        const auto u = random_universe(rng, n);
        const double target =
            0.5 * (u.means().minCoeff() + u.means().maxCoeff());
        const auto p = min_variance_for_mean(u, target);  // KKT gate enforced internally
        REQUIRE_THAT(p.weights.sum(), Catch::Matchers::WithinAbs(1.0, 1e-10));
        REQUIRE_THAT(p.moments.mu, Catch::Matchers::WithinAbs(target, 1e-10));

        for (double c : {0.5, 2.0}) {
            const AssetUniverse scaled(u.means(), u.cov() * (c * c));
            const auto ps = min_variance_for_mean(scaled, target);
            REQUIRE_THAT(ps.moments.sigma,
                         Catch::Matchers::WithinRel(c * p.moments.sigma, 1e-9));
            REQUIRE((ps.weights - p.weights).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("tangency lies on the frontier and its line dominates it") {
    Rng rng(97);
    for (int trial = 0; trial < 20; ++trial) {
        const auto u = random_universe(rng, 5);
        const double gmv_mu = global_min_variance(u).moments.mu;
        const double rf = gmv_mu - 0.05;
        const auto t = tangency_portfolio(u, rf);

        const auto on_frontier = min_variance_for_mean(u, t.moments.mu);
        REQUIRE_THAT(on_frontier.moments.variance(),
                     Catch::Matchers::WithinAbs(t.moments.variance(), 1e-9));

        // capital market line weakly MV-dominates every frontier portfolio
        const double slope = (t.moments.mu - rf) / t.moments.sigma;
        for (double mu = gmv_mu + 0.001; mu < u.means().maxCoeff(); mu += 0.01) {
            const auto p = min_variance_for_mean(u, mu);
            REQUIRE(rf + slope * p.moments.sigma >= p.moments.mu - 1e-10);
        }
    }
}
