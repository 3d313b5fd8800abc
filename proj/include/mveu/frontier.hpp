#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mveu/common.hpp"
#include "mveu/distributions.hpp"

namespace mveu {

/// n risky assets: expected returns and a positive definite return
/// covariance. Validated once at construction, immutable afterwards.
class AssetUniverse {
public:
    AssetUniverse(Eigen::VectorXd means, Eigen::MatrixXd cov,
                  std::vector<std::string> labels = {})
        : means_(std::move(means)), cov_(std::move(cov)), labels_(std::move(labels)) {
        const auto n = means_.size();
        if (n == 0) throw domain_error("AssetUniverse: at least one asset required");
        if (cov_.rows() != n || cov_.cols() != n)
            throw domain_error("AssetUniverse: covariance dimensions disagree with means");
        if (!labels_.empty() && static_cast<Eigen::Index>(labels_.size()) != n)
            throw domain_error("AssetUniverse: label count disagrees with means");
        if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw domain_error("AssetUniverse: covariance is not symmetric within 1e-12");
        cov_ = ((cov_ + cov_.transpose()) / 2.0).eval();  // exact symmetry for the solver
        llt_.compute(cov_);
        if (llt_.info() != Eigen::Success)
            throw domain_error("AssetUniverse: covariance is not positive definite");
    }

    Eigen::Index size() const { return means_.size(); }
    const Eigen::VectorXd& means() const { return means_; }
    const Eigen::MatrixXd& cov() const { return cov_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Eigen::LLT<Eigen::MatrixXd>& llt() const { return llt_; }

private:
    Eigen::VectorXd means_;
    Eigen::MatrixXd cov_;
    std::vector<std::string> labels_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// Fully invested portfolio: weights sum to 1, moments consistent with them.
struct Portfolio {
    Eigen::VectorXd weights;
    MomentPair moments;
};

namespace detail {

inline Portfolio make_portfolio(const AssetUniverse& u, Eigen::VectorXd w) {
    const double mu = w.dot(u.means());
    const double var = w.dot(u.cov() * w);
    return {std::move(w), {mu, std::sqrt(std::max(var, 0.0))}};
}

}  // namespace detail

/// Minimum-variance fully invested portfolio, no mean constraint.
inline Portfolio global_min_variance(const AssetUniverse& u) {
    const Eigen::VectorXd si = u.llt().solve(Eigen::VectorXd::Ones(u.size()));
    return detail::make_portfolio(u, si / si.sum());
}

/**
 * min w' Sigma w  subject to  w'm = target_mu, w'1 = 1.
 *
 * Solved through the two-constraint normal equations: with
 * A = 1'S^-1 1, B = 1'S^-1 m, C = m'S^-1 m, the optimal weights are
 * w = lambda S^-1 m + gamma S^-1 1 where lambda = (A t - B)/D,
 * gamma = (C - B t)/D, D = AC - B^2. The first-order residual
 * Sigma w - lambda m - gamma 1 is checked before returning.
 */
inline Portfolio min_variance_for_mean(const AssetUniverse& u, double target_mu) {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(u.size());
    const Eigen::VectorXd si_one = u.llt().solve(ones);
    const Eigen::VectorXd si_m = u.llt().solve(u.means());
    const double A = ones.dot(si_one);
    const double B = ones.dot(si_m);
    const double C = u.means().dot(si_m);
    const double D = A * C - B * B;
    const double scale = std::max(1.0, std::abs(A * C));

    Eigen::VectorXd w;
    double lambda, gamma;
    if (D <= 1e-12 * scale) {
        // All-equal means (or a single asset): the mean constraint is either
        // redundant or infeasible.
        const double gmv_mu = B / A;
        if (std::abs(target_mu - gmv_mu) > 1e-9 * std::max(1.0, std::abs(gmv_mu)))
            throw domain_error("min_variance_for_mean: target mean is infeasible");
        lambda = 0.0;
        gamma = 1.0 / A;
        w = si_one / A;
    } else {
        lambda = (A * target_mu - B) / D;
        gamma = (C - B * target_mu) / D;
        w = lambda * si_m + gamma * si_one;
    }

    const double kkt = (u.cov() * w - lambda * u.means() - gamma * ones).cwiseAbs().maxCoeff();
    if (kkt > 1e-10)
        throw numeric_error("min_variance_for_mean: first-order residual exceeds 1e-10");
    return detail::make_portfolio(u, std::move(w));
}

/// One constrained solve per grid point. On the efficient branch sigma is a
/// convex function of mu and no sampled point MV-dominates another.
inline std::vector<Portfolio> frontier_sample(const AssetUniverse& u,
                                              const std::vector<double>& mu_grid) {
    std::vector<Portfolio> out;
    out.reserve(mu_grid.size());
    for (double mu : mu_grid) out.push_back(min_variance_for_mean(u, mu));
    return out;
}

/**
 * The tangency portfolio of the line drawn from (0, r_rf): weights
 * proportional to S^-1 (m - r_rf 1). Requires r_rf strictly below the
 * global minimum-variance mean for a finite tangency on the upper branch.
 * The marginal-rate-of-substitution equality is checked per asset:
 * (mu_j - r_rf) / cov(r_j, r_M) must be one constant.
 */
inline Portfolio tangency_portfolio(const AssetUniverse& u, double r_rf) {
    const double gmv_mu = global_min_variance(u).moments.mu;
    if (!(r_rf < gmv_mu))
        throw domain_error(
            "tangency_portfolio: r_rf must lie below the global minimum-variance mean");
    const Eigen::VectorXd excess = u.means().array() - r_rf;
    const Eigen::VectorXd raw = u.llt().solve(excess);
    const Portfolio t = detail::make_portfolio(u, raw / raw.sum());

    const Eigen::VectorXd cov_with_market = u.cov() * t.weights;
    const double market_rate = (t.moments.mu - r_rf) / t.moments.variance();
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        const double rate = (u.means()[j] - r_rf) / cov_with_market[j];
        if (std::abs(rate - market_rate) > 1e-8 * std::abs(market_rate))
            throw numeric_error("tangency_portfolio: MRS constancy check failed");
    }
    return t;
}

}  // namespace mveu
