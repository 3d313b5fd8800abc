#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "mveu/common.hpp"

namespace mveu {

/**
 * Market data for CAPM pricing: risk-free return, expected end-of-period
 * asset values, their covariance, and the exogenous total market price P_M.
 * The model prices assets relative to P_M; aggregation alone cannot pin the
 * market's own price down, so it is required as input.
 */
class MarketModel {
public:
    MarketModel(double r_rf, Eigen::VectorXd value_means, Eigen::MatrixXd value_cov,
                double market_price, std::optional<Eigen::VectorXd> prices = std::nullopt)
        : r_rf_(r_rf),
          value_means_(std::move(value_means)),
          value_cov_(std::move(value_cov)),
          market_price_(market_price),
          prices_(std::move(prices)) {
        const auto n = value_means_.size();
        if (n == 0) throw domain_error("MarketModel: at least one asset required");
        if (value_cov_.rows() != n || value_cov_.cols() != n)
            throw domain_error("MarketModel: covariance dimensions disagree with means");
        if ((value_cov_ - value_cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw domain_error("MarketModel: covariance is not symmetric within 1e-12");
        value_cov_ = ((value_cov_ + value_cov_.transpose()) / 2.0).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(value_cov_, Eigen::EigenvaluesOnly);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        if (es.eigenvalues().minCoeff() < -1e-10 * scale)
            throw domain_error("MarketModel: covariance is not positive semidefinite");
        if (!(market_variance() > 0.0))
            throw domain_error("MarketModel: var(V_M) must be > 0");
        if (prices_) {
            if (prices_->size() != n)
                throw domain_error("MarketModel: price vector dimension disagrees");
            if (std::abs(prices_->sum() - market_price_) >
                1e-9 * std::max(1.0, std::abs(market_price_)))
                throw domain_error("MarketModel: prices must sum to the market price");
        }
    }

    double r_rf() const { return r_rf_; }
    const Eigen::VectorXd& value_means() const { return value_means_; }
    const Eigen::MatrixXd& value_cov() const { return value_cov_; }
    double market_price() const { return market_price_; }
    const std::optional<Eigen::VectorXd>& prices() const { return prices_; }

    Eigen::Index size() const { return value_means_.size(); }
    double market_value_mean() const { return value_means_.sum(); }
    /// var(V_M) = 1' Sigma 1: the grand sum of the value covariance.
    double market_variance() const { return value_cov_.sum(); }

private:
    double r_rf_;
    Eigen::VectorXd value_means_;
    Eigen::MatrixXd value_cov_;
    double market_price_;
    std::optional<Eigen::VectorXd> prices_;
};

enum class BetaBasis { returns, values };

struct Beta {
    double value = 0.0;
    BetaBasis basis = BetaBasis::values;
};

/// beta_j = cov(V_j, V_M) / var(V_M): row sum over grand sum.
inline Beta beta(const Eigen::MatrixXd& value_cov, Eigen::Index j) {
    const double total = value_cov.sum();
    if (!(total > 0.0)) throw domain_error("beta: degenerate market (var(V_M) = 0)");
    if (j < 0 || j >= value_cov.rows()) throw domain_error("beta: index out of range");
    return {value_cov.row(j).sum() / total, BetaBasis::values};
}

/// Returns-form CAPM: mu(r_j) = r_rf + beta [mu(r_M) - r_rf].
inline double capm_expected_return(const Beta& b, double r_rf, double mu_market) {
    if (!std::isfinite(b.value) || !std::isfinite(r_rf) || !std::isfinite(mu_market))
        throw domain_error("capm_expected_return: inputs must be finite");
    return r_rf + b.value * (mu_market - r_rf);
}

/**
 * Price-form CAPM:
 *   P_j = [mu(V_j) - beta_j (mu(V_M) - P_M (1 + r_rf))] / (1 + r_rf),
 * with beta_j on the values basis. Betas sum to 1 and prices aggregate to
 * P_M by construction. Markets producing a nonpositive price are rejected:
 * the returns bridge divides by P_j.
 */
inline Eigen::VectorXd capm_prices(const MarketModel& m) {
    if (!(m.market_price() > 0.0)) throw domain_error("capm_prices: market price must be > 0");
    if (!(1.0 + m.r_rf() > 0.0)) throw domain_error("capm_prices: 1 + r_rf must be > 0");
    const double premium = m.market_value_mean() - m.market_price() * (1.0 + m.r_rf());
    Eigen::VectorXd prices(m.size());
    for (Eigen::Index j = 0; j < m.size(); ++j) {
        const double bj = beta(m.value_cov(), j).value;
        prices[j] = (m.value_means()[j] - bj * premium) / (1.0 + m.r_rf());
        if (!(prices[j] > 0.0))
            throw domain_error("capm_prices: market admits a nonpositive CAPM price");
    }
    return prices;
}

struct RoundTripReport {
    std::vector<double> residuals;  // per asset, relative
    double max_residual = 0.0;
};

/**
 * Convert value moments to return moments through
 *   mu(r_j) = mu(V_j)/P_j - 1,
 *   cov(r_j, r_M) = cov(V_j, V_M) / (P_j P_M),
 *   var(r_M) = var(V_M) / P_M^2,
 * then measure how far each asset sits from the returns-form CAPM line.
 * At CAPM prices every residual vanishes up to rounding.
 */
inline RoundTripReport capm_round_trip(const MarketModel& m, const Eigen::VectorXd& prices) {
    if (prices.size() != m.size())
        throw domain_error("capm_round_trip: price vector dimension disagrees");
    if (prices.minCoeff() <= 0.0)
        throw domain_error("capm_round_trip: all prices must be > 0");
    const double pm = m.market_price();
    const double mu_rm = m.market_value_mean() / pm - 1.0;
    const double var_rm = m.market_variance() / (pm * pm);
    RoundTripReport r;
    r.residuals.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index j = 0; j < m.size(); ++j) {
        const double mu_rj = m.value_means()[j] / prices[j] - 1.0;
        const double cov_rj_rm = m.value_cov().row(j).sum() / (prices[j] * pm);
        const double predicted =
            capm_expected_return({cov_rj_rm / var_rm, BetaBasis::returns}, m.r_rf(), mu_rm);
        const double rel = std::abs(mu_rj - predicted) / std::max(1.0, std::abs(mu_rj));
        r.residuals.push_back(rel);
        r.max_residual = std::max(r.max_residual, rel);
    }
    return r;
}

/**
 * Marginal rates of substitution (extra expected return per unit of added
 * variance)
 * for the two ways of buying expected return: more of asset j, or more of
 * the whole market. At CAPM prices the two rates agree; that equality is
 * algebraically the returns-form CAPM.
 */
inline std::pair<double, double> mrs_check(const MarketModel& m, const Eigen::VectorXd& prices,
                                           Eigen::Index j, double w_m) {
    if (prices.size() != m.size() || j < 0 || j >= m.size())
        throw domain_error("mrs_check: bad index or price vector");
    if (prices.minCoeff() <= 0.0) throw domain_error("mrs_check: all prices must be > 0");
    if (!(w_m > 0.0)) throw domain_error("mrs_check: w_M must be > 0");
    const double pm = m.market_price();
    const double mu_rj = m.value_means()[j] / prices[j] - 1.0;
    const double mu_rm = m.market_value_mean() / pm - 1.0;
    const double cov_rj_rm = m.value_cov().row(j).sum() / (prices[j] * pm);
    const double var_rm = m.market_variance() / (pm * pm);
    if (cov_rj_rm == 0.0)
        throw domain_error("mrs_check: cov(r_j, r_M) = 0 leaves the rate undefined");
    const double asset_rate = (mu_rj - m.r_rf()) / (2.0 * w_m * cov_rj_rm);
    const double market_rate = (mu_rm - m.r_rf()) / (2.0 * w_m * var_rm);
    return {asset_rate, market_rate};
}

}  // namespace mveu
