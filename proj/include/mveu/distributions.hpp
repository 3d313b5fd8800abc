#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "mveu/common.hpp"

namespace mveu {

/// (mu, sigma) summary of an asset: the coordinate in the MV plane.
struct MomentPair {
    double mu = 0.0;
    double sigma = 0.0;

    double variance() const { return sigma * sigma; }
};

inline bool operator==(const MomentPair& a, const MomentPair& b) {
    return a.mu == b.mu && a.sigma == b.sigma;
}

/// Normal payoff distribution; sigma = 0 denotes the risk-free asset.
struct NormalAsset {
    double mu = 0.0;
    double sigma = 0.0;

    NormalAsset(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
        if (!(sigma >= 0.0)) throw domain_error("NormalAsset: sigma must be >= 0");
        if (!std::isfinite(mu) || !std::isfinite(sigma))
            throw domain_error("NormalAsset: parameters must be finite");
    }

    MomentPair moments() const { return {mu, sigma}; }
};

struct Outcome {
    double payoff = 0.0;
    double probability = 0.0;
};

/**
 * Finite discrete payoff distribution. Canonical form: outcomes sorted
 * ascending by payoff, duplicate payoffs merged (probabilities summed),
 * zero-probability atoms dropped. Probabilities must sum to 1 within 1e-12;
 * no silent renormalization.
 */
class DiscreteAsset {
public:
    explicit DiscreteAsset(std::vector<Outcome> outcomes) {
        if (outcomes.empty())
            throw domain_error("DiscreteAsset: at least one outcome required");
        double total = 0.0;
        for (const auto& o : outcomes) {
            if (!std::isfinite(o.payoff))
                throw domain_error("DiscreteAsset: payoffs must be finite");
            if (!(o.probability >= 0.0))
                throw domain_error("DiscreteAsset: probabilities must be >= 0");
            total += o.probability;
        }
        if (std::abs(total - 1.0) > kProbTol)
            throw domain_error("DiscreteAsset: probabilities must sum to 1 within 1e-12");
        std::sort(outcomes.begin(), outcomes.end(),
                  [](const Outcome& a, const Outcome& b) { return a.payoff < b.payoff; });
        for (const auto& o : outcomes) {
            if (o.probability == 0.0) continue;
            if (!outcomes_.empty() && outcomes_.back().payoff == o.payoff)
                outcomes_.back().probability += o.probability;
            else
                outcomes_.push_back(o);
        }
        if (outcomes_.empty())
            throw domain_error("DiscreteAsset: all outcomes have zero probability");
    }

    /// Degenerate distribution: payoff c with certainty.
    static DiscreteAsset certain(double c) { return DiscreteAsset({{c, 1.0}}); }

    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    std::size_t size() const { return outcomes_.size(); }

private:
    std::vector<Outcome> outcomes_;
};

inline bool operator==(const DiscreteAsset& a, const DiscreteAsset& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.outcomes()[i].payoff != b.outcomes()[i].payoff ||
            a.outcomes()[i].probability != b.outcomes()[i].probability)
            return false;
    return true;
}

/// Exact mean and standard deviation: sigma = sqrt(sum p (x - mu)^2).
inline MomentPair moments(const DiscreteAsset& asset) {
    double mu = 0.0;
    for (const auto& o : asset.outcomes()) mu += o.probability * o.payoff;
    double var = 0.0;
    for (const auto& o : asset.outcomes()) {
        const double d = o.payoff - mu;
        var += o.probability * d * d;
    }
    return {mu, std::sqrt(std::max(var, 0.0))};
}

/// Right-continuous step CDF: P(X <= x).
inline double cdf(const DiscreteAsset& asset, double x) {
    double f = 0.0;
    for (const auto& o : asset.outcomes()) {
        if (o.payoff > x) break;
        f += o.probability;
    }
    return f;
}

/**
 * Probability mixture: a with chance alpha, b with chance (1 - alpha).
 * Materializes the union of both supports. Distinct from a portfolio,
 * which combines payoffs state by state.
 */
inline DiscreteAsset mixture(const DiscreteAsset& a, const DiscreteAsset& b, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw domain_error("mixture: alpha must lie in [0,1]");
    std::vector<Outcome> merged;
    merged.reserve(a.size() + b.size());
    for (const auto& o : a.outcomes()) merged.push_back({o.payoff, alpha * o.probability});
    for (const auto& o : b.outcomes()) merged.push_back({o.payoff, (1.0 - alpha) * o.probability});
    return DiscreteAsset(std::move(merged));
}

/// Mixture moments in closed form:
///   mu      = alpha mu0 + (1-alpha) mu1
///   sigma^2 = alpha s0^2 + (1-alpha) s1^2 + alpha (1-alpha) (mu1 - mu0)^2
inline MomentPair mixture_moments(const MomentPair& m0, const MomentPair& m1, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw domain_error("mixture_moments: alpha must lie in [0,1]");
    const double mu = alpha * m0.mu + (1.0 - alpha) * m1.mu;
    const double dmu = m1.mu - m0.mu;
    const double var = alpha * m0.variance() + (1.0 - alpha) * m1.variance() +
                       alpha * (1.0 - alpha) * dmu * dmu;
    return {mu, std::sqrt(std::max(var, 0.0))};
}

/// Joint finite distribution of two payoffs; needed to form portfolios.
class JointDiscrete {
public:
    struct State {
        double payoff_a = 0.0;
        double payoff_b = 0.0;
        double probability = 0.0;
    };

    explicit JointDiscrete(std::vector<State> states) : states_(std::move(states)) {
        if (states_.empty())
            throw domain_error("JointDiscrete: at least one state required");
        double total = 0.0;
        for (const auto& s : states_) {
            if (!std::isfinite(s.payoff_a) || !std::isfinite(s.payoff_b))
                throw domain_error("JointDiscrete: payoffs must be finite");
            if (!(s.probability >= 0.0))
                throw domain_error("JointDiscrete: probabilities must be >= 0");
            total += s.probability;
        }
        if (std::abs(total - 1.0) > kProbTol)
            throw domain_error("JointDiscrete: probabilities must sum to 1 within 1e-12");
    }

    /// Product joint of two independent marginals.
    static JointDiscrete independent(const DiscreteAsset& a, const DiscreteAsset& b) {
        std::vector<State> states;
        states.reserve(a.size() * b.size());
        for (const auto& oa : a.outcomes())
            for (const auto& ob : b.outcomes())
                states.push_back({oa.payoff, ob.payoff, oa.probability * ob.probability});
        return JointDiscrete(std::move(states));
    }

    const std::vector<State>& states() const { return states_; }

    DiscreteAsset marginal_a() const {
        std::vector<Outcome> out;
        out.reserve(states_.size());
        for (const auto& s : states_) out.push_back({s.payoff_a, s.probability});
        return DiscreteAsset(std::move(out));
    }

    DiscreteAsset marginal_b() const {
        std::vector<Outcome> out;
        out.reserve(states_.size());
        for (const auto& s : states_) out.push_back({s.payoff_b, s.probability});
        return DiscreteAsset(std::move(out));
    }

private:
    std::vector<State> states_;
};

/// State-by-state weighted combination: payoff w*a + (1-w)*b per state.
inline DiscreteAsset portfolio(const JointDiscrete& joint, double w) {
    if (!(w >= 0.0 && w <= 1.0))
        throw domain_error("portfolio: weight must lie in [0,1]");
    std::vector<Outcome> out;
    out.reserve(joint.states().size());
    for (const auto& s : joint.states())
        out.push_back({w * s.payoff_a + (1.0 - w) * s.payoff_b, s.probability});
    return DiscreteAsset(std::move(out));
}

enum class StatewiseVerdict { a_dominates, b_dominates, equal, incomparable };

/**
 * Sure-thing comparison of assets whose supports pair off under equal
 * probabilities (same p-profile after canonical sorting). Assets whose
 * profiles do not match are incomparable.
 */
inline StatewiseVerdict statewise_compare(const DiscreteAsset& a, const DiscreteAsset& b) {
    if (a.size() != b.size()) return StatewiseVerdict::incomparable;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a.outcomes()[i].probability - b.outcomes()[i].probability) > kProbTol)
            return StatewiseVerdict::incomparable;
    bool a_strict = false, b_strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double xa = a.outcomes()[i].payoff;
        const double xb = b.outcomes()[i].payoff;
        if (xa > xb) a_strict = true;
        if (xb > xa) b_strict = true;
    }
    if (a_strict && b_strict) return StatewiseVerdict::incomparable;
    if (a_strict) return StatewiseVerdict::a_dominates;
    if (b_strict) return StatewiseVerdict::b_dominates;
    return StatewiseVerdict::equal;
}

}  // namespace mveu
