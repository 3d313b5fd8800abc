#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "mveu/common.hpp"
#include "mveu/distributions.hpp"

namespace mveu {

/// u(x) = 2ax - x^2, a > 0. Increasing only for x < a (satiation at x = a).
struct Quadratic {
    double a;
};

/// u(x) = 1 - exp(-kappa x), kappa > 0. Constant absolute risk aversion.
struct Cara {
    double kappa;
};

/// u(x) = log(x), x > 0.
struct LogUtility {};

/// Increasing concave piecewise-linear utility given by (x, u) knots.
struct Tabulated {
    std::vector<std::pair<double, double>> points;
};

/// Tagged utility family. Construct through the named factories, which
/// validate the family parameters.
class UtilitySpec {
public:
    static UtilitySpec quadratic(double a) {
        if (!(a > 0.0)) throw domain_error("quadratic utility: a must be > 0");
        return UtilitySpec(Quadratic{a});
    }

    static UtilitySpec cara(double kappa) {
        if (!(kappa > 0.0)) throw domain_error("cara utility: kappa must be > 0");
        return UtilitySpec(Cara{kappa});
    }

    static UtilitySpec log_utility() { return UtilitySpec(LogUtility{}); }

    static UtilitySpec tabulated(std::vector<std::pair<double, double>> points) {
        if (points.size() < 2)
            throw domain_error("tabulated utility: at least two knots required");
        double prev_slope = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < points.size(); ++i) {
            const double dx = points[i + 1].first - points[i].first;
            if (!(dx > 0.0))
                throw domain_error("tabulated utility: payoffs must be strictly increasing");
            const double slope = (points[i + 1].second - points[i].second) / dx;
            if (slope > prev_slope + 1e-12)
                throw domain_error("tabulated utility: interpolant is not concave");
            prev_slope = slope;
        }
        return UtilitySpec(Tabulated{std::move(points)});
    }

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&family_);
    }

    template <typename Visitor>
    auto visit(Visitor&& v) const {
        return std::visit(std::forward<Visitor>(v), family_);
    }

private:
    using Family = std::variant<Quadratic, Cara, LogUtility, Tabulated>;
    explicit UtilitySpec(Family f) : family_(std::move(f)) {}
    Family family_;
};

inline double eval(const UtilitySpec& u, double x) {
    return u.visit([&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
            return 2.0 * fam.a * x - x * x;
        } else if constexpr (std::is_same_v<T, Cara>) {
            return 1.0 - std::exp(-fam.kappa * x);
        } else if constexpr (std::is_same_v<T, LogUtility>) {
            if (!(x > 0.0)) throw domain_error("log utility requires x > 0");
            return std::log(x);
        } else {
            const auto& pts = fam.points;
            if (x < pts.front().first || x > pts.back().first)
                throw domain_error("tabulated utility: x outside tabulated range");
            auto it = std::upper_bound(pts.begin(), pts.end(), x,
                                       [](double v, const auto& p) { return v < p.first; });
            if (it == pts.end()) return pts.back().second;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double t = (x - lo.first) / (hi.first - lo.first);
            return lo.second + t * (hi.second - lo.second);
        }
    });
}

/// Exact E[u(X)] over the finite support.
inline double expected_utility(const UtilitySpec& u, const DiscreteAsset& asset) {
    double eu = 0.0;
    for (const auto& o : asset.outcomes()) eu += o.probability * eval(u, o.payoff);
    return eu;
}

/// Expected quadratic utility from moments alone:
///   EU = 2a mu - (sigma^2 + mu^2) = -sigma^2 - (mu - a)^2 + a^2.
/// Moment-determined for every distribution, not only normals.
inline double quadratic_eu_mv(double a, const MomentPair& m) {
    if (!(a > 0.0)) throw domain_error("quadratic_eu_mv: a must be > 0");
    return 2.0 * a * m.mu - (m.variance() + m.mu * m.mu);
}

/// Expected CARA utility of a normal payoff: 1 - exp(-kappa mu + kappa^2 sigma^2 / 2).
inline double cara_normal_eu(double kappa, const MomentPair& m) {
    if (!(kappa > 0.0)) throw domain_error("cara_normal_eu: kappa must be > 0");
    return 1.0 - std::exp(-kappa * m.mu + kappa * kappa * m.variance() / 2.0);
}

/// Pratt-Arrow local absolute risk aversion -u''(x)/u'(x).
inline double risk_aversion(const UtilitySpec& u, double x) {
    return u.visit([&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
            const double denom = fam.a - x;
            if (denom == 0.0)
                throw domain_error("risk_aversion: quadratic marginal utility vanishes at x = a");
            return 1.0 / denom;
        } else if constexpr (std::is_same_v<T, Cara>) {
            return fam.kappa;
        } else if constexpr (std::is_same_v<T, LogUtility>) {
            if (!(x > 0.0)) throw domain_error("risk_aversion: log utility requires x > 0");
            return 1.0 / x;
        } else {
            throw domain_error("risk_aversion: tabulated utilities are not differentiable");
        }
    });
}

/// True iff every possible payoff stays at or below the satiation point a.
/// mu < a alone is not enough; the support-wise bound is the coherent one.
inline bool quadratic_admissible(double a, const DiscreteAsset& asset) {
    if (!(a > 0.0)) throw domain_error("quadratic_admissible: a must be > 0");
    return asset.outcomes().back().payoff <= a;
}

}  // namespace mveu
