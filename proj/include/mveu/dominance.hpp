#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mveu/common.hpp"
#include "mveu/distributions.hpp"

namespace mveu {

enum class Relation { strict_dominance, weak_dominance, none };
enum class DominanceOrder { first, second, mv, levy_sarnat };

struct DominanceVerdict {
    Relation relation = Relation::none;
    DominanceOrder order = DominanceOrder::first;
    /// Payoff where the defining inequality is strict (for dominance) or
    /// violated (for none).
    std::optional<double> witness;
};

namespace detail {

inline std::vector<double> merged_support(const DiscreteAsset& a, const DiscreteAsset& b) {
    std::vector<double> pts;
    pts.reserve(a.size() + b.size());
    for (const auto& o : a.outcomes()) pts.push_back(o.payoff);
    for (const auto& o : b.outcomes()) pts.push_back(o.payoff);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace detail

/**
 * First order stochastic dominance of a over b:
 * F_b(x) - F_a(x) >= 0 at every point. For step CDFs the merged support
 * points are sufficient evaluation points.
 */
inline DominanceVerdict fsd(const DiscreteAsset& a, const DiscreteAsset& b) {
    DominanceVerdict v;
    v.order = DominanceOrder::first;
    bool strict = false;
    for (double x : detail::merged_support(a, b)) {
        const double diff = cdf(b, x) - cdf(a, x);
        if (diff < -kProbTol) {
            v.relation = Relation::none;
            v.witness = x;
            return v;
        }
        if (diff > kProbTol && !strict) {
            strict = true;
            v.witness = x;
        }
    }
    v.relation = strict ? Relation::strict_dominance : Relation::weak_dominance;
    if (!strict) v.witness.reset();
    return v;
}

/**
 * Second order stochastic dominance of a over b:
 * integral of [F_b - F_a] up to t is >= 0 for every t. The integrand is
 * piecewise constant between merged support points, so the running integral
 * is piecewise linear and breakpoint checks (plus the limit beyond the last
 * support point, where the integral settles at mu_a - mu_b) are exact.
 */
inline DominanceVerdict ssd(const DiscreteAsset& a, const DiscreteAsset& b) {
    DominanceVerdict v;
    v.order = DominanceOrder::second;
    const auto pts = detail::merged_support(a, b);
    bool strict = false;
    double integral = 0.0;
    for (std::size_t i = 0; i <= pts.size(); ++i) {
        if (i > 0 && i < pts.size())
            integral += (cdf(b, pts[i - 1]) - cdf(a, pts[i - 1])) * (pts[i] - pts[i - 1]);
        // i == pts.size(): beyond the last support point both CDFs are 1,
        // so the integral stays at its final value, mu_a - mu_b.
        const double checkpoint = (i < pts.size()) ? pts[i] : pts.back();
        if (integral < -kProbTol) {
            v.relation = Relation::none;
            v.witness = checkpoint;
            return v;
        }
        if (integral > kProbTol && !strict) {
            strict = true;
            v.witness = checkpoint;
        }
    }
    v.relation = strict ? Relation::strict_dominance : Relation::weak_dominance;
    if (!strict) v.witness.reset();
    return v;
}

/// MV dominance of m1 over m2: mu1 >= mu2 and sigma1 < sigma2, or
/// mu1 > mu2 and sigma1 <= sigma2.
inline DominanceVerdict mv_dominance(const MomentPair& m1, const MomentPair& m2) {
    DominanceVerdict v;
    v.order = DominanceOrder::mv;
    const bool dominates = (m1.mu >= m2.mu && m1.sigma < m2.sigma) ||
                           (m1.mu > m2.mu && m1.sigma <= m2.sigma);
    v.relation = dominates ? Relation::strict_dominance : Relation::none;
    return v;
}

/// Levy-Sarnat quadratic-utility dominance test: with mu1 > mu2, asset 1
/// has higher utility iff (mu1 - mu2)^2 - (sigma1 - sigma2)^2 > 0.
inline bool levy_sarnat(const MomentPair& m1, const MomentPair& m2) {
    if (!(m1.mu > m2.mu))
        throw precondition_error("levy_sarnat: requires mu1 > mu2");
    const double dmu = m1.mu - m2.mu;
    const double dsig = m1.sigma - m2.sigma;
    return dmu * dmu - dsig * dsig > 0.0;
}

/**
 * Fishburn moment diagnostics. When strict FSD (resp. SSD) of a over b is
 * detected, reports whether mu_a > mu_b (resp. mu_a >= mu_b and
 * sigma_a < sigma_b) holds. Purely one-sided: the moment conditions are
 * necessary, never sufficient, and the SSD condition is known to fail for
 * pure location shifts, so nothing is asserted.
 */
struct FishburnReport {
    bool fsd_strict = false;
    bool ssd_strict = false;
    std::optional<bool> fsd_moment_ok;
    std::optional<bool> ssd_moment_ok;
    std::string details;
};

inline FishburnReport fishburn_diagnostic(const DiscreteAsset& a, const DiscreteAsset& b) {
    FishburnReport r;
    const MomentPair ma = moments(a);
    const MomentPair mb = moments(b);
    if (fsd(a, b).relation == Relation::strict_dominance) {
        r.fsd_strict = true;
        r.fsd_moment_ok = ma.mu > mb.mu;
        if (!*r.fsd_moment_ok) r.details += "FSD moment condition mu_a > mu_b fails; ";
    }
    if (ssd(a, b).relation == Relation::strict_dominance) {
        r.ssd_strict = true;
        r.ssd_moment_ok = ma.mu >= mb.mu && ma.sigma < mb.sigma;
        if (!*r.ssd_moment_ok)
            r.details += "SSD moment condition mu_a >= mu_b and sigma_a < sigma_b fails "
                         "(expected for pure location shifts); ";
    }
    return r;
}

/// Stage one of the Hanoch-Levy / Levy-Sarnat screen: drop every asset
/// strictly FSD-dominated by another in the list. Survivor order preserved.
inline std::vector<std::size_t> fsd_filter(const std::vector<DiscreteAsset>& assets) {
    if (assets.empty()) throw domain_error("fsd_filter: empty asset list");
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < assets.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < assets.size() && !dominated; ++j) {
            if (j == i) continue;
            dominated = fsd(assets[j], assets[i]).relation == Relation::strict_dominance;
        }
        if (!dominated) survivors.push_back(i);
    }
    return survivors;
}

}  // namespace mveu
