#pragma once

#include <cmath>
#include <string>

#include "mveu/common.hpp"
#include "mveu/distributions.hpp"
#include "mveu/dominance.hpp"

namespace mveu {

/// Two-point lottery paying y with probability p, else the anchor payoff x.
struct TwoPointAsset {
    double x = 0.0;  // common anchor payoff
    double y = 0.0;  // asset-specific payoff
    double p = 0.0;  // probability of y

    DiscreteAsset to_discrete() const { return DiscreteAsset({{y, p}, {x, 1.0 - p}}); }

    MomentPair moments() const {
        const double mu = p * y + (1.0 - p) * x;
        const double d = y - x;
        return {mu, std::sqrt(p * (1.0 - p) * d * d)};
    }
};

enum class BorchBranch { primary, secondary };

/// A pair of two-point assets sharing x and p whose moments reproduce the
/// requested MV targets.
struct BorchConstruction {
    TwoPointAsset asset1;
    TwoPointAsset asset2;
    BorchBranch branch = BorchBranch::primary;
    MomentPair target1;
    MomentPair target2;
};

/**
 * Solve for (x, p, y1, y2) from the target moment pairs.
 *
 * primary branch (s = sigma1 - sigma2):
 *   x  = (sigma1 mu2 - sigma2 mu1) / (sigma1 - sigma2)
 *   p  = (mu1 - mu2)^2 / [(mu1 - mu2)^2 + s^2]
 *   yi = mui + sigmai s / (mu1 - mu2)
 *
 * secondary branch: the same with s = sigma1 + sigma2,
 *   x = (sigma1 mu2 + sigma2 mu1) / (sigma1 + sigma2), and the sign of the
 *   y2 term flipped: y2 = mu2 - sigma2 s / (mu1 - mu2). The flip is forced
 *   by the sigma2 equation, which puts y1 and y2 on opposite sides of x;
 *   with a shared sign the recomputed sigma2 comes out
 *   sigma2 |s^2 - dmu^2| / (s^2 + dmu^2) instead of sigma2.
 *
 * Each asset's recomputed moments must reproduce its target within
 * verify_tol relative, else the construction is rejected.
 */
inline BorchConstruction construct(const MomentPair& m1, const MomentPair& m2,
                                   BorchBranch branch, double verify_tol = kVerifyTol) {
    if (!(m1.sigma >= 0.0 && m2.sigma >= 0.0))
        throw domain_error("borch construct: sigmas must be >= 0");
    const double scale = std::max({1.0, std::abs(m1.mu), std::abs(m2.mu), m1.sigma, m2.sigma});
    const double dmu = m1.mu - m2.mu;
    if (std::abs(dmu) <= 1e-9 * scale)
        throw domain_error("borch construct: degenerate means (mu1 = mu2)");

    double s, x;
    if (branch == BorchBranch::primary) {
        s = m1.sigma - m2.sigma;
        if (std::abs(s) <= 1e-9 * scale)
            throw domain_error("borch construct: degenerate sigmas (sigma1 = sigma2)");
        x = (m1.sigma * m2.mu - m2.sigma * m1.mu) / s;
    } else {
        s = m1.sigma + m2.sigma;
        if (s <= 1e-9 * scale)
            throw domain_error("borch construct: sigma1 + sigma2 must be > 0");
        x = (m1.sigma * m2.mu + m2.sigma * m1.mu) / s;
    }
    const double p = dmu * dmu / (dmu * dmu + s * s);
    const double y1 = m1.mu + m1.sigma * s / dmu;
    const double y2 = branch == BorchBranch::primary ? m2.mu + m2.sigma * s / dmu
                                                     : m2.mu - m2.sigma * s / dmu;
    if (!(p > 0.0 && p < 1.0))
        throw numeric_error("borch construct: probability left (0,1)");

    BorchConstruction c{{x, y1, p}, {x, y2, p}, branch, m1, m2};

    const auto check = [&](const TwoPointAsset& asset, const MomentPair& target) {
        const MomentPair got = asset.moments();
        const double tol = verify_tol * scale;
        if (std::abs(got.mu - target.mu) > tol || std::abs(got.sigma - target.sigma) > tol)
            throw numeric_error("borch construct: recomputed moments missed their targets");
    };
    check(c.asset1, m1);
    check(c.asset2, m2);
    return c;
}

struct ParadoxReport {
    bool indifference_possible = false;
    int dominant = 0;  // 1 or 2; 0 when indifference is possible
    bool fsd_confirmed = false;
    std::string detail;
};

/// Render the verdict: indifference is possible only when y1 = y2;
/// otherwise the asset with the larger y first-order stochastically
/// dominates the other (cross-checked against the CDF test).
inline ParadoxReport paradox_verdict(const BorchConstruction& c) {
    ParadoxReport r;
    const double scale = std::max({1.0, std::abs(c.asset1.y), std::abs(c.asset2.y)});
    if (std::abs(c.asset1.y - c.asset2.y) <= 1e-12 * scale) {
        r.indifference_possible = true;
        r.detail = "y1 = y2: the two assets coincide and indifference is rational";
        return r;
    }
    r.dominant = c.asset1.y > c.asset2.y ? 1 : 2;
    const DiscreteAsset da = c.asset1.to_discrete();
    const DiscreteAsset db = c.asset2.to_discrete();
    const DominanceVerdict v = r.dominant == 1 ? fsd(da, db) : fsd(db, da);
    r.fsd_confirmed = v.relation == Relation::strict_dominance;
    r.detail = "y1 != y2: asset " + std::to_string(r.dominant) +
               " pays more in the y-state and" +
               (r.fsd_confirmed ? " strictly first-order dominates the other"
                                : " FAILED the FSD cross-check");
    if (!r.fsd_confirmed)
        throw numeric_error("paradox_verdict: dominant asset failed the strict FSD cross-check");
    return r;
}

/// (mu1 - mu2)^2 + (sigma1 - sigma2)^2: zero iff the MV pairs coincide,
/// so MV indifference between distinct pairs is impossible for Borch pairs.
inline double indifference_residual(const MomentPair& m1, const MomentPair& m2) {
    const double dmu = m1.mu - m2.mu;
    const double dsig = m1.sigma - m2.sigma;
    return dmu * dmu + dsig * dsig;
}

}  // namespace mveu
