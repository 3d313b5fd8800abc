#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mveu/common.hpp"
#include "mveu/distributions.hpp"
#include "mveu/utility.hpp"

namespace mveu {

/// An MV merit function g(sigma, mu). Evaluators must be pure: safe for
/// concurrent calls, no hidden mutable state.
struct MeritFunction {
    std::function<double(double sigma, double mu)> evaluator;
    std::string descriptor;

    double operator()(double sigma, double mu) const { return evaluator(sigma, mu); }
    double operator()(const MomentPair& m) const { return evaluator(m.sigma, m.mu); }
};

inline MeritFunction quadratic_merit(double a) {
    return {[a](double s, double m) { return quadratic_eu_mv(a, {m, s}); },
            "quadratic EU, a=" + std::to_string(a)};
}

inline MeritFunction cara_normal_merit(double kappa) {
    return {[kappa](double s, double m) { return cara_normal_eu(kappa, {m, s}); },
            "CARA-normal EU, kappa=" + std::to_string(kappa)};
}

/// mu - kappa sigma^2 / 2: the certainty-equivalent form of the CARA-normal
/// parabola. Plausible as a merit function yet not mixture-coherent.
inline MeritFunction cara_parabola_merit(double kappa) {
    return {[kappa](double s, double m) { return m - kappa * s * s / 2.0; },
            "CARA parabola certainty equivalent, kappa=" + std::to_string(kappa)};
}

/**
 * The indifference circle implied by Buridan's axiom:
 *   sigma^2 + [mu - (rho0 + mu0)]^2 = rho0^2,
 * centred at (0, mu0 + rho0) with radius rho0.
 */
struct BuridanCircle {
    double mu0 = 0.0;
    double rho0 = 0.0;

    double center_mu() const { return mu0 + rho0; }

    /// Signed deviation of (sigma, mu) from the circle equation.
    double equation_residual(double sigma, double mu) const {
        const double d = mu - center_mu();
        return sigma * sigma + d * d - rho0 * rho0;
    }
};

/// Circle through the risk-free point (0, mu0) and the anchor (sigma1, mu1),
/// with rho0 = [sigma1^2 / (mu1 - mu0) + (mu1 - mu0)] / 2.
inline BuridanCircle buridan_circle(double mu0, const MomentPair& anchor) {
    if (!(anchor.sigma > 0.0))
        throw domain_error("buridan_circle: anchor sigma must be > 0");
    if (!(anchor.mu > mu0))
        throw domain_error("buridan_circle: anchor mu must exceed the risk-free mu0");
    const double d = anchor.mu - mu0;
    const double rho0 = 0.5 * (anchor.variance() / d + d);
    return {mu0, rho0};
}

/// n points on the lower quarter-arc of the circle centred at (0, center_mu)
/// with the given radius, swept from sigma = 0 to sigma = radius.
inline std::vector<MomentPair> circle_arc_points(double center_mu, double radius, int n) {
    if (!(radius >= 0.0)) throw domain_error("circle_arc_points: radius must be >= 0");
    if (n < 1) throw domain_error("circle_arc_points: need n >= 1");
    if (radius == 0.0) return {MomentPair{center_mu, 0.0}};
    std::vector<MomentPair> pts;
    pts.reserve(static_cast<std::size_t>(n));
    if (n == 1) return {MomentPair{center_mu - radius, 0.0}};
    for (int k = 0; k < n; ++k) {
        const double sigma = radius * static_cast<double>(k) / (n - 1);
        const double mu = center_mu - std::sqrt(std::max(radius * radius - sigma * sigma, 0.0));
        pts.push_back({mu, sigma});
    }
    return pts;
}

inline std::vector<MomentPair> buridan_circle_points(const BuridanCircle& c, int n = 256) {
    return circle_arc_points(c.center_mu(), c.rho0, n);
}

/**
 * Quadratic-utility indifference curve at a fixed EU level: the quarter
 * circle centred at (0, a) restricted to sigma >= 0 and mu <= a. The arc
 * above satiation is not an indifference curve and is excluded here.
 */
inline std::vector<MomentPair> quadratic_circle_points(double a, double eu_level, int n = 256) {
    if (!(a > 0.0)) throw domain_error("quadratic_circle_points: a must be > 0");
    if (eu_level > a * a)
        throw domain_error("quadratic_circle_points: eu_level exceeds the maximum utility a^2");
    const double radius = std::sqrt(a * a - eu_level);
    return circle_arc_points(a, radius, n);
}

/// CARA-normal indifference curve mu = level + kappa sigma^2 / 2, sampled at
/// n evenly spaced sigmas in [0, sigma_max]. A straight line in (sigma^2, mu),
/// a parabola in (sigma, mu).
inline std::vector<MomentPair> cara_parabola_points(double kappa, double level,
                                                    double sigma_max, int n = 256) {
    if (!(kappa > 0.0)) throw domain_error("cara_parabola_points: kappa must be > 0");
    if (!(sigma_max >= 0.0)) throw domain_error("cara_parabola_points: sigma_max must be >= 0");
    if (n < 1) throw domain_error("cara_parabola_points: need n >= 1");
    std::vector<MomentPair> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double sigma = n == 1 ? 0.0 : sigma_max * static_cast<double>(k) / (n - 1);
        pts.push_back({level + kappa * sigma * sigma / 2.0, sigma});
    }
    return pts;
}

/// Default finite-difference step for chipman_residual at (sigma, mu).
inline double chipman_default_step(double sigma, double mu) {
    return 1e-3 * std::max({1.0, std::abs(sigma), std::abs(mu)});
}

/**
 * Central-difference residual of the PDE a merit function must satisfy to
 * derive from some utility function over normal assets:
 *   (1/sigma) dV/dsigma = d^2 V / dmu^2.
 * Returns left minus right.
 */
inline double chipman_residual(const MeritFunction& V, double sigma, double mu, double h) {
    if (!(h > 0.0 && sigma > h))
        throw precondition_error("chipman_residual: requires sigma > h > 0");
    const double left = (V(sigma + h, mu) - V(sigma - h, mu)) / (2.0 * h) / sigma;
    const double right = (V(sigma, mu + h) - 2.0 * V(sigma, mu) + V(sigma, mu - h)) / (h * h);
    return left - right;
}

struct BuridanViolationReport {
    bool violated = false;
    double worst_alpha = 0.0;
    double merit_gap = 0.0;
};

/**
 * Buridan's axiom run forward: a merit-indifferent pair must stay
 * indifferent to every probability mixture of the two. Evaluates V at the
 * mixture moments for each alpha and reports the worst merit gap. Gaps are
 * judged against 1e-9 normalized by max(1, |V(m0)|).
 */
inline BuridanViolationReport detect_buridan_violation(const MeritFunction& V,
                                                       const MomentPair& m0,
                                                       const MomentPair& m1,
                                                       const std::vector<double>& alphas) {
    const double v0 = V(m0);
    const double tol = 1e-9 * std::max(1.0, std::abs(v0));
    if (std::abs(v0 - V(m1)) >= tol)
        throw precondition_error("detect_buridan_violation: pair is not V-indifferent");
    BuridanViolationReport r;
    for (double alpha : alphas) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw domain_error("detect_buridan_violation: alphas must lie in (0,1)");
        const double gap = std::abs(V(mixture_moments(m0, m1, alpha)) - v0);
        if (gap > r.merit_gap) {
            r.merit_gap = gap;
            r.worst_alpha = alpha;
        }
    }
    r.violated = r.merit_gap > tol;
    return r;
}

/// Region where circular MV preferences stay coherent: false exactly when
/// mu exceeds the satiation height mu0 + rho0; the boundary is admitted.
inline bool admissible_region(double mu0, double rho0, const MomentPair& m) {
    if (!(rho0 > 0.0)) throw domain_error("admissible_region: rho0 must be > 0");
    return !(m.mu > mu0 + rho0);
}

}  // namespace mveu
