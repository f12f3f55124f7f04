#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "ehrelay/errors.hpp"

namespace ehrelay {

struct QuadratureSettings {
    double rel_tol = 1e-7;
    double abs_tol = 1e-10;
    int max_depth = 50;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_depth < 1) {
            throw ConfigError("invalid quadrature settings");
        }
    }

    // Tighter settings for nested (inner) integrals, so the outer error
    // estimate stays honest.
    QuadratureSettings tightened(double factor = 0.1) const {
        return {rel_tol * factor, abs_tol * factor, max_depth};
    }
};

struct IntegralEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

namespace quad_detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half; the
// rule is symmetric). Odd-indexed Kronrod nodes are the Gauss-7 nodes.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    int depth;
};

struct PanelEval {
    double kronrod = 0.0;
    double gauss = 0.0;
    bool finite = true;
};

template <class F>
PanelEval gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    PanelEval out;
    for (int i = 0; i < 8; ++i) {
        const double offset = half * kNodes[i];
        double fsum;
        if (i == 7) {
            fsum = f(center);
        } else {
            fsum = f(center - offset) + f(center + offset);
        }
        if (!std::isfinite(fsum)) {
            out.finite = false;
            return out;
        }
        out.kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) {
            out.gauss += kGaussWeights[i / 2] * fsum;
        } else if (i == 7) {
            out.gauss += kGaussWeights[3] * fsum;
        }
    }
    out.kronrod *= half;
    out.gauss *= half;
    return out;
}

// Non-finite node values get a few bisections (an isolated bad point may
// sit on a node), but never unbounded splitting: a whole non-finite
// region would otherwise double its panel count per level.
inline constexpr int kNonFiniteDepthLimit = 8;
// Backstop against adversarial integrands whose failing panel set does
// not shrink under bisection.
inline constexpr long kPanelBudget = 200000;

// One adaptive pass against a fixed absolute error budget `tol`,
// distributed across panels in proportion to width.
template <class F>
IntegralEstimate adapt(F& f, double a, double b, double tol, int max_depth) {
    IntegralEstimate total;
    const double width = b - a;
    long processed = 0;
    std::vector<Panel> stack{{a, b, 0}};
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        ++processed;
        const PanelEval eval = gk15(f, p.a, p.b);
        if (!eval.finite) {
            if (p.depth < std::min(max_depth, kNonFiniteDepthLimit) &&
                processed < kPanelBudget) {
                const double mid = 0.5 * (p.a + p.b);
                stack.push_back({p.a, mid, p.depth + 1});
                stack.push_back({mid, p.b, p.depth + 1});
            } else {
                total.error_estimate = std::numeric_limits<double>::infinity();
                total.converged = false;
            }
            continue;
        }
        const double err = std::abs(eval.kronrod - eval.gauss);
        const double share = tol * ((p.b - p.a) / width);
        if (err <= share || p.depth >= max_depth || processed >= kPanelBudget) {
            total.value += eval.kronrod;
            total.error_estimate += err;
            if (err > share) total.converged = false;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        stack.push_back({p.a, mid, p.depth + 1});
        stack.push_back({mid, p.b, p.depth + 1});
    }
    return total;
}

}  // namespace quad_detail

// Adaptive Gauss-Kronrod integration of f over [a, b] with target error
// max(abs_tol, rel_tol * |integral|). Non-convergence is reported, not
// thrown; the caller decides whether the estimate is still usable.
template <class F>
IntegralEstimate integrate_finite(F&& f, double a, double b, const QuadratureSettings& settings) {
    if (!(b >= a)) throw std::invalid_argument("integrate_finite: requires b >= a");
    if (a == b) return {0.0, 0.0, true};

    // Single-panel estimate sets the tolerance scale; one retry if the
    // adaptive result comes out much smaller than that first guess.
    double scale = std::abs(quad_detail::gk15(f, a, b).kronrod);
    IntegralEstimate result;
    for (int pass = 0; pass < 2; ++pass) {
        const double tol = std::max(settings.abs_tol, settings.rel_tol * scale);
        result = quad_detail::adapt(f, a, b, tol, settings.max_depth);
        const double achieved_tol =
            std::max(settings.abs_tol, settings.rel_tol * std::abs(result.value));
        if (!result.converged) break;
        if (result.error_estimate <= achieved_tol) break;
        scale = std::abs(result.value);
    }
    result.converged =
        result.converged &&
        result.error_estimate <=
            std::max(settings.abs_tol, settings.rel_tol * std::abs(result.value));
    return result;
}

// Integration of f over [lower, inf) via the substitution
//   u = (t - lower) / (1 + t - lower),  t = lower + u/(1-u),
// which maps the half-line to [0, 1); the mapped integrand is then fed
// to the adaptive finite-interval rule. Node placement never touches
// u = 1, so f is only ever evaluated at finite arguments.
template <class F>
IntegralEstimate integrate_semi_infinite(F&& f, double lower, const QuadratureSettings& settings) {
    auto mapped = [&f, lower](double u) {
        const double rem = 1.0 - u;
        const double t = lower + u / rem;
        return f(t) / (rem * rem);
    };
    return integrate_finite(mapped, 0.0, 1.0, settings);
}

}  // namespace ehrelay
