#include "rabi/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rabi/laguerre.hpp"

namespace rabi {

double lambda_defining_function(const ModelParams& p, double lambda) {
    return (lambda * p.omega + p.g) +
           p.Omega_r * lambda * std::exp(-2.0 * lambda * lambda);
}

double lambda_defining_function_per_n(const ModelParams& p, double lambda, int n) {
    if (n < 0) throw NegativeDegree("block index " + std::to_string(n));
    const double y = 4.0 * lambda * lambda;
    return (lambda * p.omega + p.g) +
           p.Omega_r * lambda * std::exp(-2.0 * lambda * lambda) *
               laguerre_assoc1(n, y) / (n + 1.0);
}

LambdaSolution lambda_closed_form(const ModelParams& p) {
    validate_params(p);
    LambdaSolution sol;
    sol.method = LambdaMethod::closed_form;
    if (p.g == 0.0) return sol;
    const double r = p.g / (p.omega + p.Omega_r);
    sol.lambda = -p.g / (p.omega + p.Omega_r * std::exp(-2.0 * r * r));
    sol.residual = lambda_defining_function(p, sol.lambda);
    return sol;
}

namespace {

template <typename Fn>
double find_root(const Fn& h, double scale) {
    // h(0) = g >= 0; scan [-1, 0] downward for the first sign change.
    constexpr int kScanSteps = 64;
    double hi = 0.0;
    double h_hi = h(hi);
    double lo = 0.0, h_lo = h_hi;
    bool bracketed = false;
    for (int k = 1; k <= kScanSteps; ++k) {
        lo = -static_cast<double>(k) / kScanSteps;
        h_lo = h(lo);
        if (h_lo == 0.0) return lo;
        if (h_lo < 0.0) {
            bracketed = true;
            break;
        }
        hi = lo;
        h_hi = h_lo;
    }
    if (!bracketed)
        throw NoBracket("no sign change of the displacement condition on [-1, 0]");

    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double h_mid = h(mid);
        if (h_mid == 0.0) return mid;
        if (h_mid < 0.0) {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
            h_hi = h_mid;
        }
    }

    // One derivative-free secant step across the final bracket.
    double best = (std::abs(h_lo) < std::abs(h_hi)) ? lo : hi;
    double h_best = h(best);
    if (h_hi != h_lo) {
        const double sec = hi - h_hi * (hi - lo) / (h_hi - h_lo);
        if (sec <= 0.0 && sec > -1.0 && std::abs(h(sec)) < std::abs(h_best)) {
            best = sec;
            h_best = h(sec);
        }
    }
    (void)scale;
    return best;
}

}  // namespace

LambdaSolution lambda_root(const ModelParams& p) {
    validate_params(p);
    LambdaSolution sol;
    sol.method = LambdaMethod::root_n_independent;
    if (p.g == 0.0) return sol;
    const auto h = [&p](double lam) { return lambda_defining_function(p, lam); };
    const double scale = std::max({p.omega, p.Omega_r, 1.0});
    sol.lambda = find_root(h, scale);
    sol.residual = h(sol.lambda);
    return sol;
}

LambdaSolution lambda_root_per_n(const ModelParams& p, int n) {
    validate_params(p);
    if (n < 0) throw NegativeDegree("block index " + std::to_string(n));
    LambdaSolution sol;
    sol.method = LambdaMethod::root_per_n;
    sol.n = n;
    if (p.g == 0.0) return sol;
    const auto h = [&p, n](double lam) {
        return lambda_defining_function_per_n(p, lam, n);
    };
    const double scale = std::max({p.omega, p.Omega_r, 1.0});
    sol.lambda = find_root(h, scale);
    sol.residual = h(sol.lambda);
    return sol;
}

}  // namespace rabi
