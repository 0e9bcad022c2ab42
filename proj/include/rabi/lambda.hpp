#pragma once

#include "rabi/model.hpp"

namespace rabi {

enum class LambdaMethod { closed_form, root_n_independent, root_per_n };

/// The dimensionless displacement parameter of the polaron-style frame
/// transformation U = exp[lambda sigma_z (a' - a)]. The sign convention is
/// lambda <= 0 for g >= 0; lambda = 0 iff g = 0.
struct LambdaSolution {
    double lambda = 0.0;
    LambdaMethod method = LambdaMethod::closed_form;
    int n = 0;              // block index, meaningful for root_per_n only
    double residual = 0.0;  // defining_function at the returned lambda
};

/// Left-hand side of the displacement condition for block n:
///   (lambda omega + g) + Omega lambda e^{-2 lambda^2} L_n^1(4 lambda^2)/(n+1)
/// The n-independent form replaces L_n^1(4 lambda^2) by n+1.
double lambda_defining_function(const ModelParams& p, double lambda);
double lambda_defining_function_per_n(const ModelParams& p, double lambda, int n);

/// Closed-form approximation
///   lambda = -g / (omega + Omega exp[-2 (g/(omega+Omega))^2]).
/// The residual field reports its defect in the n-independent condition.
LambdaSolution lambda_closed_form(const ModelParams& p);

/// Root of the n-independent condition in (-1, 0], found by a sign-change
/// bracket scan, bisection, and a final secant polish.
/// |residual| <= 1e-12 max(omega, Omega, 1). Throws NoBracket if the scan
/// fails (not expected for valid parameters).
LambdaSolution lambda_root(const ModelParams& p);

/// Root of the full block-n condition; coincides with lambda_root at n = 0.
LambdaSolution lambda_root_per_n(const ModelParams& p, int n);

}  // namespace rabi
