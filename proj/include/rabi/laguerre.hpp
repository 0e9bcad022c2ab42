#pragma once

namespace rabi {

/// Laguerre polynomial L_n(x) by the forward three-term recurrence
///   (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1},  L_0 = 1, L_1 = 1 - x.
/// Forward-stable for x >= 0; exercised envelope is n <= 512, x <= 50.
/// Throws NegativeDegree for n < 0.
double laguerre(int n, double x);

/// Associated Laguerre polynomial L_n^1(x) by the direct recurrence
///   (k+1) L_{k+1}^1 = (2k+2-x) L_k^1 - (k+1) L_{k-1}^1,  L_0^1 = 1,
///   L_1^1 = 2 - x.
/// Equals the partial sum of L_k(x) for k = 0..n; L_n^1(0) = n + 1.
double laguerre_assoc1(int n, double x);

}  // namespace rabi
