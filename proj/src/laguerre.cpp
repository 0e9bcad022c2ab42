#include "rabi/laguerre.hpp"

#include <string>

#include "rabi/errors.hpp"

namespace rabi {

double laguerre(int n, double x) {
    if (n < 0) throw NegativeDegree("laguerre degree " + std::to_string(n));
    if (n == 0) return 1.0;
    double prev = 1.0;        // L_0
    double curr = 1.0 - x;    // L_1
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * curr - k * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

double laguerre_assoc1(int n, double x) {
    if (n < 0) throw NegativeDegree("laguerre_assoc1 degree " + std::to_string(n));
    if (n == 0) return 1.0;
    double prev = 1.0;        // L_0^1
    double curr = 2.0 - x;    // L_1^1
    for (int k = 1; k < n; ++k) {
        const double next =
            ((2.0 * k + 2.0 - x) * curr - (k + 1.0) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

}  // namespace rabi
