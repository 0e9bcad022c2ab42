#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rabi/errors.hpp"
#include "rabi/lambda.hpp"

using namespace rabi;

namespace {

// Independent oracle: plain bisection on [-1, 0], 200 halvings, no polish.
// Assumes h(-1) < 0 <= h(0), which holds for all tested parameters.
template <typename Fn>
double bisect_oracle(const Fn& h) {
    double lo = -1.0, hi = 0.0;
    REQUIRE(h(lo) < 0.0);
    REQUIRE(h(hi) >= 0.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double residual_scale(const ModelParams& p) {
    return std::max({p.omega, p.Omega_r, 1.0});
}

}  // namespace

TEST_CASE("closed form at zero coupling") {
    const LambdaSolution sol = lambda_closed_form({1.0, 1.0, 0.0});
    CHECK(sol.lambda == 0.0);
    CHECK(sol.residual == 0.0);
}

TEST_CASE("closed form, resonant point") {
    const LambdaSolution sol = lambda_closed_form({1.0, 1.0, 0.1});
    // scalar oracle in extended precision
    const long double r = 0.1L / 2.0L;
    const long double ref = -0.1L / (1.0L + std::exp(-2.0L * r * r));
    CHECK(sol.lambda == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
    CHECK(sol.lambda == doctest::Approx(-0.0501250).epsilon(2e-6));
}

TEST_CASE("closed form, circuit parameters") {
    const LambdaSolution sol = lambda_closed_form({8.13, 4.25, 0.813});
    const long double r = 0.813L / (8.13L + 4.25L);
    const long double ref =
        -0.813L / (8.13L + 4.25L * std::exp(-2.0L * r * r));
    CHECK(sol.lambda == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
    CHECK(std::abs(sol.lambda - (-0.06587)) < 1e-5);
}

TEST_CASE("root solver, zero coupling short-circuits") {
    const LambdaSolution sol = lambda_root({1.0, 1.0, 0.0});
    CHECK(sol.lambda == 0.0);
    CHECK(sol.residual == 0.0);
}

TEST_CASE("root solver against bisection oracle") {
    for (double Omega : {0.5, 1.0, 1.5, 2.0})
        for (double g : {0.05, 0.1, 0.3, 0.5}) {
            const ModelParams p{1.0, Omega, g};
            const LambdaSolution sol = lambda_root(p);
            const double ref = bisect_oracle(
                [&p](double lam) { return lambda_defining_function(p, lam); });
            CHECK(std::abs(sol.lambda - ref) <= 1e-12);
            CHECK(std::abs(sol.residual) <= 1e-12 * residual_scale(p));
            CHECK(sol.lambda > -1.0);
            CHECK(sol.lambda < 0.0);
        }
}

TEST_CASE("root solver, resonant frozen value") {
    const LambdaSolution sol = lambda_root({1.0, 1.0, 0.1});
    CHECK(sol.lambda == doctest::Approx(-0.0501256).epsilon(2e-6));
    CHECK(std::abs(sol.residual) <= 1e-12);
}

TEST_CASE("root solver residual contract off resonance") {
    const ModelParams p{1.0, 1.5, 0.3};
    const LambdaSolution sol = lambda_root(p);
    CHECK(std::abs(lambda_defining_function(p, sol.lambda)) <= 1e-12);
}

TEST_CASE("per-block root at n = 0 coincides with the n-independent root") {
    for (double g : {0.05, 0.2, 0.5}) {
        const ModelParams p{1.0, 1.0, g};
        CHECK(std::abs(lambda_root_per_n(p, 0).lambda - lambda_root(p).lambda) <=
              1e-13);
    }
}

TEST_CASE("per-block root stays close to the n-independent root") {
    const ModelParams p{1.0, 1.0, 0.1};
    const LambdaSolution per3 = lambda_root_per_n(p, 3);
    const LambdaSolution base = lambda_root(p);
    CHECK(std::abs(per3.lambda - base.lambda) < 1e-3);
    CHECK(std::abs(per3.residual) <= 1e-12 * residual_scale(p));
    const double oracle = bisect_oracle([&p](double lam) {
        return lambda_defining_function_per_n(p, lam, 3);
    });
    CHECK(std::abs(per3.lambda - oracle) <= 1e-12);
}

TEST_CASE("per-block root, zero coupling for every n") {
    for (int n : {0, 1, 5, 17})
        CHECK(lambda_root_per_n({1.0, 1.0, 0.0}, n).lambda == 0.0);
}

TEST_CASE("bracket validity of the defining function") {
    for (double Omega : {0.0, 0.5, 1.0, 1.5, 2.0})
        for (double g : {0.0, 0.1, 0.3, 0.5})
            for (int n : {0, 1, 2, 5}) {
                const ModelParams p{1.0, Omega, g};
                CHECK(lambda_defining_function_per_n(p, 0.0, n) >= 0.0);
                CHECK(lambda_defining_function_per_n(p, -1.0, n) < 0.0);
            }
}

TEST_CASE("closed form tracks the root within 5 percent") {
    for (double Omega : {0.1, 0.5, 1.0, 1.5, 2.0})
        for (double g : {0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
            const ModelParams p{1.0, Omega, g};
            const double cf = lambda_closed_form(p).lambda;
            const double rt = lambda_root(p).lambda;
            CHECK(std::abs(cf - rt) <= 0.05 * std::abs(rt) + 1e-6);
        }
}

TEST_CASE("weak-coupling limit") {
    for (double Omega : {0.5, 1.0, 2.0}) {
        const ModelParams p{1.0, Omega, 1e-4};
        const double limit = -p.g / (p.omega + p.Omega_r);
        CHECK(lambda_root(p).lambda / limit == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(lambda_closed_form(p).lambda / limit ==
              doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("methods are labeled") {
    CHECK(lambda_closed_form({1, 1, 0.1}).method == LambdaMethod::closed_form);
    CHECK(lambda_root({1, 1, 0.1}).method == LambdaMethod::root_n_independent);
    const LambdaSolution per = lambda_root_per_n({1, 1, 0.1}, 4);
    CHECK(per.method == LambdaMethod::root_per_n);
    CHECK(per.n == 4);
}
