#include "rabi/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rabi/errors.hpp"
#include "rabi/exact.hpp"
#include "rabi/laguerre.hpp"

namespace rabi {

AnalyticIntermediates analytic_intermediates(const ModelParams& p,
                                             const LambdaSolution& lam, int n) {
    if (n < 0) throw NegativeDegree("block index " + std::to_string(n));
    const double l = lam.lambda;
    const double y = 4.0 * l * l;
    const double damp = std::exp(-2.0 * l * l);
    AnalyticIntermediates out;
    out.G0 = damp * laguerre(n, y);
    out.f1 = 2.0 * l * damp * laguerre_assoc1(n, y) / (n + 1.0);
    out.R_r = 2.0 * (l * p.omega + p.g);
    out.R_ar = (l * p.omega + p.g) + 0.5 * p.Omega_r * out.f1;
    return out;
}

DressedBlock dressed_block(const ModelParams& p, const LambdaSolution& lam, int n) {
    if (n < 0) throw NegativeDegree("block index " + std::to_string(n));
    const double l = lam.lambda;
    const double y = 4.0 * l * l;
    const double damp = std::exp(-2.0 * l * l);
    const double offset = p.omega * l * l + 2.0 * l * p.g;

    DressedBlock blk;
    blk.n = n;
    blk.diag_low = n * p.omega + offset + 0.5 * p.Omega_r * damp * laguerre(n, y);
    blk.diag_high =
        (n + 1) * p.omega + offset - 0.5 * p.Omega_r * damp * laguerre(n + 1, y);
    blk.coupling = (l * p.omega + p.g) * std::sqrt(n + 1.0) -
                   p.Omega_r * l * damp * laguerre_assoc1(n, y) / std::sqrt(n + 1.0);
    return blk;
}

double ground_energy(const ModelParams& p, const LambdaSolution& lam) {
    const double l = lam.lambda;
    return p.omega * l * l + 2.0 * l * p.g -
           0.5 * p.Omega_r * std::exp(-2.0 * l * l);
}

std::pair<double, double> excited_energies(const ModelParams& p,
                                           const LambdaSolution& lam, int n) {
    const DressedBlock blk = dressed_block(p, lam, n);
    const double mean = 0.5 * (blk.diag_low + blk.diag_high);
    const double gap = blk.diag_high - blk.diag_low;
    const double half =
        0.5 * std::sqrt(gap * gap + 4.0 * blk.coupling * blk.coupling);
    return {mean - half, mean + half};
}

double mixing_angle(const ModelParams& p, const LambdaSolution& lam, int n) {
    const DressedBlock blk = dressed_block(p, lam, n);
    if (blk.coupling == 0.0) return 0.0;
    const double gap = blk.diag_high - blk.diag_low;
    return 0.5 * std::atan2(2.0 * blk.coupling, gap);
}

AnalyticSpectrum analytic_spectrum(const ModelParams& p, int n_blocks) {
    return analytic_spectrum(p, n_blocks, lambda_closed_form(p));
}

AnalyticSpectrum analytic_spectrum(const ModelParams& p, int n_blocks,
                                   const LambdaSolution& lam) {
    validate_params(p);
    if (n_blocks < 1) throw Error("n_blocks must be >= 1");
    AnalyticSpectrum spec;
    spec.params = p;
    spec.lambda = lam;
    spec.ground = ground_energy(p, lam);
    spec.levels.reserve(static_cast<std::size_t>(n_blocks));
    spec.sorted_energies.reserve(1 + 2 * static_cast<std::size_t>(n_blocks));
    spec.sorted_energies.push_back(spec.ground);
    for (int n = 0; n < n_blocks; ++n) {
        const auto [lo, hi] = excited_energies(p, lam, n);
        spec.levels.push_back({n, lo, hi, mixing_angle(p, lam, n)});
        spec.sorted_energies.push_back(lo);
        spec.sorted_energies.push_back(hi);
    }
    std::sort(spec.sorted_energies.begin(), spec.sorted_energies.end());
    return spec;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (double a : amplitudes) acc += a * a;
    return std::sqrt(acc);
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Applies the inverse frame transformation (per-spin displacement, then the
// sigma_y pi/2 rotation) to a state given by Fock coefficients on the two
// sigma_x branches, and interleaves the result.
StateVector to_lab_frame(const LambdaSolution& lam,
                         const std::vector<double>& plus_x,
                         const std::vector<double>& minus_x, int n_max,
                         int state_index) {
    const int fock = n_max + 1;
    std::vector<double> v_up(static_cast<std::size_t>(fock), 0.0);
    std::vector<double> v_dn(static_cast<std::size_t>(fock), 0.0);
    for (int n = 0; n < fock; ++n) {
        v_up[n] = (plus_x[n] + minus_x[n]) * kInvSqrt2;
        v_dn[n] = (plus_x[n] - minus_x[n]) * kInvSqrt2;
    }
    if (lam.lambda != 0.0) {
        v_up = displacement_operator(lam.lambda, +1, n_max).apply(v_up);
        v_dn = displacement_operator(lam.lambda, -1, n_max).apply(v_dn);
    }

    StateVector out;
    out.n_max = n_max;
    out.state_index = state_index;
    out.amplitudes.assign(static_cast<std::size_t>(basis_dimension(n_max)), 0.0);
    for (int n = 0; n < fock; ++n) {
        out.amplitudes[2 * n] = (v_up[n] + v_dn[n]) * kInvSqrt2;
        out.amplitudes[2 * n + 1] = (-v_up[n] + v_dn[n]) * kInvSqrt2;
    }

    const double tail = std::max(std::abs(out.amplitudes[2 * n_max]),
                                 std::abs(out.amplitudes[2 * n_max + 1]));
    if (tail > 1e-10)
        throw TruncationTooSmall("state tail " + std::to_string(tail) +
                                 " at the Fock cutoff; raise n_max");
    return out;
}

}  // namespace

StateVector ground_state(const ModelParams& p, const LambdaSolution& lam,
                         int n_max) {
    validate_params(p);
    if (n_max < 1) throw Error("n_max must be >= 1");
    const int fock = n_max + 1;
    std::vector<double> plus_x(static_cast<std::size_t>(fock), 0.0);
    std::vector<double> minus_x(static_cast<std::size_t>(fock), 0.0);
    minus_x[0] = 1.0;
    return to_lab_frame(lam, plus_x, minus_x, n_max, 0);
}

StateVector excited_state(const ModelParams& p, const LambdaSolution& lam,
                          int m, int n_max) {
    validate_params(p);
    if (m < 1) throw Error("excited index m must be >= 1");
    if (n_max < 1) throw Error("n_max must be >= 1");
    const bool minus_branch = (m % 2 == 1);
    const int block = minus_branch ? (m - 1) / 2 : (m - 2) / 2;
    if (block + 1 > n_max)
        throw TruncationTooSmall("block " + std::to_string(block) +
                                 " does not fit under n_max " +
                                 std::to_string(n_max));
    const double theta = mixing_angle(p, lam, block);
    const int fock = n_max + 1;
    std::vector<double> plus_x(static_cast<std::size_t>(fock), 0.0);
    std::vector<double> minus_x(static_cast<std::size_t>(fock), 0.0);
    if (minus_branch) {
        plus_x[block] = std::cos(theta);
        minus_x[block + 1] = std::sin(theta);
    } else {
        plus_x[block] = -std::sin(theta);
        minus_x[block + 1] = std::cos(theta);
    }
    return to_lab_frame(lam, plus_x, minus_x, n_max, m);
}

double mean_photon_ground(const LambdaSolution& lam) {
    return lam.lambda * lam.lambda;
}

double mean_photon_excited(const ModelParams& p, const LambdaSolution& lam,
                           int m) {
    if (m < 1) throw Error("excited index m must be >= 1");
    const double l = lam.lambda;
    if (m % 2 == 1) {
        const int mu = (m - 1) / 2;
        const double th = mixing_angle(p, lam, mu);
        const double s = std::sin(th), c = std::cos(th);
        return mu + s * s + l * l - 2.0 * l * s * c * std::sqrt(mu + 1.0);
    }
    const int nu = (m - 2) / 2;
    const double th = mixing_angle(p, lam, nu);
    const double s = std::sin(th), c = std::cos(th);
    return nu + c * c + l * l + 2.0 * l * s * c * std::sqrt(nu + 1.0);
}

double mean_photon_excited_alt(const ModelParams& p, const LambdaSolution& lam,
                               int m) {
    if (m < 1) throw Error("excited index m must be >= 1");
    const double l = lam.lambda;
    if (m % 2 == 1) {
        const int mu = (m - 1) / 2;
        const double th = mixing_angle(p, lam, mu);
        const double s = std::sin(th), c = std::cos(th);
        return mu + l * l + c * c + 2.0 * l * s * c * std::sqrt(m + 1.0);
    }
    const int nu = (m - 2) / 2;
    const double th = mixing_angle(p, lam, nu);
    const double s = std::sin(th), c = std::cos(th);
    return nu + l * l + s * s - 2.0 * l * s * c * std::sqrt(m + 1.0);
}

double bloch_siegert_shift(const ModelParams& p) {
    validate_params(p);
    const LambdaSolution lam = lambda_closed_form(p);
    const double rabi_transition =
        excited_energies(p, lam, 0).first - ground_energy(p, lam);
    const JCReference jc = jc_energies(p, 1);
    const double jc_transition = jc.doublets[0].first - jc.ground_energy;
    return rabi_transition - jc_transition;
}

}  // namespace rabi
