#pragma once

#include <utility>
#include <vector>

#include "rabi/lambda.hpp"
#include "rabi/model.hpp"

namespace rabi {

/// Matrix elements of the displaced-frame Hamiltonian for block n.
struct AnalyticIntermediates {
    double G0 = 1.0;    // diagonal dressing e^{-2 lambda^2} L_n(4 lambda^2)
    double f1 = 0.0;    // co-rotating element 2 lambda e^{-2 lambda^2} L_n^1(4 lambda^2)/(n+1)
    double R_r = 0.0;   // rotating coupling 2 (lambda omega + g)
    double R_ar = 0.0;  // counter-rotating residual (lambda omega + g) + (Omega/2) f1
};

AnalyticIntermediates analytic_intermediates(const ModelParams& p,
                                             const LambdaSolution& lam, int n);

/// 2x2 block of the displaced-frame Hamiltonian in {|+x,n>, |-x,n+1>}.
/// With the standard phases |+-x> = (|up> +- |down>)/sqrt(2) the
/// off-diagonal element is -coupling, coupling >= 0.
struct DressedBlock {
    int n = 0;
    double diag_low = 0.0;   // <+x,n| H |+x,n>
    double diag_high = 0.0;  // <-x,n+1| H |-x,n+1>
    double coupling = 0.0;   // |off-diagonal|, includes the sqrt(n+1) factor
};

DressedBlock dressed_block(const ModelParams& p, const LambdaSolution& lam, int n);

/// E_G = omega lambda^2 + 2 lambda g - (Omega/2) e^{-2 lambda^2}
double ground_energy(const ModelParams& p, const LambdaSolution& lam);

/// Both eigenvalues of dressed_block(n), returned as (E_minus, E_plus).
std::pair<double, double> excited_energies(const ModelParams& p,
                                           const LambdaSolution& lam, int n);

/// Dressing angle of block n in [0, pi/2):
///   tan(2 theta_n) = 2 coupling_n / gap_n,
/// gap_n = omega - (Omega/2) e^{-2 lambda^2} [L_n + L_{n+1}](4 lambda^2),
/// resolved by the two-argument arctangent. coupling_n = 0 (only possible at
/// g = 0, including the doubly degenerate gap_n = 0 case) returns 0 by
/// convention. The E_minus eigenvector is then (cos theta, sin theta).
double mixing_angle(const ModelParams& p, const LambdaSolution& lam, int n);

struct AnalyticLevel {
    int n = 0;
    double E_minus = 0.0;
    double E_plus = 0.0;
    double theta = 0.0;
};

struct AnalyticSpectrum {
    ModelParams params;
    LambdaSolution lambda;
    double ground = 0.0;
    std::vector<AnalyticLevel> levels;       // blocks n = 0 .. n_blocks-1
    std::vector<double> sorted_energies;     // ground plus all pairs, ascending
};

/// Spectrum from n_blocks dressed blocks; lambda defaults to the closed form.
AnalyticSpectrum analytic_spectrum(const ModelParams& p, int n_blocks);
AnalyticSpectrum analytic_spectrum(const ModelParams& p, int n_blocks,
                                   const LambdaSolution& lam);

/// Lab-frame state over the interleaved BasisIndex layout.
struct StateVector {
    std::vector<double> amplitudes;
    int n_max = 0;
    int state_index = 0;  // 0 = ground, m >= 1 = m-th excited

    double norm() const;
};

/// Lab-frame ground state: spin rotation and inverse displacement applied
/// to |0,-x>. Throws TruncationTooSmall if the displaced tail reaches n_max.
StateVector ground_state(const ModelParams& p, const LambdaSolution& lam,
                         int n_max);

/// Lab-frame m-th excited state (m >= 1): odd m takes the E_minus branch of
/// block (m-1)/2, even m the E_plus branch of block (m-2)/2.
StateVector excited_state(const ModelParams& p, const LambdaSolution& lam,
                          int m, int n_max);

/// Ground-state mean photon number, exactly lambda^2.
double mean_photon_ground(const LambdaSolution& lam);

/// <a'a> of excited_state(m), evaluated in closed form from the dressed
/// block (no truncation involved).
double mean_photon_excited(const ModelParams& p, const LambdaSolution& lam, int m);

/// Alternative closed form whose cross term is scaled by sqrt(m+1) (the
/// state label) instead of the block index. Kept for comparison columns;
/// disagrees with the exact oracle away from resonance.
double mean_photon_excited_alt(const ModelParams& p, const LambdaSolution& lam,
                               int m);

/// Bloch-Siegert shift of the lowest transition: (E_minus,0 - E_G) minus the
/// same transition of the Jaynes-Cummings reference with equal parameters.
/// lambda from the closed form.
double bloch_siegert_shift(const ModelParams& p);

}  // namespace rabi
