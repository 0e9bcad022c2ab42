#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rabi/errors.hpp"

namespace rabi {

/// Physical parameters of the quantum Rabi model
///   H = omega a'a + (Omega_r/2) sigma_z + g sigma_x (a' + a)
/// All three values share one energy unit (hbar = 1). Spectra depend on g
/// only through g^2, so g is canonicalized to g >= 0.
struct ModelParams {
    double omega = 1.0;    // oscillator frequency, > 0
    double Omega_r = 1.0;  // two-level resonant frequency, >= 0
    double g = 0.0;        // interaction strength, >= 0
};

// Throws NonPositiveOmega / NegativeResonance / NegativeCoupling.
ModelParams validate_params(const ModelParams& p);

enum class Spin { up, down };

/// Index into the truncated Fock x spin basis. States are interleaved:
/// flat = 2n + (0 for up, 1 for down), so the Hamiltonian is banded.
struct BasisIndex {
    Spin spin = Spin::up;
    int n = 0;

    int flat_index() const { return 2 * n + (spin == Spin::up ? 0 : 1); }
    static BasisIndex from_flat(int flat) {
        return BasisIndex{(flat % 2 == 0) ? Spin::up : Spin::down, flat / 2};
    }
};

inline int basis_dimension(int n_max) { return 2 * (n_max + 1); }

/// Jaynes-Cummings reference spectrum (rotating-wave approximation of the
/// Rabi model with the same parameters). Exact by block diagonalization in
/// the subspaces {|up,n>, |down,n+1>}.
struct JCReference {
    double ground_energy = 0.0;
    // doublets[n] = ascending pair of eigenvalues of the n-th 2x2 block
    std::vector<std::pair<double, double>> doublets;

    // Lowest `count` JC energies in ascending order (ground included).
    std::vector<double> sorted_energies(std::size_t count) const;
};

JCReference jc_energies(const ModelParams& p, int n_levels);

}  // namespace rabi
