#pragma once

#include <vector>

#include "rabi/model.hpp"

namespace rabi {

/// Dense real matrix, row-major. Small sizes only; no view semantics.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    static DenseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double operator()(int i, int j) const { return data_[idx(i, j)]; }
    double& operator()(int i, int j) { return data_[idx(i, j)]; }

    DenseMatrix multiply(const DenseMatrix& rhs) const;
    std::vector<double> apply(const std::vector<double>& v) const;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * cols_ + j;
    }
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Dense real symmetric matrix; set() writes both triangles so symmetry is
/// exact by construction.
class DenseSymMatrix {
public:
    explicit DenseSymMatrix(int dim) : dim_(dim),
        data_(static_cast<std::size_t>(dim) * dim, 0.0) {}

    int dim() const { return dim_; }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * dim_ + j];
    }
    void set(int i, int j, double v) {
        data_[static_cast<std::size_t>(i) * dim_ + j] = v;
        data_[static_cast<std::size_t>(j) * dim_ + i] = v;
    }
    void add(int i, int j, double v) { set(i, j, (*this)(i, j) + v); }

    std::vector<double> apply(const std::vector<double>& v) const;
    double frobenius_norm() const;
    double trace() const;
    const std::vector<double>& data() const { return data_; }

private:
    int dim_;
    std::vector<double> data_;
};

/// Eigendecomposition result plus truncation metadata (the latter filled by
/// exact_spectrum; eigen_decompose leaves n_max = 0).
struct ExactSpectrum {
    std::vector<double> eigenvalues;                // ascending
    std::vector<std::vector<double>> eigenvectors;  // empty unless requested
    int n_max = 0;
    bool converged = true;
    double convergence_defect = 0.0;
};

/// Rabi Hamiltonian on the truncated Fock x spin basis (interleaved
/// BasisIndex layout, dimension 2(n_max+1), bandwidth 3).
/// Throws DimensionOverflow for n_max > 4096.
DenseSymMatrix build_hamiltonian(const ModelParams& p, int n_max);

/// In-repo dense symmetric eigensolver: Householder tridiagonalization
/// followed by implicit-shift QL iteration. Eigenvalues ascending;
/// eigenvectors orthonormal with ||H v - E v|| <= 1e-10 ||H||_F.
/// Throws NoConvergence if any eigenvalue fails to settle in 50 sweeps.
ExactSpectrum eigen_decompose(const DenseSymMatrix& h, bool want_vectors);

/// Converged Rabi spectrum: diagonalize at start_n_max, double the
/// truncation until the lowest k_levels eigenvalues move by less than tol
/// (tol <= 0 selects the default 1e-10 omega). Throws NoConvergence once the
/// truncation would exceed max_n_max.
ExactSpectrum exact_spectrum(const ModelParams& p, int k_levels,
                             double tol = -1.0, bool want_vectors = true,
                             int start_n_max = 60, int max_n_max = 4096);

/// <a'a> of a unit-norm vector over the interleaved basis.
double mean_photon(const std::vector<double>& v);

/// <sigma_z (-1)^N>, the Z2 parity; in [-1, 1], equal to +-1 on
/// nondegenerate eigenvectors of the Rabi Hamiltonian.
double parity_expectation(const std::vector<double>& v);

/// Fock-space displacement exp[-lambda s (a' - a)] for one spin branch
/// (s = +1 up, -1 down), built by scaling-and-squaring the antisymmetric
/// generator. Exactly orthogonal up to roundoff; matches the true
/// displacement only on columns whose displaced image fits under n_max.
/// Throws TruncationTooSmall when low columns leak into the top row.
DenseMatrix displacement_operator(double lambda, int spin_sign, int n_max);

}  // namespace rabi
