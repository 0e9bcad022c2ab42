#include "rabi/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rabi/errors.hpp"

namespace rabi {

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& rhs) const {
    DenseMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < rhs.cols_; ++j)
                out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

std::vector<double> DenseMatrix::apply(const std::vector<double>& v) const {
    std::vector<double> out(static_cast<std::size_t>(rows_), 0.0);
    for (int i = 0; i < rows_; ++i) {
        double acc = 0.0;
        for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

std::vector<double> DenseSymMatrix::apply(const std::vector<double>& v) const {
    std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
    for (int i = 0; i < dim_; ++i) {
        double acc = 0.0;
        const double* row = data_.data() + static_cast<std::size_t>(i) * dim_;
        for (int j = 0; j < dim_; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

double DenseSymMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (double x : data_) acc += x * x;
    return std::sqrt(acc);
}

double DenseSymMatrix::trace() const {
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i) acc += (*this)(i, i);
    return acc;
}

DenseSymMatrix build_hamiltonian(const ModelParams& p, int n_max) {
    validate_params(p);
    if (n_max < 1) throw Error("n_max must be >= 1");
    if (n_max > 4096)
        throw DimensionOverflow("n_max " + std::to_string(n_max) + " exceeds 4096");
    DenseSymMatrix h(basis_dimension(n_max));
    for (int n = 0; n <= n_max; ++n) {
        h.set(2 * n, 2 * n, n * p.omega + 0.5 * p.Omega_r);
        h.set(2 * n + 1, 2 * n + 1, n * p.omega - 0.5 * p.Omega_r);
    }
    // sigma_x flips spin: |up,n> <-> |down,n+1> and |down,n> <-> |up,n+1>
    for (int n = 0; n < n_max; ++n) {
        const double el = p.g * std::sqrt(n + 1.0);
        h.set(2 * n, 2 * n + 3, el);
        h.set(2 * n + 1, 2 * n + 2, el);
    }
    return h;
}

namespace {

// Householder reduction of a symmetric matrix (flat row-major buffer) to
// tridiagonal form: d = diagonal, e[i] = subdiagonal element (i, i-1),
// e[0] = 0. With accumulate, `a` is overwritten by the orthogonal matrix Q
// such that Q^T A Q is tridiagonal.
void householder_tridiag(std::vector<double>& a, int n, std::vector<double>& d,
                         std::vector<double>& e, bool accumulate) {
    auto at = [&a, n](int i, int j) -> double& {
        return a[static_cast<std::size_t>(i) * n + j];
    };
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    if (accumulate) at(j, i) = at(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = at(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (int k = 0; k <= j; ++k)
                        at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    if (accumulate) {
        for (int i = 0; i < n; ++i) {
            const int l = i - 1;
            if (d[i] != 0.0) {
                for (int j = 0; j <= l; ++j) {
                    double g = 0.0;
                    for (int k = 0; k <= l; ++k) g += at(i, k) * at(k, j);
                    for (int k = 0; k <= l; ++k) at(k, j) -= g * at(k, i);
                }
            }
            d[i] = at(i, i);
            at(i, i) = 1.0;
            for (int j = 0; j <= l; ++j) at(j, i) = at(i, j) = 0.0;
        }
    } else {
        for (int i = 0; i < n; ++i) d[i] = at(i, i);
    }
}

// Implicit-shift QL iteration on a tridiagonal matrix. On exit d holds the
// (unsorted) eigenvalues; if accumulate, the columns of z (initialized to
// the tridiagonalizing Q, or the identity) become the eigenvectors.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e,
                std::vector<double>& z, int n, bool accumulate) {
    auto zat = [&z, n](int i, int j) -> double& {
        return z[static_cast<std::size_t>(i) * n + j];
    };
    constexpr int kMaxSweeps = 50;
    const double eps = std::numeric_limits<double>::epsilon();

    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == kMaxSweeps)
                    throw NoConvergence("QL iteration stalled at eigenvalue " +
                                        std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (accumulate) {
                        for (int k = 0; k < n; ++k) {
                            f = zat(k, i + 1);
                            zat(k, i + 1) = s * zat(k, i) + c * f;
                            zat(k, i) = c * zat(k, i) - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

ExactSpectrum eigen_decompose(const DenseSymMatrix& h, bool want_vectors) {
    const int n = h.dim();
    std::vector<double> a = h.data();
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    householder_tridiag(a, n, d, e, want_vectors);
    if (want_vectors) {
        tridiag_ql(d, e, a, n, true);
    } else {
        std::vector<double> unused;
        tridiag_ql(d, e, unused, n, false);
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&d](int i, int j) { return d[i] < d[j]; });

    ExactSpectrum spec;
    spec.eigenvalues.reserve(static_cast<std::size_t>(n));
    for (int k : order) spec.eigenvalues.push_back(d[k]);
    if (want_vectors) {
        spec.eigenvectors.reserve(static_cast<std::size_t>(n));
        for (int k : order) {
            std::vector<double> col(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                col[i] = a[static_cast<std::size_t>(i) * n + k];
            spec.eigenvectors.push_back(std::move(col));
        }
    }
    return spec;
}

ExactSpectrum exact_spectrum(const ModelParams& p, int k_levels, double tol,
                             bool want_vectors, int start_n_max, int max_n_max) {
    validate_params(p);
    if (k_levels < 1) throw Error("k_levels must be >= 1");
    if (tol <= 0.0) tol = 1e-10 * p.omega;

    int n_max = std::max(start_n_max, (k_levels + 1) / 2);
    auto levels = [&p, k_levels](int nm) {
        auto s = eigen_decompose(build_hamiltonian(p, nm), false);
        s.eigenvalues.resize(static_cast<std::size_t>(
            std::min<std::size_t>(s.eigenvalues.size(), k_levels)));
        return s.eigenvalues;
    };

    std::vector<double> prev = levels(n_max);
    for (;;) {
        const int doubled = 2 * n_max;
        if (doubled > max_n_max)
            throw NoConvergence("truncation exceeded n_max " +
                                std::to_string(max_n_max) +
                                " without eigenvalue convergence");
        std::vector<double> next = levels(doubled);
        double defect = 0.0;
        for (int k = 0; k < k_levels; ++k)
            defect = std::max(defect, std::abs(next[k] - prev[k]));
        if (defect <= tol) {
            ExactSpectrum spec = eigen_decompose(build_hamiltonian(p, doubled),
                                                 want_vectors);
            spec.n_max = doubled;
            spec.converged = true;
            spec.convergence_defect = defect;
            return spec;
        }
        n_max = doubled;
        prev = std::move(next);
    }
}

double mean_photon(const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        acc += static_cast<double>(i / 2) * v[i] * v[i];
    return acc;
}

double parity_expectation(const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int n = static_cast<int>(i / 2);
        const double spin = (i % 2 == 0) ? 1.0 : -1.0;
        const double sign = (n % 2 == 0) ? spin : -spin;
        acc += sign * v[i] * v[i];
    }
    return acc;
}

DenseMatrix displacement_operator(double lambda, int spin_sign, int n_max) {
    if (spin_sign != 1 && spin_sign != -1)
        throw Error("spin_sign must be +1 or -1");
    if (!(std::abs(lambda) < 1.0))
        throw Error("|lambda| must be < 1, got " + std::to_string(lambda));
    const int dim = n_max + 1;
    const double alpha = -lambda * spin_sign;  // generator alpha (a' - a)

    DenseMatrix gen(dim, dim);
    for (int n = 0; n < dim - 1; ++n) {
        const double s = alpha * std::sqrt(n + 1.0);
        gen(n + 1, n) = s;
        gen(n, n + 1) = -s;
    }

    // Scale so the 1-norm is <= 1/4, exponentiate by Taylor series, square
    // back. The generator is antisymmetric, so the result is orthogonal to
    // roundoff regardless of truncation.
    double norm1 = 0.0;
    for (int j = 0; j < dim; ++j) {
        double col = 0.0;
        for (int i = 0; i < dim; ++i) col += std::abs(gen(i, j));
        norm1 = std::max(norm1, col);
    }
    int squarings = 0;
    while (norm1 > 0.25) {
        norm1 *= 0.5;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    DenseMatrix b(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b(i, j) = gen(i, j) * scale;

    DenseMatrix result = DenseMatrix::identity(dim);
    DenseMatrix term = DenseMatrix::identity(dim);
    constexpr int kTaylorOrder = 16;
    for (int k = 1; k <= kTaylorOrder; ++k) {
        term = term.multiply(b);
        const double inv = 1.0 / k;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) term(i, j) *= inv;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) result(i, j) += term(i, j);
    }
    for (int k = 0; k < squarings; ++k) result = result.multiply(result);

    // Leakage certificate: columns in the lower half of the space must not
    // reach the top row.
    double leakage = 0.0;
    for (int j = 0; j <= n_max / 2; ++j)
        leakage = std::max(leakage, std::abs(result(n_max, j)));
    if (leakage > 1e-8)
        throw TruncationTooSmall("displacement leaks " + std::to_string(leakage) +
                                 " into the top Fock level; raise n_max");
    return result;
}

}  // namespace rabi
