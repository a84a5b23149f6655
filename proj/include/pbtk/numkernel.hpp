#pragma once

#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pbtk {

using Complex = std::complex<double>;

/// Dense square complex operator. The dimension is rows() == cols().
using Operator = Eigen::MatrixXcd;

/// State vector in a finite-dimensional Hilbert space.
using Ket = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/**
 * Relative threshold used to decide numerical rank, Hermiticity and
 * eigenvalue distinctness.
 *
 * The effective threshold is base_rtol * max(1, kappa) when condition_scale
 * is on and base_rtol otherwise.
 */
struct TolerancePolicy {
    double base_rtol = 1e-10;
    bool condition_scale = false;
    double machine_eps = std::numeric_limits<double>::epsilon();

    double threshold(double condition_estimate = 1.0) const;
};

/// Throws DomainError unless `op` is square, non-empty and finite.
void require_operator(const Operator& op, const char* what = "operator");
/// Throws DomainError unless `k` is non-empty and finite.
void require_ket(const Ket& k, const char* what = "ket");

Operator identity(Eigen::Index dim);

/// |u><v|
Operator outer(const Ket& u, const Ket& v);

/// <u, v>, antilinear in the first slot.
Complex braket(const Ket& u, const Ket& v);

Operator commutator(const Operator& x, const Operator& y);
Operator anticommutator(const Operator& x, const Operator& y);

/// Largest singular value.
double opnorm(const Operator& op);

/// Ratio of extreme singular values; infinity for singular input.
double condition_number(const Operator& op);

/// Distance from Hermiticity, ||A - A^dagger||_2.
double hermiticity_defect(const Operator& op);

/// Multiplies `k` by a unit phase so that its first component with modulus
/// above `rel_cutoff * max|k_i|` is real and positive.
void fix_phase(Ket& k, double rel_cutoff = 1e-8);

/// Operator assembled from columns.
Operator from_columns(const std::vector<Ket>& columns);
std::vector<Ket> to_columns(const Operator& op);

/**
 * Orthonormal basis of the numerical null space of `a`.
 *
 * A right singular vector is kept when its singular value is at most
 * tol.threshold() * sigma_max. The zero matrix returns the canonical basis.
 */
std::vector<Ket> null_space(const Operator& a, const TolerancePolicy& tol = {});

/// Positive square root of a Hermitian positive definite operator.
Operator herm_sqrt(const Operator& p, const TolerancePolicy& tol = {});

/// Inverse of herm_sqrt(p), computed from the same eigen-decomposition.
Operator herm_inv_sqrt(const Operator& p, const TolerancePolicy& tol = {});

struct BiorthogonalEigensystem {
    std::vector<Complex> values;
    std::vector<Ket> right;
    std::vector<Ket> left;
};

/**
 * Eigen-decomposition of a diagonalizable operator with distinct eigenvalues.
 *
 * Right vectors have unit norm and the phase convention of fix_phase; left
 * vectors are the rows of the inverse eigenvector matrix, so that
 * <left_j, right_k> = delta_jk. Values are sorted by real part, then by
 * imaginary part. Throws DefectiveMatrix when two eigenvalues are closer than
 * tol.threshold(kappa) * ||A||, kappa being the eigenvector condition number.
 */
BiorthogonalEigensystem eig_biorthogonal(const Operator& a, const TolerancePolicy& tol = {});

/// Gauss-Legendre nodes and weights on [lo, hi].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double lo, double hi);

}  // namespace pbtk
