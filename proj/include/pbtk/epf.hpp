#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pbtk/numkernel.hpp"
#include "pbtk/report.hpp"

namespace pbtk::epf {

/// M + 1 linearly independent vectors h_0 ... h_M of C^{M+1}.
struct EpfBasis {
    int M = 0;
    std::vector<Ket> h;

    /// Columns h_k. Throws DomainError unless M >= 0, there are M+1 finite
    /// vectors of length M+1 and the matrix is numerically invertible.
    Operator matrix() const;

    static EpfBasis standard(int M);
    static EpfBasis from_matrix(const Operator& columns);
};

struct Ladder {
    Operator a;  // a h_k = sqrt(k) h_{k-1}
    Operator b;  // b h_k = sqrt(k+1) h_{k+1}, b h_M = 0
};

struct EpfSystem {
    EpfBasis basis;
    std::vector<Ket> g;       // dual family, <g_j, h_k> = delta_jk
    Operator a, b;
    Operator N;               // b a
    Operator Sh;              // sum |h_k><h_k|
    Operator Sg;              // sum |g_k><g_k|
    Operator n_sa;            // Sg^{1/2} N Sh^{1/2}, self-adjoint
    std::vector<Ket> c;       // Sg^{1/2} h_k, orthonormal
    std::vector<double> alpha;
    double kappa = 1.0;       // condition number of the basis matrix
};

/// Condition number above which metric identities are flagged as unreliable.
inline constexpr double kConditioningWarning = 1e6;

/// Dual family from the inverse adjoint of the basis matrix.
std::vector<Ket> epf_dual(const EpfBasis& basis);

/// Dual family by iteration: g_0 orthogonal to h_1..h_M with <g_0, h_0> = 1,
/// then g_k = a^dagger g_{k-1} / sqrt(k). The lowering operator used here is
/// assembled by an LU solve, independently of epf_dual.
std::vector<Ket> epf_dual_iterative(const EpfBasis& basis);

Ladder epf_ladder(const EpfBasis& basis);

EpfSystem epf_system(const EpfBasis& basis);

struct AnticommutatorTable {
    std::vector<double> alpha;   // Re <g_k, {a,b} h_k>
    double offdiag = 0.0;        // largest |<g_j, {a,b} h_k>|, j != k
    double imag = 0.0;           // largest |Im alpha_k|
    double law = 0.0;            // largest |alpha_k - expected_alpha(M, k)|
};

/// Coefficients of {a, b} in the pairing sum_k alpha_k |g_k><h_k|.
AnticommutatorTable epf_anticommutator(const EpfSystem& sys);

/// 2k + 1 for k < M and M for k = M.
double expected_alpha(int M, int k);

/// Residual report for the extended pseudo-fermion identities. Metric
/// identities use tol * kappa, products of metrics tol * kappa^2.
VerificationReport epf_verify(const EpfSystem& sys, double tol);

/// Complex Gaussian basis redrawn until its condition number is at most kappa_max.
EpfBasis random_basis(int M, std::mt19937_64& rng, double kappa_max = 1e3);

}  // namespace pbtk::epf
