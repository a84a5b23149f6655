#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "pbtk/numkernel.hpp"
#include "pbtk/report.hpp"

namespace pbtk::dpb {

/// Fock space truncated at occupation N (dimension N + 1).
struct TruncatedFock {
    int cutoff = 0;
    Operator c;  // superdiagonal sqrt(1), ..., sqrt(N)

    static TruncatedFock make(int cutoff);
    Eigen::Index dim() const { return cutoff + 1; }
};

// Similarity specifications -------------------------------------------------

struct IdentitySpec {};

struct DiagonalSpec {
    std::vector<Complex> entries;  // must have cutoff + 1 entries
};

/// Haar-like unitaries around log-uniform singular values in [1, kappa], with
/// the extremes pinned so that kappa(S) = kappa.
struct RandomSpec {
    std::uint64_t seed = 0;
    double kappa = 100.0;
};

struct ExplicitSpec {
    Operator S;
};

using SimilaritySpec = std::variant<IdentitySpec, DiagonalSpec, RandomSpec, ExplicitSpec>;

struct BuildOptions {
    double kappa_max = 1e4;
};

struct DpbSystem {
    TruncatedFock fock;
    Operator S;
    Operator S_inv;
    Operator a;               // S c S^{-1}
    Operator b;               // S c^dagger S^{-1}
    std::vector<Ket> phi;     // S e_n
    std::vector<Ket> psi;     // (S^{-1})^dagger e_n
    Operator Theta;           // (S S^dagger)^{-1}
    Operator N_op;            // b a
    double kappa = 1.0;       // condition number of S
};

Operator similarity_matrix(const SimilaritySpec& spec, int cutoff);

/// Throws DomainError for singular S or kappa(S) > kappa_max.
DpbSystem dpb_build(const SimilaritySpec& spec, int cutoff, const BuildOptions& opts = {});

/**
 * Structural identities of the truncated system: ladder table, biorthogonality,
 * Theta mapping and sums, and the commutator on the guarded span
 * {phi_0, ..., phi_{N-1}}. Tolerances are tol * kappa for first-order
 * identities and tol * kappa^2 for identities involving Theta.
 */
VerificationReport dpb_verify(const DpbSystem& sys, double tol);

/// Theta-conjugacy of (a, b^dagger), the number-operator intertwining and
/// positivity of <f, Theta f> sampled on `samples` random kets.
VerificationReport dpb_theta_conjugacy(const DpbSystem& sys, double tol, std::uint64_t seed,
                                       int samples = 100);

/// Exact commutator defect -(N+1) S|e_N><e_N|S^{-1}.
Operator commutator_defect(const DpbSystem& sys);

// Bi-coherent states --------------------------------------------------------

struct BiCoherent {
    Complex z;
    int K = 0;
    Ket phi_z;
    Ket psi_z;
};

/// exp(-|z|^2/2) sum_{k<=K} z^k/sqrt(k!) phi_k and the same series over psi_k.
BiCoherent bicoherent(const DpbSystem& sys, Complex z, int K);

/// ||a phi_z - z phi_z|| predicted by the telescoped series:
/// exp(-|z|^2/2) |z|^{K+1} / sqrt(K!) ||phi_K||.
double truncation_residual(const DpbSystem& sys, Complex z, int K);

/// exp(-|z|^2) sum_{k<=K} |z|^{2k}/k!.
double truncated_overlap(Complex z, int K);

struct Resolution {
    Operator Q;
    double deviation = 0.0;   // ||Q - 1||_2
    double tail_bound = 0.0;  // max_k Gamma(k+1, R^2)/k!
};

/// Polar quadrature of (1/pi) int |phi_z><psi_z| d^2z over |z| <= R with
/// Gauss-Legendre radial nodes and the uniform trapezoid rule in angle.
/// n_theta <= 0 selects 4N + 4.
Resolution bicoherent_resolution(const DpbSystem& sys, double R, int n_r, int n_theta = 0);

/// max_{k<=N} Gamma(k+1, R^2)/k!, the mass of the radial integrands beyond R.
double resolution_tail(int cutoff, double R);

/// Smallest R with Gamma(N+1, R^2)/N! <= tail.
double default_radius(int cutoff, double tail = 1e-10);

// Norm growth ----------------------------------------------------------------

struct NormGrowthFit {
    int n_min = 0, n_max = 0;
    double r_phi = 1, alpha_phi = 0;
    double r_psi = 1, alpha_psi = 0;
    double residual = 0;  // RMS residual of both log fits
    bool bounds_hold = false;  // alpha_phi < 1/2 and alpha_psi < 1/2
};

/// Least-squares fit of log||phi_n|| = n log r + alpha log n! over [n_min, n_max].
/// Requires n_max <= N - 1 and at least three points.
NormGrowthFit norm_growth_fit(const DpbSystem& sys, int n_min, int n_max);

}  // namespace pbtk::dpb
