#pragma once

#include <array>
#include <optional>
#include <variant>

#include "pbtk/numkernel.hpp"
#include "pbtk/report.hpp"

namespace pbtk::pf {

/// (a, b) on C^2 with {a,b} = 1 and a^2 = b^2 = 0.
struct PfPair {
    Operator a;
    Operator b;
};

struct PfSystem {
    PfPair pair;
    std::array<Ket, 2> phi;  // phi_0 (kernel of a), phi_1 = b phi_0
    std::array<Ket, 2> psi;  // psi_0 (kernel of b^dagger), psi_1 = a^dagger psi_0
    Operator N;              // b a
    Operator Ndag;           // a^dagger b^dagger
    Operator Sphi;           // sum |phi_n><phi_n|
    Operator Spsi;           // sum |psi_n><psi_n|
    Operator T;              // Spsi^{-1/2}
    Operator c;              // Spsi^{1/2} a Spsi^{-1/2}, a canonical fermion
    std::array<Ket, 2> e;    // Spsi^{1/2} phi_n, orthonormal
};

/// Two-level atom with decay: delta, |omega| and the phase theta of omega.
struct HeffParams {
    double delta = 0.0;
    double omega_abs = 1.0;
    double theta = 0.0;

    /// sqrt(|omega|^2 - delta^2); throws ExceptionalPoint unless real and positive.
    double Omega() const;
};

struct HeffModel {
    PfPair pair;
    Operator H;
    double Omega = 0.0;
};

/// Explicit a, b and H_eff = 1/2 [[-i delta, conj(omega)], [omega, i delta]].
HeffModel heff_build(const HeffParams& p);

struct PfOptions {
    TolerancePolicy tol{};
    /// Overrides the vacuum gauge: phi_0 is multiplied by this phase after
    /// normalization instead of being made first-component-real-positive.
    std::optional<double> vacuum_phase;
};

/**
 * Builds the biorthogonal families, metrics and the fermionic similarity.
 *
 * Gauge: ||phi_0|| = 1 with its first non-negligible component real positive,
 * <phi_0, psi_0> = 1. T is the positive root Spsi^{-1/2}.
 */
PfSystem pf_system(const PfPair& pair, const PfOptions& opts = {});

/// Residual report for every identity of the pseudo-fermion structure.
/// Residuals are relative to the natural operator scale of each identity.
VerificationReport pf_verify(const PfSystem& sys, double tol);

/// T^{-1} H T; Hermitian whenever H = Omega (b a - 1/2) + gamma for the system's pair.
Operator hermitize(const PfSystem& sys, const Operator& H);

// Model Hamiltonians ------------------------------------------------------

struct DgParams {
    double r = 1, s = 1, t = 1, theta = 0, phi = 0;
};

struct GmmParams {
    double eps1 = 0, eps2 = 0, gamma1 = 1, gamma2 = 1;
    Complex nu0{1.0, 0.0};
};

struct MoParams {
    double E = 1;
    Complex theta{0.0, 0.0};
    Complex phi{0.0, 0.0};
};

using HamiltonianParams = std::variant<DgParams, GmmParams, MoParams>;

/// [[r e^{i theta}, s e^{i phi}], [t e^{-i phi}, r e^{-i theta}]]; r, s, t non-zero.
/// theta and phi are accepted as zero so that the trivial real limit can be built.
Operator model_hamiltonian(const DgParams& p);
/// [[eps1 - i gamma1, nu0], [nu0, eps2 - i gamma2]]; gamma1, gamma2 > 0.
Operator model_hamiltonian(const GmmParams& p);
/// E [[cos theta, e^{-i phi} sin theta], [e^{i phi} sin theta, -cos theta]];
/// Re theta, Re phi in [0, pi).
Operator model_hamiltonian(const MoParams& p);
Operator model_hamiltonian(const HamiltonianParams& p);

struct PfFromHamiltonian {
    PfSystem system;
    Complex Omega;  // lambda_1 - lambda_0
    Complex gamma;  // (lambda_0 + lambda_1) / 2
};

/// Two-level model identities: spectrum {-Omega/2, Omega/2}, vacuum energy,
/// H = Omega (N - 1/2) and T^{-1} H T = Omega (c^dagger c - 1/2).
VerificationReport pf_model_verify(const HeffModel& model, const PfSystem& sys, double tol);

/// Pseudo-fermion decomposition H = Omega (b a - 1/2) + gamma of any
/// diagonalizable 2x2 operator, with a = |r0><l1| and b = |r1><l0|.
/// Eigenvalues closer than gap_rtol * ||H|| raise DefectiveMatrix.
PfFromHamiltonian pf_from_hamiltonian(const Operator& H, double gap_rtol = 1e-8);

/// Reconstruction of H from the decomposition and Hermiticity of T^{-1} (H - gamma) T.
VerificationReport pf_decomposition_verify(const Operator& H, const PfFromHamiltonian& d, double tol);

}  // namespace pbtk::pf
