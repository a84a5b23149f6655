#include "pbtk/pseudofermion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pbtk/errors.hpp"

namespace pbtk::pf {

namespace {

template <class D>
double rel(const Eigen::MatrixBase<D>& diff, double scale) {
    if constexpr (D::ColsAtCompileTime == 1) return diff.norm() / std::max(1.0, scale);
    else return opnorm(Operator(diff)) / std::max(1.0, scale);
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json pair_context(const PfSystem& sys) {
    return Json{{"norm_a", opnorm(sys.pair.a)}, {"norm_b", opnorm(sys.pair.b)}};
}

// Smallest eigenvalue of the Hermitian part relative to the largest, negated:
// a non-positive value means positive definite.
double positivity_residual(const Operator& s) {
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return -ev(0) / std::max(std::abs(ev(ev.size() - 1)), 1e-300);
}

Ket single_kernel_vector(const Operator& op, const TolerancePolicy& tol, const char* what) {
    auto ker = null_space(op, tol);
    if (ker.size() != 1) {
        std::ostringstream os;
        os << "kernel of " << what << " has dimension " << ker.size() << ", expected 1";
        throw DomainError(os.str());
    }
    return ker.front();
}

}  // namespace

double HeffParams::Omega() const {
    if (!(omega_abs > 0.0)) throw DomainError("|omega| must be positive");
    if (!(omega_abs > std::abs(delta))) {
        std::ostringstream os;
        os << "exceptional point: |omega| = " << omega_abs << " <= |delta| = " << std::abs(delta)
           << ", Omega = sqrt(|omega|^2 - delta^2) is not real positive";
        throw ExceptionalPoint(os.str());
    }
    return std::sqrt(omega_abs * omega_abs - delta * delta);
}

HeffModel heff_build(const HeffParams& p) {
    const double W = p.Omega();
    const double w = p.omega_abs;
    const Complex ph = std::polar(1.0, p.theta);
    const Complex omega = w * ph;
    const Complex id = kI * p.delta;

    HeffModel m;
    m.Omega = W;
    m.H.resize(2, 2);
    m.H << -id, std::conj(omega), omega, id;
    m.H *= 0.5;

    m.pair.a.resize(2, 2);
    m.pair.a << -w, -std::conj(ph) * (W + id), ph * (W - id), w;
    m.pair.a /= 2.0 * W;

    m.pair.b.resize(2, 2);
    m.pair.b << -w, std::conj(ph) * (W - id), -ph * (W + id), w;
    m.pair.b /= 2.0 * W;
    return m;
}

PfSystem pf_system(const PfPair& pair, const PfOptions& opts) {
    require_operator(pair.a, "a");
    require_operator(pair.b, "b");
    if (pair.a.rows() != 2 || pair.b.rows() != 2) throw DomainError("pseudo-fermions live on C^2");

    const Operator one = identity(2);
    const double scale = std::max(1.0, opnorm(pair.a) * opnorm(pair.b));
    const double tau = opts.tol.threshold() * scale;
    const double car = std::max({opnorm(anticommutator(pair.a, pair.b) - one),
                                 opnorm(pair.a * pair.a), opnorm(pair.b * pair.b)});
    if (car > tau) {
        std::ostringstream os;
        os << "pair violates {a,b} = 1, a^2 = b^2 = 0 (residual " << car << " > " << tau << ")";
        throw DomainError(os.str());
    }

    PfSystem s;
    s.pair = pair;

    Ket phi0 = single_kernel_vector(pair.a, opts.tol, "a");
    phi0.normalize();
    if (opts.vacuum_phase) {
        phi0 *= std::polar(1.0, *opts.vacuum_phase);
    } else {
        fix_phase(phi0);
    }
    Ket psi0 = single_kernel_vector(pair.b.adjoint(), opts.tol, "b^dagger");
    const Complex overlap = braket(phi0, psi0);
    if (std::abs(overlap) <= opts.tol.threshold() * psi0.norm()) {
        throw DomainError("vacua are orthogonal; cannot normalize <phi_0, psi_0> = 1");
    }
    psi0 /= overlap;

    s.phi = {phi0, pair.b * phi0};
    s.psi = {psi0, pair.a.adjoint() * psi0};
    s.N = pair.b * pair.a;
    s.Ndag = s.N.adjoint();
    s.Sphi = outer(s.phi[0], s.phi[0]) + outer(s.phi[1], s.phi[1]);
    s.Spsi = outer(s.psi[0], s.psi[0]) + outer(s.psi[1], s.psi[1]);

    const Operator root = herm_sqrt(s.Spsi, opts.tol);
    s.T = herm_inv_sqrt(s.Spsi, opts.tol);
    s.c = root * pair.a * s.T;
    s.e = {root * s.phi[0], root * s.phi[1]};
    return s;
}

Operator hermitize(const PfSystem& sys, const Operator& H) { return sys.T.inverse() * H * sys.T; }

VerificationReport pf_verify(const PfSystem& sys, double tol) {
    VerificationReport r;
    const Operator one = identity(2);
    const Operator& a = sys.pair.a;
    const Operator& b = sys.pair.b;
    const double na = opnorm(a), nb = opnorm(b);
    const Json ctx = pair_context(sys);

    r.add("pf.anticommutator", rel(anticommutator(a, b) - one, na * nb), tol, ctx);
    r.add("pf.nilpotent", std::max(rel(a * a, na * na), rel(b * b, nb * nb)), tol, ctx);

    const double vac = std::max(rel(a * sys.phi[0], na * sys.phi[0].norm()),
                                rel(b.adjoint() * sys.psi[0], nb * sys.psi[0].norm()));
    r.add("pf.vacua", vac, tol, ctx);

    const double low = std::max(rel(a * sys.phi[1] - sys.phi[0], na * sys.phi[1].norm()),
                                rel(b.adjoint() * sys.psi[1] - sys.psi[0], nb * sys.psi[1].norm()));
    r.add("pf.ladder-action", low, tol, ctx);

    const double nN = opnorm(sys.N);
    double eig = 0.0;
    for (int n = 0; n < 2; ++n) {
        eig = std::max(eig, rel(sys.N * sys.phi[n] - n * sys.phi[n], nN * sys.phi[n].norm()));
        eig = std::max(eig, rel(sys.Ndag * sys.psi[n] - n * sys.psi[n], nN * sys.psi[n].norm()));
    }
    r.add("pf.number-eigen", eig, tol, ctx);

    double bi = 0.0;
    for (int k = 0; k < 2; ++k) {
        for (int n = 0; n < 2; ++n) {
            const double d = std::abs(braket(sys.phi[k], sys.psi[n]) - (k == n ? 1.0 : 0.0));
            bi = std::max(bi, d / std::max(1.0, sys.phi[k].norm() * sys.psi[n].norm()));
        }
    }
    r.add("pf.biorthonormal", bi, tol, ctx);

    const double nphi = sys.phi[0].squaredNorm() + sys.phi[1].squaredNorm();
    const double npsi = sys.psi[0].squaredNorm() + sys.psi[1].squaredNorm();
    const double bound = std::max(std::max(0.0, opnorm(sys.Sphi) - nphi) / nphi,
                                  std::max(0.0, opnorm(sys.Spsi) - npsi) / npsi);
    r.add("pf.metric-norm-bound", bound, tol, ctx);
    const double ns_phi = opnorm(sys.Sphi), ns_psi = opnorm(sys.Spsi);
    r.add("pf.metric-hermitian",
          std::max(hermiticity_defect(sys.Sphi) / ns_phi, hermiticity_defect(sys.Spsi) / ns_psi),
          tol, ctx);
    r.add("pf.metric-positive",
          std::max(positivity_residual(sys.Sphi), positivity_residual(sys.Spsi)), 0.0, ctx);

    double map = 0.0;
    for (int n = 0; n < 2; ++n) {
        map = std::max(map, rel(sys.Sphi * sys.psi[n] - sys.phi[n], ns_phi * sys.psi[n].norm()));
        map = std::max(map, rel(sys.Spsi * sys.phi[n] - sys.psi[n], ns_psi * sys.phi[n].norm()));
    }
    r.add("pf.metric-mapping", map, tol, ctx);
    r.add("pf.metric-inverse", rel(sys.Sphi * sys.Spsi - one, ns_phi * ns_psi), tol, ctx);

    const double inter =
        std::max(rel(sys.Spsi * sys.N - sys.Ndag * sys.Spsi, ns_psi * nN),
                 rel(sys.Sphi * sys.Ndag - sys.N * sys.Sphi, ns_phi * nN));
    r.add("pf.intertwining", inter, tol, ctx);

    const Operator Tinv = sys.T.inverse();
    const double kT = opnorm(sys.T) * opnorm(Tinv);
    const double sim = std::max(rel(a - sys.T * sys.c * Tinv, kT * opnorm(sys.c)),
                                rel(b - sys.T * sys.c.adjoint() * Tinv, kT * opnorm(sys.c)));
    r.add("pf.hermitian-similarity", sim, tol, ctx);
    const double can = std::max(opnorm(anticommutator(sys.c, sys.c.adjoint()) - one),
                                opnorm(sys.c * sys.c));
    r.add("pf.canonical-car", can, tol, ctx);

    double ortho = 0.0;
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            ortho = std::max(ortho, std::abs(braket(sys.e[m], sys.e[n]) - (m == n ? 1.0 : 0.0)));
        }
    }
    r.add("pf.orthonormal-e", ortho, tol, ctx);

    const Operator N0 = sys.c.adjoint() * sys.c;
    const double num = std::max(rel(sys.N - sys.T * N0 * Tinv, kT),
                                rel(sys.Ndag - Tinv * N0 * sys.T, kT));
    r.add("pf.number-similarity", num, tol, ctx);
    return r;
}

Operator model_hamiltonian(const DgParams& p) {
    if (p.r == 0.0 || p.s == 0.0 || p.t == 0.0) {
        throw DomainError("H_DG requires r, s, t non-zero");
    }
    Operator H(2, 2);
    H << p.r * std::polar(1.0, p.theta), p.s * std::polar(1.0, p.phi),
        p.t * std::polar(1.0, -p.phi), p.r * std::polar(1.0, -p.theta);
    return H;
}

Operator model_hamiltonian(const GmmParams& p) {
    if (!(p.gamma1 > 0.0) || !(p.gamma2 > 0.0)) {
        throw DomainError("H_GMM requires Gamma_1 > 0 and Gamma_2 > 0");
    }
    Operator H(2, 2);
    H << Complex(p.eps1, -p.gamma1), p.nu0, p.nu0, Complex(p.eps2, -p.gamma2);
    return H;
}

Operator model_hamiltonian(const MoParams& p) {
    constexpr double pi = std::numbers::pi;
    if (!(p.theta.real() >= 0.0 && p.theta.real() < pi)) {
        throw DomainError("H_MO requires Re(theta) in [0, pi)");
    }
    if (!(p.phi.real() >= 0.0 && p.phi.real() < pi)) {
        throw DomainError("H_MO requires Re(phi) in [0, pi)");
    }
    const Complex c = std::cos(p.theta), s = std::sin(p.theta);
    Operator H(2, 2);
    H << c, std::exp(-kI * p.phi) * s, std::exp(kI * p.phi) * s, -c;
    return p.E * H;
}

Operator model_hamiltonian(const HamiltonianParams& p) {
    return std::visit([](const auto& q) { return model_hamiltonian(q); }, p);
}

PfFromHamiltonian pf_from_hamiltonian(const Operator& H, double gap_rtol) {
    require_operator(H, "H");
    if (H.rows() != 2) throw DomainError("pf_from_hamiltonian expects a 2x2 operator");
    TolerancePolicy tol;
    tol.base_rtol = gap_rtol;
    const auto es = eig_biorthogonal(H, tol);

    PfPair pair{outer(es.right[0], es.left[1]), outer(es.right[1], es.left[0])};
    PfFromHamiltonian out{pf_system(pair), es.values[1] - es.values[0],
                          0.5 * (es.values[0] + es.values[1])};
    return out;
}

VerificationReport pf_model_verify(const HeffModel& model, const PfSystem& sys, double tol) {
    VerificationReport r;
    const double W = model.Omega;
    const Json ctx{{"Omega", W}};
    const double nH = std::max(1.0, opnorm(model.H));

    Eigen::ComplexEigenSolver<Operator> es(model.H);
    std::array<Complex, 2> ev{es.eigenvalues()(0), es.eigenvalues()(1)};
    std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) { return x.real() < y.real(); });
    r.add("pf.model-spectrum", std::max(std::abs(ev[0] + 0.5 * W), std::abs(ev[1] - 0.5 * W)), tol, ctx);

    r.add("pf.model-vacuum-energy", (model.H * sys.phi[0] + 0.5 * W * sys.phi[0]).norm(), tol, ctx);

    const Operator one = identity(2);
    r.add("pf.model-number-form", rel(model.H - W * (sys.N - 0.5 * one), nH), tol, ctx);

    const Operator h = hermitize(sys, model.H);
    const Operator h0 = W * (sys.c.adjoint() * sys.c - 0.5 * one);
    r.add("pf.model-hermitized", std::max(rel(h - h0, nH), hermiticity_defect(h) / nH), tol, ctx);
    return r;
}

VerificationReport pf_decomposition_verify(const Operator& H, const PfFromHamiltonian& d, double tol) {
    VerificationReport r;
    const Json ctx{{"Omega", complex_json(d.Omega)}, {"gamma", complex_json(d.gamma)}};
    const double nH = std::max(1.0, opnorm(H));
    const Operator one = identity(2);
    r.add("pf.decomposition", rel(H - d.Omega * (d.system.N - 0.5 * one) - d.gamma * one, nH), tol, ctx);
    const Operator h = hermitize(d.system, H);
    const Operator h0 = d.Omega * (d.system.c.adjoint() * d.system.c - 0.5 * one) + d.gamma * one;
    r.add("pf.decomposition-similarity", rel(h - h0, nH), tol, ctx);
    return r;
}

}  // namespace pbtk::pf
