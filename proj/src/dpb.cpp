#include "pbtk/dpb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "pbtk/errors.hpp"

namespace pbtk::dpb {

namespace {

constexpr double kPi = std::numbers::pi;

double rel(const Operator& diff, double scale) { return opnorm(diff) / std::max(1.0, scale); }

Operator haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Operator g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    }
    Eigen::HouseholderQR<Operator> qr(g);
    Operator q = qr.householderQ();
    const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double m = std::abs(r(j, j));
        if (m > 0.0) q.col(j) *= r(j, j) / m;
    }
    return q;
}

}  // namespace

TruncatedFock TruncatedFock::make(int cutoff) {
    if (cutoff < 0) throw DomainError("truncation cutoff must be non-negative");
    TruncatedFock f;
    f.cutoff = cutoff;
    f.c = Operator::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) f.c(n - 1, n) = std::sqrt(static_cast<double>(n));
    return f;
}

Operator similarity_matrix(const SimilaritySpec& spec, int cutoff) {
    const Eigen::Index d = cutoff + 1;
    struct Visitor {
        Eigen::Index d;
        Operator operator()(const IdentitySpec&) const { return identity(d); }
        Operator operator()(const DiagonalSpec& s) const {
            if (static_cast<Eigen::Index>(s.entries.size()) != d) {
                std::ostringstream os;
                os << "diagonal similarity needs " << d << " entries, got " << s.entries.size();
                throw DomainError(os.str());
            }
            Operator S = Operator::Zero(d, d);
            for (Eigen::Index i = 0; i < d; ++i) S(i, i) = s.entries[static_cast<std::size_t>(i)];
            return S;
        }
        Operator operator()(const RandomSpec& s) const {
            if (!(s.kappa >= 1.0)) throw DomainError("random similarity: kappa must be >= 1");
            std::mt19937_64 rng(s.seed);
            const Operator U = haar_unitary(d, rng);
            const Operator V = haar_unitary(d, rng);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            Eigen::VectorXd sv(d);
            for (Eigen::Index i = 0; i < d; ++i) sv(i) = std::exp(unit(rng) * std::log(s.kappa));
            // pin the extremes so the requested condition number is attained
            if (d > 1) {
                sv(0) = 1.0;
                sv(d - 1) = s.kappa;
            }
            return U * sv.cast<Complex>().asDiagonal() * V.adjoint();
        }
        Operator operator()(const ExplicitSpec& s) const {
            if (s.S.rows() != d || s.S.cols() != d) {
                std::ostringstream os;
                os << "explicit similarity must be " << d << "x" << d;
                throw DomainError(os.str());
            }
            return s.S;
        }
    };
    return std::visit(Visitor{d}, spec);
}

DpbSystem dpb_build(const SimilaritySpec& spec, int cutoff, const BuildOptions& opts) {
    DpbSystem s;
    s.fock = TruncatedFock::make(cutoff);
    s.S = similarity_matrix(spec, cutoff);
    require_operator(s.S, "similarity S");
    s.kappa = condition_number(s.S);
    if (!std::isfinite(s.kappa)) throw DomainError("similarity S is singular");
    if (s.kappa > opts.kappa_max) {
        std::ostringstream os;
        os << "similarity S is over-conditioned: kappa = " << s.kappa << " > kappa_max = "
           << opts.kappa_max;
        throw DomainError(os.str());
    }
    s.S_inv = s.S.partialPivLu().inverse();
    s.a = s.S * s.fock.c * s.S_inv;
    s.b = s.S * s.fock.c.adjoint() * s.S_inv;
    s.N_op = s.b * s.a;
    s.phi = to_columns(s.S);
    s.psi = to_columns(s.S_inv.adjoint());
    s.Theta = s.S_inv.adjoint() * s.S_inv;
    return s;
}

Operator commutator_defect(const DpbSystem& sys) {
    const int N = sys.fock.cutoff;
    return -(N + 1.0) * outer(sys.S.col(N), sys.S_inv.row(N).adjoint());
}

VerificationReport dpb_verify(const DpbSystem& sys, double tol) {
    VerificationReport r;
    const int N = sys.fock.cutoff;
    const double k1 = tol * sys.kappa;
    const double k2 = tol * sys.kappa * sys.kappa;
    const Json ctx{{"cutoff", N}, {"kappa", sys.kappa}};
    const auto& phi = sys.phi;
    const auto& psi = sys.psi;
    const auto at = [](const std::vector<Ket>& v, int n) -> const Ket& {
        return v[static_cast<std::size_t>(n)];
    };
    const double na = opnorm(sys.a), nb = opnorm(sys.b);
    const Operator ad = sys.a.adjoint(), bd = sys.b.adjoint();

    double lower = 0.0, raise = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double sn = std::sqrt(static_cast<double>(n));
        const double sn1 = std::sqrt(static_cast<double>(n + 1));
        const Ket zero = Ket::Zero(N + 1);
        const Ket phi_dn = n > 0 ? Ket(sn * at(phi, n - 1)) : zero;
        const Ket psi_dn = n > 0 ? Ket(sn * at(psi, n - 1)) : zero;
        lower = std::max(lower, (sys.a * at(phi, n) - phi_dn).norm() / std::max(1.0, na * at(phi, n).norm()));
        lower = std::max(lower, (bd * at(psi, n) - psi_dn).norm() / std::max(1.0, nb * at(psi, n).norm()));
        if (n < N) {
            raise = std::max(raise, (sys.b * at(phi, n) - sn1 * at(phi, n + 1)).norm() /
                                        std::max(1.0, nb * at(phi, n).norm()));
            raise = std::max(raise, (ad * at(psi, n) - sn1 * at(psi, n + 1)).norm() /
                                        std::max(1.0, na * at(psi, n).norm()));
        }
    }
    r.add("dpb.lowering", lower, k1, ctx);
    r.add("dpb.raising", raise, k1, ctx);

    const double cn = std::sqrt(static_cast<double>(std::max(N, 1)));
    r.add("dpb.similarity",
          std::max(rel(sys.S_inv * sys.a * sys.S - sys.fock.c, cn),
                   rel(sys.S_inv * sys.b * sys.S - sys.fock.c.adjoint(), cn)),
          k1, ctx);

    double bi = 0.0;
    for (int n = 0; n <= N; ++n) {
        for (int m = 0; m <= N; ++m) {
            bi = std::max(bi, std::abs(braket(at(phi, n), at(psi, m)) - (n == m ? 1.0 : 0.0)));
        }
    }
    r.add("dpb.biorthogonal", bi, k1, ctx);

    const double nT = opnorm(sys.Theta);
    double tmap = 0.0;
    for (int n = 0; n <= N; ++n) {
        tmap = std::max(tmap, (at(psi, n) - sys.Theta * at(phi, n)).norm() /
                                  std::max(1.0, nT * at(phi, n).norm()));
    }
    r.add("dpb.theta-maps-phi-to-psi", tmap, k2, ctx);

    Operator sum_psi = Operator::Zero(N + 1, N + 1), sum_phi = sum_psi;
    for (int n = 0; n <= N; ++n) {
        sum_psi += outer(at(psi, n), at(psi, n));
        sum_phi += outer(at(phi, n), at(phi, n));
    }
    const Operator theta_inv = sys.S * sys.S.adjoint();
    r.add("dpb.theta-sum", rel(sys.Theta - sum_psi, nT), k2, ctx);
    r.add("dpb.theta-inverse-sum", rel(theta_inv - sum_phi, opnorm(theta_inv)), k2, ctx);
    r.add("dpb.theta-inverse", rel(sys.Theta * theta_inv - identity(N + 1), 1.0), k2, ctx);
    r.add("dpb.theta-hermitian", hermiticity_defect(sys.Theta) / std::max(1.0, nT), k2, ctx);

    // [a, b] f = f on span{phi_0..phi_{N-1}}; the edge carries the exact defect.
    const Operator comm = commutator(sys.a, sys.b);
    double guarded = 0.0;
    for (int n = 0; n < N; ++n) {
        guarded = std::max(guarded, (comm * at(phi, n) - at(phi, n)).norm() / at(phi, n).norm());
    }
    r.add("dpb.commutator-guarded", guarded, k1, ctx);
    r.add("dpb.commutator-edge-defect",
          rel(comm - identity(N + 1) - commutator_defect(sys), na * nb), k2, ctx);
    return r;
}

VerificationReport dpb_theta_conjugacy(const DpbSystem& sys, double tol, std::uint64_t seed,
                                       int samples) {
    VerificationReport r;
    const double k2 = tol * sys.kappa * sys.kappa;
    const Json ctx{{"cutoff", sys.fock.cutoff}, {"kappa", sys.kappa}};
    const Operator theta_inv = sys.S * sys.S.adjoint();
    const Operator& T = sys.Theta;
    r.add("dpb.theta-conjugacy", rel(sys.a - theta_inv * sys.b.adjoint() * T, opnorm(sys.a)), k2, ctx);
    r.add("dpb.number-intertwining", rel(sys.N_op - theta_inv * sys.N_op.adjoint() * T, opnorm(sys.N_op)),
          k2, ctx);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double qmin = std::numeric_limits<double>::infinity();
    const Eigen::Index d = sys.fock.dim();
    for (int s = 0; s < samples; ++s) {
        Ket f(d);
        for (Eigen::Index i = 0; i < d; ++i) f(i) = Complex(gauss(rng), gauss(rng));
        qmin = std::min(qmin, braket(f, T * f).real() / f.squaredNorm());
    }
    Json pctx = ctx;
    pctx["samples"] = samples;
    pctx["min_rayleigh"] = qmin;
    // Reported as -min <f, Theta f>/||f||^2; non-positive means positive definite on the sample.
    r.add("dpb.theta-positivity", -qmin, 0.0, pctx);
    return r;
}

BiCoherent bicoherent(const DpbSystem& sys, Complex z, int K) {
    const int N = sys.fock.cutoff;
    if (K < 0 || K > N) {
        std::ostringstream os;
        os << "bi-coherent truncation order K = " << K << " must lie in [0, " << N << "]";
        throw DomainError(os.str());
    }
    BiCoherent bc;
    bc.z = z;
    bc.K = K;
    bc.phi_z = Ket::Zero(N + 1);
    bc.psi_z = Ket::Zero(N + 1);
    Complex coef = std::exp(-0.5 * std::norm(z));
    for (int k = 0; k <= K; ++k) {
        if (k > 0) coef *= z / std::sqrt(static_cast<double>(k));
        bc.phi_z += coef * sys.phi[static_cast<std::size_t>(k)];
        bc.psi_z += coef * sys.psi[static_cast<std::size_t>(k)];
    }
    return bc;
}

double truncation_residual(const DpbSystem& sys, Complex z, int K) {
    const double mod = std::abs(z);
    if (mod == 0.0) return 0.0;
    const double logc = -0.5 * mod * mod + (K + 1) * std::log(mod) - 0.5 * std::lgamma(K + 1.0);
    return std::exp(logc) * sys.phi[static_cast<std::size_t>(K)].norm();
}

double truncated_overlap(Complex z, int K) {
    const double x = std::norm(z);
    double term = std::exp(-x), sum = term;
    for (int k = 1; k <= K; ++k) {
        term *= x / k;
        sum += term;
    }
    return sum;
}

Resolution bicoherent_resolution(const DpbSystem& sys, double R, int n_r, int n_theta) {
    if (!(R > 0.0) || n_r <= 0) throw DomainError("resolution: R and n_r must be positive");
    const int N = sys.fock.cutoff;
    if (n_theta <= 0) n_theta = 4 * N + 4;
    const Eigen::Index d = sys.fock.dim();
    const auto [nodes, weights] = gauss_legendre(n_r, 0.0, R);

    Operator Q = Operator::Zero(d, d);
    Operator phis(d, n_theta), psis(d, n_theta);
    const double dtheta = 2.0 * kPi / n_theta;
    for (int i = 0; i < n_r; ++i) {
        const double r = nodes[static_cast<std::size_t>(i)];
        for (int j = 0; j < n_theta; ++j) {
            const auto bc = bicoherent(sys, std::polar(r, j * dtheta), N);
            phis.col(j) = bc.phi_z;
            psis.col(j) = bc.psi_z;
        }
        // (1/pi) * r dr * dtheta
        const double w = weights[static_cast<std::size_t>(i)] * r * dtheta / kPi;
        Q.noalias() += w * (phis * psis.adjoint());
    }
    Resolution res;
    res.Q = std::move(Q);
    res.deviation = opnorm(res.Q - identity(d));
    res.tail_bound = resolution_tail(N, R);
    return res;
}

double resolution_tail(int cutoff, double R) {
    double worst = 0.0;
    for (int k = 0; k <= cutoff; ++k) {
        worst = std::max(worst, boost::math::gamma_q(static_cast<double>(k + 1), R * R));
    }
    return worst;
}

double default_radius(int cutoff, double tail) {
    if (!(tail > 0.0 && tail < 1.0)) throw DomainError("default_radius: tail must lie in (0, 1)");
    return std::sqrt(boost::math::gamma_q_inv(static_cast<double>(cutoff + 1), tail));
}

NormGrowthFit norm_growth_fit(const DpbSystem& sys, int n_min, int n_max) {
    const int N = sys.fock.cutoff;
    if (n_min < 0 || n_max > N - 1 || n_max - n_min < 2) {
        std::ostringstream os;
        os << "norm_growth_fit: need 0 <= n_min, n_max <= N - 1 = " << N - 1
           << " and at least three points, got [" << n_min << ", " << n_max << "]";
        throw DomainError(os.str());
    }
    const int m = n_max - n_min + 1;
    Eigen::MatrixXd design(m, 2);
    Eigen::VectorXd yphi(m), ypsi(m);
    for (int i = 0; i < m; ++i) {
        const int n = n_min + i;
        design(i, 0) = n;
        design(i, 1) = std::lgamma(n + 1.0);
        yphi(i) = std::log(sys.phi[static_cast<std::size_t>(n)].norm());
        ypsi(i) = std::log(sys.psi[static_cast<std::size_t>(n)].norm());
    }
    const auto qr = design.colPivHouseholderQr();
    const Eigen::Vector2d cphi = qr.solve(yphi);
    const Eigen::Vector2d cpsi = qr.solve(ypsi);

    NormGrowthFit fit;
    fit.n_min = n_min;
    fit.n_max = n_max;
    fit.r_phi = std::exp(cphi(0));
    fit.alpha_phi = cphi(1);
    fit.r_psi = std::exp(cpsi(0));
    fit.alpha_psi = cpsi(1);
    const double ss = (design * cphi - yphi).squaredNorm() + (design * cpsi - ypsi).squaredNorm();
    fit.residual = std::sqrt(ss / (2.0 * m));
    fit.bounds_hold = fit.alpha_phi < 0.5 && fit.alpha_psi < 0.5;
    return fit;
}

}  // namespace pbtk::dpb
