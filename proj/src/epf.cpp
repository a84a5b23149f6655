#include "pbtk/epf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pbtk/errors.hpp"

namespace pbtk::epf {

namespace {

// Metric square roots must survive kappa^2 spreads of the spectrum.
const TolerancePolicy kMetricTol{1e-14, false};

template <class D>
double rel(const Eigen::MatrixBase<D>& diff, double scale) {
    if constexpr (D::ColsAtCompileTime == 1) return diff.norm() / std::max(1.0, scale);
    else return opnorm(Operator(diff)) / std::max(1.0, scale);
}

// Canonical truncated annihilator on C^{M+1}: superdiagonal sqrt(1..M).
Operator canonical_lowering(int M) {
    Operator c = Operator::Zero(M + 1, M + 1);
    for (int k = 1; k <= M; ++k) c(k - 1, k) = std::sqrt(static_cast<double>(k));
    return c;
}

}  // namespace

Operator EpfBasis::matrix() const {
    if (M < 0) throw DomainError("EPF basis: M must be non-negative");
    if (h.size() != static_cast<std::size_t>(M + 1)) {
        std::ostringstream os;
        os << "EPF basis: expected " << M + 1 << " vectors, got " << h.size();
        throw DomainError(os.str());
    }
    for (const auto& v : h) {
        if (v.size() != M + 1) throw DomainError("EPF basis: every vector must have length M+1");
        require_ket(v, "EPF basis vector");
    }
    Operator H = from_columns(h);
    Eigen::JacobiSVD<Operator> svd(H);
    const auto& s = svd.singularValues();
    if (!(s(s.size() - 1) > TolerancePolicy{}.threshold() * s(0))) {
        throw DomainError("EPF basis is numerically singular");
    }
    return H;
}

EpfBasis EpfBasis::standard(int M) { return from_matrix(identity(M + 1)); }

EpfBasis EpfBasis::from_matrix(const Operator& columns) {
    require_operator(columns, "EPF basis matrix");
    EpfBasis b;
    b.M = static_cast<int>(columns.cols()) - 1;
    b.h = to_columns(columns);
    return b;
}

std::vector<Ket> epf_dual(const EpfBasis& basis) {
    const Operator H = basis.matrix();
    return to_columns(H.inverse().adjoint());
}

std::vector<Ket> epf_dual_iterative(const EpfBasis& basis) {
    const Operator H = basis.matrix();
    const int M = basis.M;
    std::vector<Ket> g;
    if (M == 0) {
        g.push_back(basis.h[0] / basis.h[0].squaredNorm());
        return g;
    }

    // g_0 spans the orthogonal complement of h_1..h_M.
    Operator constraints = Operator::Zero(M + 1, M + 1);
    for (int k = 1; k <= M; ++k) constraints.row(k - 1) = basis.h[static_cast<std::size_t>(k)].adjoint();
    auto ker = null_space(constraints);
    if (ker.size() != 1) throw DomainError("EPF basis: complement of h_1..h_M is not one-dimensional");
    Ket g0 = ker.front();
    g0 /= std::conj(braket(g0, basis.h[0]));

    // a = H C H^{-1} through an LU solve: H^T a^T = (H C)^T.
    const Operator HC = H * canonical_lowering(M);
    const Operator a = H.transpose().partialPivLu().solve(HC.transpose()).transpose();

    g.push_back(g0);
    for (int k = 1; k <= M; ++k) {
        g.push_back(a.adjoint() * g.back() / std::sqrt(static_cast<double>(k)));
    }
    return g;
}

namespace {

Ladder ladder_from(const EpfBasis& basis, const std::vector<Ket>& g) {
    const int M = basis.M;
    const Eigen::Index d = M + 1;
    Ladder l{Operator::Zero(d, d), Operator::Zero(d, d)};
    for (int k = 1; k <= M; ++k) {
        l.a += std::sqrt(static_cast<double>(k)) *
               outer(basis.h[static_cast<std::size_t>(k - 1)], g[static_cast<std::size_t>(k)]);
    }
    for (int k = 0; k < M; ++k) {
        l.b += std::sqrt(static_cast<double>(k + 1)) *
               outer(basis.h[static_cast<std::size_t>(k + 1)], g[static_cast<std::size_t>(k)]);
    }
    return l;
}

}  // namespace

Ladder epf_ladder(const EpfBasis& basis) { return ladder_from(basis, epf_dual(basis)); }

double expected_alpha(int M, int k) { return k < M ? 2.0 * k + 1.0 : static_cast<double>(M); }

AnticommutatorTable epf_anticommutator(const EpfSystem& sys) {
    const int M = sys.basis.M;
    const Operator ab = anticommutator(sys.a, sys.b);
    AnticommutatorTable t;
    for (int j = 0; j <= M; ++j) {
        for (int k = 0; k <= M; ++k) {
            const Complex v = braket(sys.g[static_cast<std::size_t>(j)],
                                     ab * sys.basis.h[static_cast<std::size_t>(k)]);
            if (j == k) {
                t.alpha.push_back(v.real());
                t.imag = std::max(t.imag, std::abs(v.imag()));
                t.law = std::max(t.law, std::abs(v.real() - expected_alpha(M, k)));
            } else {
                t.offdiag = std::max(t.offdiag, std::abs(v));
            }
        }
    }
    return t;
}

EpfSystem epf_system(const EpfBasis& basis) {
    EpfSystem s;
    const Operator H = basis.matrix();
    s.basis = basis;
    s.kappa = condition_number(H);
    s.g = epf_dual(basis);
    const Ladder l = ladder_from(basis, s.g);
    s.a = l.a;
    s.b = l.b;
    s.N = s.b * s.a;
    const Operator G = from_columns(s.g);
    s.Sh = H * H.adjoint();
    s.Sg = G * G.adjoint();
    const Operator root_g = herm_sqrt(s.Sg, kMetricTol);
    s.n_sa = root_g * s.N * herm_sqrt(s.Sh, kMetricTol);
    for (const auto& hk : basis.h) s.c.emplace_back(root_g * hk);
    s.alpha = epf_anticommutator(s).alpha;
    return s;
}

VerificationReport epf_verify(const EpfSystem& sys, double tol) {
    VerificationReport r;
    const int M = sys.basis.M;
    const double kap = sys.kappa;
    const double tk = tol * kap;
    const double tk2 = tol * kap * kap;
    const Json ctx{{"M", M}, {"kappa", kap}};
    if (kap > kConditioningWarning) {
        std::ostringstream os;
        os << "EPF basis condition number " << kap << " exceeds " << kConditioningWarning
           << "; metric residuals degrade quadratically";
        r.warn(os.str());
    }
    const auto& h = sys.basis.h;
    const auto& g = sys.g;
    const auto at = [](const std::vector<Ket>& v, int k) -> const Ket& {
        return v[static_cast<std::size_t>(k)];
    };
    const Operator one = identity(M + 1);

    double bi = 0.0;
    for (int j = 0; j <= M; ++j) {
        for (int k = 0; k <= M; ++k) {
            bi = std::max(bi, std::abs(braket(at(g, j), at(h, k)) - (j == k ? 1.0 : 0.0)));
        }
    }
    r.add("epf.biorthogonal", bi, tk, ctx);

    const Operator G_alt = from_columns(epf_dual_iterative(sys.basis));
    const Operator G = from_columns(g);
    r.add("epf.dual-cross-method", (G - G_alt).cwiseAbs().maxCoeff() / std::max(1.0, G.cwiseAbs().maxCoeff()),
          tk, ctx);

    const double na = opnorm(sys.a), nb = opnorm(sys.b);
    double act = 0.0;
    for (int k = 0; k <= M; ++k) {
        Ket down = Ket::Zero(M + 1), up = Ket::Zero(M + 1);
        if (k > 0) down = std::sqrt(static_cast<double>(k)) * at(h, k - 1);
        if (k < M) up = std::sqrt(static_cast<double>(k + 1)) * at(h, k + 1);
        act = std::max(act, rel(sys.a * at(h, k) - down, na * at(h, k).norm()));
        act = std::max(act, rel(sys.b * at(h, k) - up, nb * at(h, k).norm()));
    }
    r.add("epf.ladder-action", act, tk, ctx);

    Operator ap = one, bp = one;
    for (int i = 0; i <= M; ++i) {
        ap = ap * sys.a;
        bp = bp * sys.b;
    }
    const double nil = std::max(rel(ap, std::pow(na, M + 1)), rel(bp, std::pow(nb, M + 1)));
    r.add("epf.nilpotent", nil, tk, ctx);

    const double nN = opnorm(sys.N);
    double eig = 0.0;
    for (int k = 0; k <= M; ++k) {
        eig = std::max(eig, rel(sys.N * at(h, k) - k * at(h, k), nN * at(h, k).norm()));
        eig = std::max(eig, rel(sys.N.adjoint() * at(g, k) - k * at(g, k), nN * at(g, k).norm()));
    }
    r.add("epf.number-eigen", eig, tk, ctx);

    Eigen::ComplexEigenSolver<Operator> es(sys.N, false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + M + 1);
    std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) { return x.real() < y.real(); });
    double spec = 0.0;
    for (int k = 0; k <= M; ++k) spec = std::max(spec, std::abs(ev[static_cast<std::size_t>(k)] - double(k)));
    r.add("epf.number-spectrum", spec / std::max(1.0, double(M)), tk, ctx);

    const double nSh = opnorm(sys.Sh), nSg = opnorm(sys.Sg);
    double map = 0.0;
    for (int k = 0; k <= M; ++k) {
        map = std::max(map, rel(sys.Sh * at(g, k) - at(h, k), nSh * at(g, k).norm()));
        map = std::max(map, rel(sys.Sg * at(h, k) - at(g, k), nSg * at(h, k).norm()));
    }
    r.add("epf.metric-mapping", map, tk, ctx);
    r.add("epf.metric-inverse", rel(sys.Sh * sys.Sg - one, 1.0), tk2, ctx);

    const double inter = std::max(rel(sys.Sg * sys.N - sys.N.adjoint() * sys.Sg, nSg * nN),
                                  rel(sys.N * sys.Sh - sys.Sh * sys.N.adjoint(), nSh * nN));
    r.add("epf.intertwining", inter, tk2, ctx);

    Operator res_gh = Operator::Zero(M + 1, M + 1), res_hg = res_gh;
    for (int k = 0; k <= M; ++k) {
        res_gh += outer(at(g, k), at(h, k));
        res_hg += outer(at(h, k), at(g, k));
    }
    r.add("epf.resolution", std::max(opnorm(res_gh - one), opnorm(res_hg - one)), tk, ctx);

    const double nn = opnorm(sys.n_sa);
    r.add("epf.selfadjoint-n", hermiticity_defect(sys.n_sa) / std::max(1.0, nn), tk2, ctx);
    double ortho = 0.0, neig = 0.0;
    for (int j = 0; j <= M; ++j) {
        for (int k = 0; k <= M; ++k) {
            ortho = std::max(ortho, std::abs(braket(at(sys.c, j), at(sys.c, k)) - (j == k ? 1.0 : 0.0)));
        }
        neig = std::max(neig, rel(sys.n_sa * at(sys.c, j) - j * at(sys.c, j), std::max(1.0, nn)));
    }
    r.add("epf.orthonormal-c", ortho, tk2, ctx);
    r.add("epf.n-eigen", neig, tk2, ctx);

    const auto t = epf_anticommutator(sys);
    r.add("epf.anticommutator-offdiag", t.offdiag, tk, ctx);
    r.add("epf.alpha-imag", t.imag, tk, ctx);
    r.add("epf.alpha-law", t.law, tk, ctx);
    return r;
}

EpfBasis random_basis(int M, std::mt19937_64& rng, double kappa_max) {
    if (M < 0) throw DomainError("random_basis: M must be non-negative");
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Operator H(M + 1, M + 1);
        for (Eigen::Index i = 0; i < H.rows(); ++i) {
            for (Eigen::Index j = 0; j < H.cols(); ++j) H(i, j) = Complex(gauss(rng), gauss(rng));
        }
        if (condition_number(H) <= kappa_max) return EpfBasis::from_matrix(H);
    }
    throw DomainError("random_basis: could not draw a basis under the condition cap");
}

}  // namespace pbtk::epf
