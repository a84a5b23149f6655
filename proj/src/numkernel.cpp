#include "pbtk/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pbtk/errors.hpp"

namespace pbtk {

double TolerancePolicy::threshold(double condition_estimate) const {
    if (!(base_rtol > 0.0)) throw DomainError("base_rtol must be positive");
    if (!condition_scale) return base_rtol;
    return base_rtol * std::max(1.0, condition_estimate);
}

void require_operator(const Operator& op, const char* what) {
    if (op.rows() == 0 || op.rows() != op.cols()) {
        std::ostringstream os;
        os << what << " must be a non-empty square matrix, got " << op.rows() << "x" << op.cols();
        throw DomainError(os.str());
    }
    if (!op.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
}

void require_ket(const Ket& k, const char* what) {
    if (k.size() == 0) throw DomainError(std::string(what) + " is empty");
    if (!k.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
}

Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

Operator outer(const Ket& u, const Ket& v) { return u * v.adjoint(); }

Complex braket(const Ket& u, const Ket& v) { return u.dot(v); }

Operator commutator(const Operator& x, const Operator& y) { return x * y - y * x; }

Operator anticommutator(const Operator& x, const Operator& y) { return x * y + y * x; }

double opnorm(const Operator& op) {
    if (op.size() == 0) return 0.0;
    Eigen::JacobiSVD<Operator> svd(op);
    return svd.singularValues()(0);
}

double condition_number(const Operator& op) {
    Eigen::JacobiSVD<Operator> svd(op);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

double hermiticity_defect(const Operator& op) { return opnorm(op - op.adjoint()); }

void fix_phase(Ket& k, double rel_cutoff) {
    const double big = k.cwiseAbs().maxCoeff();
    if (big == 0.0) return;
    for (Eigen::Index i = 0; i < k.size(); ++i) {
        const double m = std::abs(k(i));
        if (m > rel_cutoff * big) {
            k *= std::conj(k(i)) / m;
            k(i) = Complex(m, 0.0);
            return;
        }
    }
}

Operator from_columns(const std::vector<Ket>& columns) {
    if (columns.empty()) return Operator();
    Operator out(columns.front().size(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != out.rows()) throw DomainError("columns have inconsistent lengths");
        out.col(static_cast<Eigen::Index>(j)) = columns[j];
    }
    return out;
}

std::vector<Ket> to_columns(const Operator& op) {
    std::vector<Ket> out;
    out.reserve(static_cast<std::size_t>(op.cols()));
    for (Eigen::Index j = 0; j < op.cols(); ++j) out.emplace_back(op.col(j));
    return out;
}

std::vector<Ket> null_space(const Operator& a, const TolerancePolicy& tol) {
    require_operator(a, "null_space input");
    Eigen::JacobiSVD<Operator> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = tol.threshold() * s(0);
    std::vector<Ket> basis;
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        if (s(j) <= cutoff) basis.emplace_back(svd.matrixV().col(j));
    }
    return basis;
}

namespace {

Eigen::SelfAdjointEigenSolver<Operator> checked_positive_eigen(const Operator& p,
                                                               const TolerancePolicy& tol) {
    require_operator(p, "herm_sqrt input");
    const double scale = opnorm(p);
    const double defect = hermiticity_defect(p);
    if (defect > tol.threshold() * std::max(scale, 1e-300)) {
        std::ostringstream os;
        os << "herm_sqrt: input is not Hermitian (||P - P^dagger|| = " << defect
           << ", ||P|| = " << scale << ")";
        throw DomainError(os.str());
    }
    const Operator sym = 0.5 * (p + p.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> es(sym);
    const auto& ev = es.eigenvalues();
    const double lmax = ev(ev.size() - 1);
    const double lmin = ev(0);
    if (!(lmax > 0.0) || lmin <= tol.threshold() * lmax) {
        std::ostringstream os;
        os.precision(17);
        os << "herm_sqrt: input is not positive definite, eigenvalue " << lmin
           << " (largest " << lmax << ")";
        throw DomainError(os.str());
    }
    return es;
}

}  // namespace

Operator herm_sqrt(const Operator& p, const TolerancePolicy& tol) {
    const auto es = checked_positive_eigen(p, tol);
    const Operator& v = es.eigenvectors();
    return v * es.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() * v.adjoint();
}

Operator herm_inv_sqrt(const Operator& p, const TolerancePolicy& tol) {
    const auto es = checked_positive_eigen(p, tol);
    const Operator& v = es.eigenvectors();
    return v * es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
           v.adjoint();
}

BiorthogonalEigensystem eig_biorthogonal(const Operator& a, const TolerancePolicy& tol) {
    require_operator(a, "eig_biorthogonal input");
    const Eigen::Index n = a.rows();
    Eigen::ComplexEigenSolver<Operator> es(a, true);
    if (es.info() != Eigen::Success) throw DefectiveMatrix("eigen-decomposition did not converge");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    const auto& lam = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        if (lam(i).real() != lam(j).real()) return lam(i).real() < lam(j).real();
        return lam(i).imag() < lam(j).imag();
    });

    Operator right(n, n);
    BiorthogonalEigensystem out;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        Ket v = es.eigenvectors().col(src);
        v.normalize();
        fix_phase(v);
        right.col(k) = v;
        out.values.push_back(lam(src));
    }

    const double kappa = condition_number(right);
    const double gap_cut = tol.threshold(kappa) * opnorm(a);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double gap = std::abs(out.values[static_cast<std::size_t>(i)] -
                                        out.values[static_cast<std::size_t>(j)]);
            if (!(gap > gap_cut)) {
                std::ostringstream os;
                os << "eigenvalues " << i << " and " << j << " coincide within " << gap_cut
                   << " (gap " << gap << "): defective or exceptional point";
                throw DefectiveMatrix(os.str());
            }
        }
    }
    if (!std::isfinite(kappa)) throw DefectiveMatrix("eigenvector matrix is singular");

    const Operator left = right.inverse().adjoint();
    for (Eigen::Index k = 0; k < n; ++k) {
        out.right.emplace_back(right.col(k));
        out.left.emplace_back(left.col(k));
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double lo, double hi) {
    if (n <= 0) throw DomainError("gauss_legendre: node count must be positive");
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    const double mid = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double wt = 2.0 / ((1.0 - z * z) * dp * dp);
        x[static_cast<std::size_t>(i)] = mid - half * z;
        x[static_cast<std::size_t>(n - 1 - i)] = mid + half * z;
        w[static_cast<std::size_t>(i)] = half * wt;
        w[static_cast<std::size_t>(n - 1 - i)] = half * wt;
    }
    return {x, w};
}

}  // namespace pbtk
