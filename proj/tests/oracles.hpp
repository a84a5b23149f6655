#pragma once

// Reference values computed without the library's own routines.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

/// Gamma(n, x) / (n-1)! for integer n >= 1: exp(-x) sum_{k<n} x^k / k!.
inline double upper_gamma_ratio(int n, double x) {
    double term = std::exp(-x), sum = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += term;
        term *= x / (k + 1);
    }
    return sum;
}

/// Smallest R with upper_gamma_ratio(N + 1, R^2) <= tail, by bisection.
inline double tail_radius(int N, double tail) {
    double lo = 0.0, hi = 50.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (upper_gamma_ratio(N + 1, mid * mid) > tail ? lo : hi) = mid;
    }
    return hi;
}

/// exp(-|z|^2) sum_{k<=K} |z|^{2k} / k!
inline double overlap_series(double modulus, int K) {
    const double x = modulus * modulus;
    double term = 1.0, sum = 0.0;
    for (int k = 0; k <= K; ++k) {
        sum += term;
        term *= x / (k + 1);
    }
    return std::exp(-x) * sum;
}

/// Diagonal of {A0, A0^dagger} for the truncated annihilator on C^{M+1}.
inline std::vector<double> anticommutator_diagonal(int M) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M + 1, M + 1);
    for (int k = 1; k <= M; ++k) A(k - 1, k) = std::sqrt(double(k));
    Eigen::MatrixXd C = A * A.transpose() + A.transpose() * A;
    std::vector<double> d(M + 1);
    for (int k = 0; k <= M; ++k) d[k] = C(k, k);
    return d;
}

/// Matrix with i.i.d. complex Gaussian entries.
inline Eigen::MatrixXcd gaussian_matrix(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
