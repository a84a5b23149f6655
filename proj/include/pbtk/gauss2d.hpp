#pragma once

#include <compare>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "pbtk/numkernel.hpp"

namespace pbtk::gauss2d {

inline constexpr int kDefaultDegreeCap = 16;

/// Bivariate polynomial sum c[m1][m2] x1^m1 x2^m2 with complex coefficients.
class Poly2 {
public:
    Poly2() = default;

    static Poly2 constant(Complex c);
    static Poly2 monomial(int m1, int m2, Complex c = 1.0);

    /// Coefficient of x1^m1 x2^m2; zero outside the table.
    Complex coeff(int m1, int m2) const;
    /// Mutable access; grows the table when needed.
    Complex& at(int m1, int m2);

    /// Total degree of the highest non-zero monomial, -1 for the zero polynomial.
    int degree() const;
    bool is_zero() const { return degree() < 0; }

    /// Drops zero rows and columns beyond the highest non-zero monomial.
    Poly2& trim();

    Complex operator()(double x1, double x2) const;

    Poly2 derivative(int j) const;
    Poly2 times_x(int j) const;
    /// Coefficient-wise conjugate, i.e. conj(P(x)) for real x.
    Poly2 conj() const;
    /// P(x1 + d1, x2 + d2), by binomial re-expansion.
    Poly2 translated(Complex d1, Complex d2) const;

    double max_abs() const;

    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    Poly2& operator*=(Complex s);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(Poly2 a, Complex s) { return a *= s; }
    friend Poly2 operator*(Complex s, Poly2 a) { return a *= s; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);

    /// Rows index the x1 power, columns the x2 power.
    const Eigen::MatrixXcd& table() const { return c_; }

private:
    Eigen::MatrixXcd c_;
};

/**
 * State P(x) exp(-1/2 x^T Q x - L^T x) on R^2.
 *
 * Q is complex symmetric with positive definite real part.
 */
struct GaussPoly {
    Eigen::Matrix2cd Q = Eigen::Matrix2cd::Identity();
    Eigen::Vector2cd L = Eigen::Vector2cd::Zero();
    Poly2 P;

    Complex operator()(double x1, double x2) const;
    bool is_zero() const { return P.is_zero(); }

    /// Throws DomainError unless Q is symmetric with Re(Q) positive definite.
    void validate() const;
};

/// Parameters of the two-dimensional model: |epsilon| < 1 and xi = +-1.
struct ModelParams {
    double epsilon = 0.0;
    int xi = 1;
    double s1 = 1.0;           // sqrt(1 + epsilon xi)
    double s2 = 1.0;           // sqrt(1 - epsilon xi)
    double alpha_plus = 1.0;   // (s1 + s2) / 2
    double alpha_minus = 0.0;  // (s1 - s2) / 2
    Complex k_minus;           // -i xi alpha_- / sqrt(1 - epsilon^2)
    Complex k_plus;            // i alpha_+ / sqrt(1 - epsilon^2)

    static ModelParams make(double epsilon, int xi);
};

/// Normal-ordered monomial x1^x1 x2^x2 d1^d1 d2^d2.
struct Monomial {
    int x1 = 0, x2 = 0, d1 = 0, d2 = 0;
    auto operator<=>(const Monomial&) const = default;
};

/// Differential operator with polynomial coefficients, stored normal ordered
/// (multiplications left of derivatives).
class DiffOp {
public:
    DiffOp() = default;

    static DiffOp scalar(Complex c);
    static DiffOp x(int j);
    /// d/dx_j
    static DiffOp d(int j);
    /// Momentum -i d/dx_j.
    static DiffOp p(int j);

    const std::map<Monomial, Complex>& terms() const { return terms_; }
    Complex coefficient(const Monomial& m) const;

    /// Largest total degree (x and d powers) over the non-zero terms.
    int order() const;

    /// Formal adjoint: x_j^dagger = x_j, d_j^dagger = -d_j, scalars conjugated.
    DiffOp adjoint() const;

    /// Drops terms with |coefficient| <= cutoff.
    DiffOp& prune(double cutoff = 0.0);

    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    DiffOp& operator*=(Complex s);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend DiffOp operator*(DiffOp a, Complex s) { return a *= s; }
    friend DiffOp operator*(Complex s, DiffOp a) { return a *= s; }
    /// Composition (this operator applied after `b`).
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b);

private:
    void add_term(const Monomial& m, Complex c);
    std::map<Monomial, Complex> terms_;
};

DiffOp commutator(const DiffOp& a, const DiffOp& b);

/// Largest |coefficient| difference between two operators.
double distance(const DiffOp& a, const DiffOp& b);

struct ModelOps {
    DiffOp a1, a2, b1, b2;
    DiffOp a1_dag, a2_dag, b1_dag, b2_dag;
    DiffOp H;  // (p1^2 + x1^2) + (p2^2 + x2^2 + 2i x2) + 2 epsilon x1 x2
};

ModelOps model_ops(const ModelParams& p);

/// sqrt(1+eps xi)(2 N1 + 1) + sqrt(1-eps xi)(2 N2 + 1) + 1/(1-eps^2), with N_j = b_j a_j.
DiffOp ladder_hamiltonian(const ModelParams& p);

/**
 * Exact action of `op` on `s`; Q and L are unchanged and only P is rewritten.
 *
 * Coefficients whose magnitude is within the rounding bound of their own
 * accumulated contributions are set to zero, so analytic cancellations
 * produce exact zeros.
 */
GaussPoly apply_op(const DiffOp& op, const GaussPoly& s, int degree_cap = kDefaultDegreeCap);

struct Vacua {
    GaussPoly phi;  // annihilated by a_1, a_2; ||phi|| = 1, real positive constant
    GaussPoly psi;  // annihilated by b_1^dagger, b_2^dagger; <phi, psi> = 1
};

Vacua build_vacua(const ModelParams& p);

struct Excited {
    GaussPoly phi;  // b1^n1 b2^n2 phi_00 / sqrt(n1! n2!)
    GaussPoly psi;  // (a1^dagger)^n1 (a2^dagger)^n2 psi_00 / sqrt(n1! n2!)
};

Excited excite(const ModelParams& p, int n1, int n2, int degree_cap = kDefaultDegreeCap);

/// int conj(f) g over R^2 in closed form (Gaussian moments by Wick recursion).
Complex inner(const GaussPoly& f, const GaussPoly& g);

struct QuadratureGram {
    Eigen::MatrixXcd gram;  // gram(i, j) = int conj(fs[i]) gs[j]
    int nodes = 0;          // per-axis node count at convergence
    double change = 0.0;    // last relative change between refinements
};

/// Tensor Gauss-Legendre on [-w, w]^2, doubling the node count until
/// successive Gram matrices agree to rtol. half_width <= 0 picks w from the
/// slowest-decaying integrand so that the truncated mass is negligible.
QuadratureGram inner_by_quadrature(const std::vector<GaussPoly>& fs, const std::vector<GaussPoly>& gs,
                                   double half_width = 0.0, double rtol = 1e-12);

struct EnergyCheck {
    Complex computed;   // least-squares eigenvalue of H on the coefficient table
    double expected = 0.0;
    double residual = 0.0;  // max|coef(H phi - E phi)| / (|E| max|coef(phi)|)
};

EnergyCheck energy_check(const ModelParams& p, int n1, int n2);

double expected_energy(const ModelParams& p, int n1, int n2);

/// Signs of the complex translation realizing Theta = T^2; fixed so that
/// Theta phi_00 is proportional to psi_00.
inline constexpr int kThetaSign1 = +1;
inline constexpr int kThetaSign2 = +1;

/// Translation d with (Theta^power f)(x) = f(x + d):
/// power * (2i epsilon beta sigma_1, -2i beta sigma_2), beta = 1/(1-epsilon^2).
Eigen::Vector2cd theta_translation(const ModelParams& p, int power = 1);

/// Theta^power applied by exact substitution x -> x + d.
GaussPoly theta_shift(const ModelParams& p, const GaussPoly& s, int power = 1);

}  // namespace pbtk::gauss2d
