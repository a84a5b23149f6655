#include "pbtk/gauss2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pbtk/errors.hpp"

namespace pbtk::gauss2d {

namespace {

constexpr Complex kI{0.0, 1.0};

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double falling(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= n - i;
    return r;
}

Poly2 abs_poly(const Poly2& p) {
    Poly2 r;
    const auto& t = p.table();
    for (Eigen::Index i = 0; i < t.rows(); ++i)
        for (Eigen::Index j = 0; j < t.cols(); ++j)
            if (t(i, j) != Complex(0.0)) r.at(int(i), int(j)) = std::abs(t(i, j));
    return r;
}

// P -> d_j P - P (Q x + L)_j, i.e. the derivative of P exp(...) divided by the Gaussian.
// With `magnitude` set, every contribution is added instead, giving a bound on
// the absolute size of the terms that produced each coefficient.
Poly2 gauss_derivative(const Poly2& P, int j, const Eigen::Matrix2cd& Q, const Eigen::Vector2cd& L,
                       bool magnitude) {
    Poly2 r = P.derivative(j);
    Poly2 t = P.times_x(0) * Q(j, 0) + P.times_x(1) * Q(j, 1) + P * L(j);
    if (magnitude) r += t;
    else r -= t;
    return r;
}

Poly2 apply_terms(const DiffOp& op, const Poly2& P, const Eigen::Matrix2cd& Q, const Eigen::Vector2cd& L,
                  bool magnitude) {
    Poly2 out;
    for (const auto& [m, c] : op.terms()) {
        Poly2 cur = P;
        for (int k = 0; k < m.d1; ++k) cur = gauss_derivative(cur, 0, Q, L, magnitude);
        for (int k = 0; k < m.d2; ++k) cur = gauss_derivative(cur, 1, Q, L, magnitude);
        for (int k = 0; k < m.x1; ++k) cur = cur.times_x(0);
        for (int k = 0; k < m.x2; ++k) cur = cur.times_x(1);
        out += cur * (magnitude ? Complex(std::abs(c)) : c);
    }
    return out;
}

void require_model(const ModelParams& p) {
    if (!(std::abs(p.epsilon) < 1.0)) throw DomainError("gauss2d: |epsilon| must be < 1");
    if (p.xi != 1 && p.xi != -1) throw DomainError("gauss2d: xi must be +1 or -1");
}

Complex gaussian_exponent(const GaussPoly& s, double x1, double x2) {
    Eigen::Vector2cd x(x1, x2);
    return -0.5 * (x.transpose() * s.Q * x)(0, 0) - (s.L.transpose() * x)(0, 0);
}

}  // namespace

// Poly2 -----------------------------------------------------------------------

Poly2 Poly2::constant(Complex c) { return monomial(0, 0, c); }

Poly2 Poly2::monomial(int m1, int m2, Complex c) {
    Poly2 p;
    p.at(m1, m2) = c;
    return p;
}

Complex Poly2::coeff(int m1, int m2) const {
    if (m1 < 0 || m2 < 0 || m1 >= c_.rows() || m2 >= c_.cols()) return 0.0;
    return c_(m1, m2);
}

Complex& Poly2::at(int m1, int m2) {
    if (m1 < 0 || m2 < 0) throw DomainError("Poly2: negative exponent");
    if (m1 >= c_.rows() || m2 >= c_.cols()) {
        Eigen::Index r = std::max<Eigen::Index>(c_.rows(), m1 + 1);
        Eigen::Index k = std::max<Eigen::Index>(c_.cols(), m2 + 1);
        Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(r, k);
        n.topLeftCorner(c_.rows(), c_.cols()) = c_;
        c_ = std::move(n);
    }
    return c_(m1, m2);
}

int Poly2::degree() const {
    int d = -1;
    for (Eigen::Index i = 0; i < c_.rows(); ++i)
        for (Eigen::Index j = 0; j < c_.cols(); ++j)
            if (c_(i, j) != Complex(0.0)) d = std::max(d, int(i + j));
    return d;
}

Poly2& Poly2::trim() {
    Eigen::Index r = 0, k = 0;
    for (Eigen::Index i = 0; i < c_.rows(); ++i)
        for (Eigen::Index j = 0; j < c_.cols(); ++j)
            if (c_(i, j) != Complex(0.0)) {
                r = std::max(r, i + 1);
                k = std::max(k, j + 1);
            }
    c_ = c_.topLeftCorner(r, k).eval();
    return *this;
}

Complex Poly2::operator()(double x1, double x2) const {
    Complex acc = 0.0;
    for (Eigen::Index i = c_.rows() - 1; i >= 0; --i) {
        Complex row = 0.0;
        for (Eigen::Index j = c_.cols() - 1; j >= 0; --j) row = row * x2 + c_(i, j);
        acc = acc * x1 + row;
    }
    return acc;
}

Poly2 Poly2::derivative(int j) const {
    Poly2 r;
    for (Eigen::Index m1 = 0; m1 < c_.rows(); ++m1)
        for (Eigen::Index m2 = 0; m2 < c_.cols(); ++m2) {
            Complex c = c_(m1, m2);
            if (c == Complex(0.0)) continue;
            if (j == 0 && m1 > 0) r.at(int(m1 - 1), int(m2)) += double(m1) * c;
            if (j == 1 && m2 > 0) r.at(int(m1), int(m2 - 1)) += double(m2) * c;
        }
    return r;
}

Poly2 Poly2::times_x(int j) const {
    Poly2 r;
    if (c_.size() == 0) return r;
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(c_.rows() + (j == 0), c_.cols() + (j == 1));
    n.bottomRightCorner(c_.rows(), c_.cols()) = c_;
    r.c_ = std::move(n);
    return r;
}

Poly2 Poly2::conj() const {
    Poly2 r;
    r.c_ = c_.conjugate();
    return r;
}

Poly2 Poly2::translated(Complex d1, Complex d2) const {
    Poly2 r;
    for (Eigen::Index m1 = 0; m1 < c_.rows(); ++m1)
        for (Eigen::Index m2 = 0; m2 < c_.cols(); ++m2) {
            Complex c = c_(m1, m2);
            if (c == Complex(0.0)) continue;
            for (int i = 0; i <= m1; ++i) {
                Complex f1 = binomial(int(m1), i) * std::pow(d1, int(m1) - i);
                for (int j = 0; j <= m2; ++j)
                    r.at(i, j) += c * f1 * binomial(int(m2), j) * std::pow(d2, int(m2) - j);
            }
        }
    return r;
}

double Poly2::max_abs() const { return c_.size() ? c_.cwiseAbs().maxCoeff() : 0.0; }

Poly2& Poly2::operator+=(const Poly2& o) {
    if (o.c_.size() == 0) return *this;
    at(int(o.c_.rows() - 1), int(o.c_.cols() - 1));
    c_.topLeftCorner(o.c_.rows(), o.c_.cols()) += o.c_;
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
    if (o.c_.size() == 0) return *this;
    at(int(o.c_.rows() - 1), int(o.c_.cols() - 1));
    c_.topLeftCorner(o.c_.rows(), o.c_.cols()) -= o.c_;
    return *this;
}

Poly2& Poly2::operator*=(Complex s) {
    c_ *= s;
    return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r;
    const auto& x = a.c_;
    const auto& y = b.c_;
    if (x.size() == 0 || y.size() == 0) return r;
    r.c_ = Eigen::MatrixXcd::Zero(x.rows() + y.rows() - 1, x.cols() + y.cols() - 1);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            if (x(i, j) == Complex(0.0)) continue;
            r.c_.block(i, j, y.rows(), y.cols()) += x(i, j) * y;
        }
    return r;
}

// GaussPoly -------------------------------------------------------------------

Complex GaussPoly::operator()(double x1, double x2) const {
    return P(x1, x2) * std::exp(gaussian_exponent(*this, x1, x2));
}

void GaussPoly::validate() const {
    if (!Q.allFinite() || !L.allFinite() || !P.table().allFinite())
        throw DomainError("GaussPoly: non-finite entries");
    if (std::abs(Q(0, 1) - Q(1, 0)) > 1e-12 * Q.norm()) throw DomainError("GaussPoly: Q must be symmetric");
    Eigen::Matrix2d R = Q.real();
    if (!(R(0, 0) > 0.0 && R.determinant() > 0.0))
        throw DomainError("GaussPoly: Re(Q) must be positive definite");
}

// ModelParams -----------------------------------------------------------------

ModelParams ModelParams::make(double epsilon, int xi) {
    ModelParams p;
    p.epsilon = epsilon;
    p.xi = xi;
    require_model(p);
    p.s1 = std::sqrt(1.0 + epsilon * xi);
    p.s2 = std::sqrt(1.0 - epsilon * xi);
    p.alpha_plus = 0.5 * (p.s1 + p.s2);
    p.alpha_minus = 0.5 * (p.s1 - p.s2);
    double root = std::sqrt(1.0 - epsilon * epsilon);
    p.k_minus = -kI * double(xi) * p.alpha_minus / root;
    p.k_plus = kI * p.alpha_plus / root;
    return p;
}

// DiffOp ----------------------------------------------------------------------

DiffOp DiffOp::scalar(Complex c) {
    DiffOp o;
    o.add_term({}, c);
    return o;
}

DiffOp DiffOp::x(int j) {
    DiffOp o;
    Monomial m;
    (j == 0 ? m.x1 : m.x2) = 1;
    o.add_term(m, 1.0);
    return o;
}

DiffOp DiffOp::d(int j) {
    DiffOp o;
    Monomial m;
    (j == 0 ? m.d1 : m.d2) = 1;
    o.add_term(m, 1.0);
    return o;
}

DiffOp DiffOp::p(int j) { return d(j) * Complex(0.0, -1.0); }

void DiffOp::add_term(const Monomial& m, Complex c) {
    if (c == Complex(0.0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0)) terms_.erase(it);
    }
}

Complex DiffOp::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

int DiffOp::order() const {
    int o = 0;
    for (const auto& [m, c] : terms_) o = std::max(o, m.x1 + m.x2 + m.d1 + m.d2);
    return o;
}

DiffOp DiffOp::adjoint() const {
    DiffOp out;
    for (const auto& [m, c] : terms_) {
        // (c x^a d^b)^dagger = conj(c) (-1)^|b| d^b x^a
        DiffOp dpart;
        dpart.add_term({0, 0, m.d1, m.d2}, ((m.d1 + m.d2) % 2 ? -1.0 : 1.0) * std::conj(c));
        DiffOp xpart;
        xpart.add_term({m.x1, m.x2, 0, 0}, 1.0);
        out += dpart * xpart;
    }
    return out;
}

DiffOp& DiffOp::prune(double cutoff) {
    std::erase_if(terms_, [cutoff](const auto& kv) { return std::abs(kv.second) <= cutoff; });
    return *this;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

DiffOp& DiffOp::operator*=(Complex s) {
    if (s == Complex(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    // d^k x^g = sum_i C(k,i) g!/(g-i)! x^{g-i} d^{k-i}, per coordinate.
    DiffOp out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            for (int i = 0; i <= std::min(ma.d1, mb.x1); ++i) {
                double w1 = binomial(ma.d1, i) * falling(mb.x1, i);
                for (int j = 0; j <= std::min(ma.d2, mb.x2); ++j) {
                    double w2 = binomial(ma.d2, j) * falling(mb.x2, j);
                    Monomial m{ma.x1 + mb.x1 - i, ma.x2 + mb.x2 - j, ma.d1 - i + mb.d1, ma.d2 - j + mb.d2};
                    out.add_term(m, ca * cb * (w1 * w2));
                }
            }
    return out;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return a * b - b * a; }

double distance(const DiffOp& a, const DiffOp& b) {
    double d = 0.0;
    DiffOp diff = a - b;
    for (const auto& [m, c] : diff.terms()) d = std::max(d, std::abs(c));
    return d;
}

ModelOps model_ops(const ModelParams& p) {
    require_model(p);
    const double xi = p.xi;
    auto x1 = DiffOp::x(0), x2 = DiffOp::x(1), d1 = DiffOp::d(0), d2 = DiffOp::d(1);

    auto ladder = [&](double s, double sign_xi, double sign_d) {
        DiffOp body = (sign_d * d1 + s * x1) + sign_xi * (sign_d * d2 + s * x2) +
                      DiffOp::scalar(kI * sign_xi / s);
        return body * Complex(1.0 / (2.0 * std::sqrt(s)));
    };

    ModelOps ops;
    ops.a1 = ladder(p.s1, xi, +1.0);
    ops.a2 = ladder(p.s2, -xi, +1.0);
    ops.b1 = ladder(p.s1, xi, -1.0);
    ops.b2 = ladder(p.s2, -xi, -1.0);
    ops.a1_dag = ops.a1.adjoint();
    ops.a2_dag = ops.a2.adjoint();
    ops.b1_dag = ops.b1.adjoint();
    ops.b2_dag = ops.b2.adjoint();
    ops.H = Complex(-1.0) * (d1 * d1) - d2 * d2 + x1 * x1 + x2 * x2 + kI * 2.0 * x2 +
            Complex(2.0 * p.epsilon) * (x1 * x2);
    return ops;
}

DiffOp ladder_hamiltonian(const ModelParams& p) {
    ModelOps o = model_ops(p);
    DiffOp one = DiffOp::scalar(1.0);
    return Complex(p.s1) * (Complex(2.0) * (o.b1 * o.a1) + one) +
           Complex(p.s2) * (Complex(2.0) * (o.b2 * o.a2) + one) +
           DiffOp::scalar(1.0 / (1.0 - p.epsilon * p.epsilon));
}

// States ----------------------------------------------------------------------

GaussPoly apply_op(const DiffOp& op, const GaussPoly& s, int degree_cap) {
    int deg = s.P.degree();
    if (deg >= 0) {
        int needed = deg + op.order();
        if (needed > degree_cap) throw DegreeOverflow(needed, degree_cap);
    }
    GaussPoly out = s;
    out.P = apply_terms(op, s.P, s.Q, s.L, false);
    Poly2 bound = apply_terms(op, abs_poly(s.P), s.Q.cwiseAbs().cast<Complex>(),
                              s.L.cwiseAbs().cast<Complex>(), true);
    const double eps = std::numeric_limits<double>::epsilon();
    int lim = std::max(out.P.degree(), 0);
    for (int i = 0; i <= lim; ++i)
        for (int j = 0; j <= lim - i; ++j) {
            Complex& c = out.P.at(i, j);
            if (std::abs(c) <= 256.0 * eps * std::abs(bound.coeff(i, j))) c = 0.0;
        }
    out.P.trim();
    return out;
}

Vacua build_vacua(const ModelParams& p) {
    require_model(p);
    Eigen::Matrix2cd Q;
    Q << p.alpha_plus, p.xi * p.alpha_minus, p.xi * p.alpha_minus, p.alpha_plus;
    Vacua v;
    v.phi.Q = Q;
    v.phi.L = Eigen::Vector2cd(p.k_minus, p.k_plus);
    v.phi.P = Poly2::constant(1.0);
    v.psi.Q = Q;
    v.psi.L = -v.phi.L;
    v.psi.P = Poly2::constant(1.0);

    double n2 = inner(v.phi, v.phi).real();
    v.phi.P *= 1.0 / std::sqrt(n2);
    v.psi.P *= 1.0 / inner(v.phi, v.psi);
    return v;
}

Excited excite(const ModelParams& p, int n1, int n2, int degree_cap) {
    if (n1 < 0 || n2 < 0) throw DomainError("excite: occupation numbers must be non-negative");
    if (n1 + n2 > degree_cap) throw DegreeOverflow(n1 + n2, degree_cap);
    ModelOps ops = model_ops(p);
    Vacua v = build_vacua(p);
    Excited e{v.phi, v.psi};
    for (int k = 0; k < n2; ++k) {
        e.phi = apply_op(ops.b2, e.phi, degree_cap);
        e.psi = apply_op(ops.a2_dag, e.psi, degree_cap);
    }
    for (int k = 0; k < n1; ++k) {
        e.phi = apply_op(ops.b1, e.phi, degree_cap);
        e.psi = apply_op(ops.a1_dag, e.psi, degree_cap);
    }
    double norm = 1.0 / std::sqrt(std::tgamma(n1 + 1.0) * std::tgamma(n2 + 1.0));
    e.phi.P *= norm;
    e.psi.P *= norm;
    return e;
}

Complex inner(const GaussPoly& f, const GaussPoly& g) {
    // int exp(-1/2 x^T A x - B^T x) x^(p,q) dx via integration by parts:
    // A <x^{alpha+e}> = alpha_j <x^{alpha-e_j}> - B_j <x^alpha>.
    Eigen::Matrix2cd A = f.Q.conjugate() + g.Q;
    Eigen::Vector2cd B = f.L.conjugate() + g.L;
    Eigen::Matrix2d R = A.real();
    if (!(R(0, 0) > 0.0 && R.determinant() > 0.0))
        throw DomainError("inner: Re(conj(Q_f) + Q_g) must be positive definite");

    Complex tr = A.trace(), det = A.determinant();
    Complex disc = std::sqrt(0.25 * tr * tr - det);
    Complex sqrt_det = std::sqrt(0.5 * tr + disc) * std::sqrt(0.5 * tr - disc);
    Eigen::Matrix2cd C = A.inverse();
    Complex Z = 2.0 * M_PI / sqrt_det * std::exp(0.5 * (B.transpose() * C * B)(0, 0));

    int df = f.P.degree(), dg = g.P.degree();
    if (df < 0 || dg < 0) return 0.0;
    int D = df + dg;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(D + 2, D + 2);
    M(0, 0) = 1.0;
    for (int t = 0; t < D; ++t)
        for (int p = 0; p <= t; ++p) {
            int q = t - p;
            Eigen::Vector2cd rhs;
            rhs(0) = (p > 0 ? double(p) * M(p - 1, q) : Complex(0.0)) - B(0) * M(p, q);
            rhs(1) = (q > 0 ? double(q) * M(p, q - 1) : Complex(0.0)) - B(1) * M(p, q);
            Eigen::Vector2cd v = C * rhs;
            M(p + 1, q) = v(0);
            if (p == 0) M(0, q + 1) = v(1);
        }

    const auto& tf = f.P.table();
    const auto& tg = g.P.table();
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < tf.rows(); ++i)
        for (Eigen::Index j = 0; j < tf.cols(); ++j) {
            Complex cf = std::conj(tf(i, j));
            if (cf == Complex(0.0)) continue;
            for (Eigen::Index k = 0; k < tg.rows(); ++k)
                for (Eigen::Index l = 0; l < tg.cols(); ++l)
                    if (tg(k, l) != Complex(0.0)) acc += cf * tg(k, l) * M(i + k, j + l);
        }
    return Z * acc;
}

QuadratureGram inner_by_quadrature(const std::vector<GaussPoly>& fs, const std::vector<GaussPoly>& gs,
                                   double half_width, double rtol) {
    if (fs.empty() || gs.empty()) throw DomainError("inner_by_quadrature: empty state list");
    double w = half_width;
    if (w <= 0.0) {
        w = 8.0;
        for (const auto& f : fs)
            for (const auto& g : gs) {
                Eigen::Matrix2d R = (f.Q.conjugate() + g.Q).real();
                Eigen::Vector2d b = (f.L.conjugate() + g.L).real();
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(R);
                double lam = es.eigenvalues()(0);
                if (!(lam > 0.0)) throw DomainError("inner_by_quadrature: integrand does not decay");
                double centre = (R.inverse() * b).cwiseAbs().maxCoeff();
                int D = std::max(f.P.degree(), 0) + std::max(g.P.degree(), 0);
                double r = 5.0;
                for (int it = 0; it < 8; ++it)
                    r = std::sqrt(2.0 * (46.0 + D * std::log(std::max(1.0, centre + r))) / lam);
                w = std::max(w, centre + r);
            }
    }

    auto gram_at = [&](int n) {
        auto [x, wt] = gauss_legendre(n, -w, w);
        const Eigen::Index pts = Eigen::Index(n) * n;
        Eigen::MatrixXcd F(pts, fs.size()), G(pts, gs.size());
        Eigen::VectorXd W(pts);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Eigen::Index r = Eigen::Index(i) * n + j;
                W(r) = wt[i] * wt[j];
                for (std::size_t k = 0; k < fs.size(); ++k) F(r, k) = fs[k](x[i], x[j]);
                for (std::size_t k = 0; k < gs.size(); ++k) G(r, k) = gs[k](x[i], x[j]);
            }
        return Eigen::MatrixXcd(F.adjoint() * W.asDiagonal() * G);
    };

    QuadratureGram out;
    int n = 64;
    Eigen::MatrixXcd prev = gram_at(n);
    for (;;) {
        int next = 2 * n;
        Eigen::MatrixXcd cur = gram_at(next);
        double scale = std::max(cur.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
        out.change = (cur - prev).cwiseAbs().maxCoeff() / scale;
        out.gram = cur;
        out.nodes = next;
        if (out.change <= rtol || next >= 1024) break;
        prev = std::move(cur);
        n = next;
    }
    return out;
}

double expected_energy(const ModelParams& p, int n1, int n2) {
    return p.s1 * (2.0 * n1 + 1.0) + p.s2 * (2.0 * n2 + 1.0) + 1.0 / (1.0 - p.epsilon * p.epsilon);
}

EnergyCheck energy_check(const ModelParams& p, int n1, int n2) {
    Excited e = excite(p, n1, n2);
    GaussPoly h = apply_op(model_ops(p).H, e.phi);
    EnergyCheck out;
    out.expected = expected_energy(p, n1, n2);

    Complex num = 0.0;
    double den = 0.0, diff = 0.0;
    int lim = std::max(h.P.degree(), e.phi.P.degree());
    for (int i = 0; i <= lim; ++i)
        for (int j = 0; j <= lim - i; ++j) {
            Complex c = e.phi.P.coeff(i, j), hc = h.P.coeff(i, j);
            num += std::conj(c) * hc;
            den += std::norm(c);
            diff = std::max(diff, std::abs(hc - out.expected * c));
        }
    out.computed = num / den;
    out.residual = diff / (std::abs(out.expected) * e.phi.P.max_abs());
    return out;
}

Eigen::Vector2cd theta_translation(const ModelParams& p, int power) {
    require_model(p);
    double beta = 1.0 / (1.0 - p.epsilon * p.epsilon);
    return double(power) *
           Eigen::Vector2cd(2.0 * kI * p.epsilon * beta * double(kThetaSign1), -2.0 * kI * beta * double(kThetaSign2));
}

GaussPoly theta_shift(const ModelParams& p, const GaussPoly& s, int power) {
    Eigen::Vector2cd d = theta_translation(p, power);
    GaussPoly out;
    out.Q = s.Q;
    out.L = s.L + s.Q * d;
    Complex factor = std::exp(-0.5 * (d.transpose() * s.Q * d)(0, 0) - (s.L.transpose() * d)(0, 0));
    out.P = s.P.translated(d(0), d(1)) * factor;
    return out;
}

}  // namespace pbtk::gauss2d
