// Acceptance runner: one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pbtk/cli.hpp"
#include "pbtk/dpb.hpp"
#include "pbtk/epf.hpp"
#include "pbtk/errors.hpp"
#include "pbtk/gauss2d.hpp"
#include "pbtk/pseudofermion.hpp"

using namespace pbtk;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void report_failures(const VerificationReport& r, const std::string& label) {
        for (const auto& e : r.entries())
            if (!e.pass) require(false, label + " " + e.check);
    }
};

int failures = 0;

void print(int id, const char* title, const Criterion& c) {
    std::printf("%s criterion %d: %s%s%s\n", c.pass ? "PASS" : "FAIL", id, title, c.detail.empty() ? "" : " -- ",
                c.detail.c_str());
    if (!c.pass) ++failures;
}

template <class F>
void run(int id, const char* title, F f) {
    Criterion c;
    try {
        f(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    print(id, title, c);
}

void two_level_model(Criterion& c) {
    const double tol = 1e-12;
    auto m = pf::heff_build({0.6, 1.0, std::numbers::pi / 3});
    auto es = eig_biorthogonal(m.H);
    c.require(std::abs(es.values[0] + 0.4) <= tol && std::abs(es.values[1] - 0.4) <= tol, "spectrum");
    auto sys = pf::pf_system(m.pair);
    c.report_failures(pf::pf_verify(sys, tol), "identity");
    c.report_failures(pf::pf_model_verify(m, sys, tol), "model");
    Operator h = pf::hermitize(sys, m.H);
    Operator want = m.Omega * (sys.c.adjoint() * sys.c - 0.5 * identity(2));
    c.require(opnorm(h - want) <= tol, "hermitian similarity");
    c.require(opnorm(sys.Sphi * sys.Spsi - identity(2)) <= tol, "metric product");
}

void model_hamiltonians(Criterion& c) {
    const double tol = 1e-10;
    const std::vector<pf::HamiltonianParams> models = {
        pf::DgParams{1.0, 2.0, 0.5, 0.3, 0.8},
        pf::DgParams{0.7, 1.5, 1.2, 1.1, -0.4},
        pf::DgParams{2.0, 0.5, 3.0, -0.6, 2.2},
        pf::GmmParams{0.2, -0.3, 0.5, 0.1, Complex(0.4, 0.1)},
        pf::GmmParams{1.0, 0.0, 0.2, 0.9, Complex(0.8, 0.0)},
        pf::GmmParams{-0.5, 0.5, 1.0, 1.0, Complex(0.3, -0.6)},
        pf::MoParams{1.0, std::numbers::pi / 4, 0.0},
        pf::MoParams{1.3, Complex(0.5, 0.2), Complex(0.9, 0.0)},
        pf::MoParams{-0.8, Complex(2.0, -0.3), Complex(0.1, 0.4)},
    };
    for (std::size_t i = 0; i < models.size(); ++i) {
        Operator H = pf::model_hamiltonian(models[i]);
        auto d = pf::pf_from_hamiltonian(H);
        c.require(std::abs(d.Omega) > 0.1, "gap of model " + std::to_string(i));
        c.report_failures(pf::pf_verify(d.system, tol), "model " + std::to_string(i));
        c.report_failures(pf::pf_decomposition_verify(H, d, tol), "model " + std::to_string(i));
    }
}

void alpha_table(Criterion& c) {
    const double tol = 1e-10;
    const std::vector<std::vector<double>> printed = {{1, 1}, {1, 3, 2}, {1, 3, 5, 3}};
    std::mt19937_64 rng(7);
    for (int M = 1; M <= 12; ++M) {
        auto law = oracle::anticommutator_diagonal(M);
        for (int trial = 0; trial < 100; ++trial) {
            auto sys = epf::epf_system(epf::random_basis(M, rng, 1e3));
            c.require(sys.kappa <= 1e3, "kappa cap M=" + std::to_string(M));
            for (int k = 0; k <= M; ++k) {
                c.require(std::abs(sys.alpha[k] - law[k]) <= tol, "law M=" + std::to_string(M));
                if (M <= 3) c.require(std::abs(sys.alpha[k] - printed[M - 1][k]) <= tol, "printed table");
            }
            auto r = epf::epf_verify(sys, tol);
            c.report_failures(r, "M=" + std::to_string(M));
        }
    }
}

void truncated_pseudo_bosons(Criterion& c) {
    const double tol = 1e-10;
    auto sys = dpb::dpb_build(dpb::RandomSpec{7, 100.0}, 40);
    const double k1 = tol * sys.kappa, k2 = k1 * sys.kappa;
    c.require(sys.kappa <= 100.0 * (1 + 1e-9), "kappa");
    auto r = dpb::dpb_verify(sys, tol);
    r.merge(dpb::dpb_theta_conjugacy(sys, tol, 7));
    c.report_failures(r, "");
    for (const char* name : {"dpb.biorthogonal", "dpb.theta-sum", "dpb.theta-inverse-sum", "dpb.theta-conjugacy",
                             "dpb.number-intertwining"}) {
        const auto* e = r.find(name);
        c.require(e && e->residual <= k2, name);
    }
    const auto* g = r.find("dpb.commutator-guarded");
    c.require(g && g->residual <= k1, "guarded commutator");
}

void bicoherent_states(Criterion& c) {
    auto sys = dpb::dpb_build(dpb::RandomSpec{7, 100.0}, 40);
    for (double m : {0.5, 1.0, 1.5, 2.0, 2.5})
        for (int K : {10, 17, 25, 32, 40}) {
            Complex z = std::polar(m, 0.7);
            auto bc = dpb::bicoherent(sys, z, K);
            double direct = (sys.a * bc.phi_z - z * bc.phi_z).norm();
            double closed = std::exp(-0.5 * m * m + (K + 1) * std::log(m) - 0.5 * std::lgamma(K + 1.0)) *
                            sys.phi[K].norm();
            // relative to the size of the two terms being subtracted
            double scale = std::max({1.0, closed, m * bc.phi_z.norm()});
            c.require(std::abs(direct - closed) <= 1e-12 * scale, "residual formula");
        }
    auto small = dpb::dpb_build(dpb::RandomSpec{7, 100.0}, 10);
    double R = oracle::tail_radius(10, 1e-10);
    auto res = dpb::bicoherent_resolution(small, R, 64);
    c.require(res.deviation <= 1e-8, "resolution deviation " + std::to_string(res.deviation));
}

void two_dimensional_model(Criterion& c) {
    using namespace gauss2d;
    for (double eps : {-0.8, -0.4, 0.0, 0.4, 0.8})
        for (int xi : {1, -1}) {
            auto p = ModelParams::make(eps, xi);
            auto o = model_ops(p);
            auto v = build_vacua(p);
            bool exact = apply_op(o.a1, v.phi).is_zero() && apply_op(o.a2, v.phi).is_zero() &&
                         apply_op(o.b1_dag, v.psi).is_zero() && apply_op(o.b2_dag, v.psi).is_zero();
            c.require(exact, "vacuum annihilation");
            for (int n1 = 0; n1 <= 4; ++n1)
                for (int n2 = 0; n2 <= 4; ++n2)
                    c.require(energy_check(p, n1, n2).residual <= 1e-10, "energy law");
        }

    auto p = ModelParams::make(0.4, 1);
    std::vector<GaussPoly> phis, psis;
    std::vector<std::pair<int, int>> occ;
    for (int t = 0; t <= 5; ++t)
        for (int n1 = t; n1 >= 0; --n1) occ.emplace_back(n1, t - n1);
    for (auto [n1, n2] : occ) {
        auto e = excite(p, n1, n2);
        phis.push_back(e.phi);
        psis.push_back(e.psi);
    }
    const int n = int(phis.size());
    Eigen::MatrixXcd moments(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) moments(i, j) = inner(phis[i], psis[j]);
    auto quad = inner_by_quadrature(phis, psis);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    c.require(oracle::max_abs(moments - id) <= 1e-8, "biorthogonality (moments)");
    c.require(oracle::max_abs(quad.gram - id) <= 1e-8, "biorthogonality (quadrature)");
    c.require(oracle::max_abs(quad.gram - moments) <= 1e-8, "integration agreement");

    auto v = build_vacua(p);
    Complex C = theta_shift(p, v.phi).P.coeff(0, 0) / v.psi.P.coeff(0, 0);
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (occ[i].first + occ[i].second > 4) continue;
        auto t = theta_shift(p, phis[i]);
        double dev = (t.P - psis[i].P * C).max_abs() / (std::abs(C) * std::max(1.0, psis[i].P.max_abs()));
        c.require(dev <= 1e-8 && (t.L - psis[i].L).norm() <= 1e-12, "theta proportionality");
    }

    double prev = 0.0;
    for (int k = 1; k <= 5; ++k) {
        auto e = excite(p, k, k);
        double sq = inner(e.psi, e.psi).real();
        c.require(sq > prev, "dual norm growth at n=" + std::to_string(k));
        prev = sq;
    }
}

void determinism(Criterion& c) {
    auto a = cli::verify_all(7, cli::kDefaultTolerance);
    auto b = cli::verify_all(7, cli::kDefaultTolerance);
    c.require(a.report.to_json().dump() == b.report.to_json().dump(), "report bytes differ");
    c.require(a.csv == b.csv, "CSV bytes differ");
    c.require(a.report.all_passed(), "verify-all has failing entries");
}

}  // namespace

int main() {
    run(1, "two-level model reproduction", two_level_model);
    run(2, "pseudo-fermions from model Hamiltonians", model_hamiltonians);
    run(3, "extended pseudo-fermion anticommutator table", alpha_table);
    run(4, "truncated pseudo-boson identities", truncated_pseudo_bosons);
    run(5, "bicoherent states and resolution of identity", bicoherent_states);
    run(6, "two-dimensional model", two_dimensional_model);
    run(7, "deterministic verify-all", determinism);
    return failures == 0 ? 0 : 1;
}
