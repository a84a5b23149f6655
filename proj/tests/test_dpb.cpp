#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pbtk/dpb.hpp"
#include "pbtk/errors.hpp"

using namespace pbtk;
using namespace pbtk::dpb;

namespace {

Ket basis_vector(int dim, int n) {
    Ket e = Ket::Zero(dim);
    e(n) = 1.0;
    return e;
}

void require_all_pass(const VerificationReport& r) {
    for (const auto& e : r.entries()) CHECK_MESSAGE(e.pass, e.check, " ", e.residual, " > ", e.tolerance);
}

}  // namespace

TEST_CASE("identity similarity reproduces the truncated canonical structure") {
    auto sys = dpb_build(IdentitySpec{}, 5);
    CHECK(oracle::max_abs(sys.a - sys.fock.c) == 0.0);
    CHECK(oracle::max_abs(sys.Theta - identity(6)) == 0.0);
    for (int n = 0; n <= 5; ++n) {
        CHECK((sys.phi[n] - basis_vector(6, n)).norm() == 0.0);
        CHECK((sys.psi[n] - basis_vector(6, n)).norm() == 0.0);
    }
    require_all_pass(dpb_verify(sys, 1e-14));
    auto conj = dpb_theta_conjugacy(sys, 1e-14, 1);
    CHECK(conj.find("dpb.theta-conjugacy")->residual == 0.0);
    CHECK(conj.find("dpb.number-intertwining")->residual == 0.0);
}

TEST_CASE("truncated annihilator has the exact edge defect") {
    for (int N : {1, 4, 9}) {
        auto f = TruncatedFock::make(N);
        Operator defect = commutator(f.c, f.c.adjoint()) - identity(N + 1);
        Operator expect = Operator::Zero(N + 1, N + 1);
        expect(N, N) = -double(N + 1);
        CHECK(oracle::max_abs(defect - expect) < 1e-14);
    }
}

TEST_CASE("diagonal similarity scales the families inversely") {
    auto sys = dpb_build(DiagonalSpec{{1.0, 2.0, 1.0, 1.0}}, 3);
    CHECK((sys.phi[1] - 2.0 * basis_vector(4, 1)).norm() < 1e-15);
    CHECK((sys.psi[1] - 0.5 * basis_vector(4, 1)).norm() < 1e-15);
    CHECK(std::abs(braket(sys.phi[1], sys.psi[1]) - 1.0) < 1e-15);
    CHECK(std::abs(sys.Theta(1, 1) - 0.25) < 1e-15);
    require_all_pass(dpb_verify(sys, 1e-12));
    require_all_pass(dpb_theta_conjugacy(sys, 1e-12, 3));
}

TEST_CASE("random well-conditioned similarity satisfies every identity") {
    auto sys = dpb_build(RandomSpec{42, 100.0}, 40);
    CHECK(sys.kappa <= 100.0 * (1 + 1e-9));
    CHECK(sys.kappa > 10.0);
    require_all_pass(dpb_verify(sys, 1e-10));
    require_all_pass(dpb_theta_conjugacy(sys, 1e-10, 42));
    // theta is (S S^dagger)^{-1}, the operator sending phi_n to psi_n
    Operator SSd = sys.S * sys.S.adjoint();
    CHECK(opnorm(sys.Theta * SSd - identity(41)) < 1e-10 * sys.kappa * sys.kappa);
    for (int n = 0; n <= 40; ++n) CHECK((sys.Theta * sys.phi[n] - sys.psi[n]).norm() < 1e-10 * sys.kappa * sys.kappa);
}

TEST_CASE("random similarity is reproducible from its seed") {
    Operator s1 = similarity_matrix(RandomSpec{5, 50.0}, 8), s2 = similarity_matrix(RandomSpec{5, 50.0}, 8);
    CHECK(oracle::max_abs(s1 - s2) == 0.0);
    Operator s3 = similarity_matrix(RandomSpec{6, 50.0}, 8);
    CHECK(oracle::max_abs(s1 - s3) > 0.0);
}

TEST_CASE("ladder table and guarded commutator") {
    auto sys = dpb_build(RandomSpec{3, 30.0}, 12);
    for (int n = 0; n < 12; ++n) {
        CHECK((sys.b * sys.phi[n] - std::sqrt(n + 1.0) * sys.phi[n + 1]).norm() < 1e-10 * sys.kappa);
        Ket f = sys.phi[n];
        CHECK((commutator(sys.a, sys.b) * f - f).norm() < 1e-10 * sys.kappa * f.norm());
    }
    Operator expect = -13.0 * sys.S * outer(basis_vector(13, 12), basis_vector(13, 12)) * sys.S_inv;
    CHECK(opnorm(commutator_defect(sys) - expect) < 1e-12 * opnorm(expect));
    CHECK(opnorm(commutator(sys.a, sys.b) - identity(13) - commutator_defect(sys)) < 1e-10 * sys.kappa * sys.kappa);
}

TEST_CASE("invalid similarities are rejected") {
    Operator sing = identity(3);
    sing(2, 2) = 0.0;
    CHECK_THROWS_AS(dpb_build(ExplicitSpec{sing}, 2), DomainError);
    CHECK_THROWS_AS(dpb_build(DiagonalSpec{{1.0, 2.0}}, 3), DomainError);
    CHECK_THROWS_AS(dpb_build(RandomSpec{1, 1e6}, 4), DomainError);
    CHECK_THROWS_AS(dpb_build(IdentitySpec{}, -1), DomainError);
    CHECK_THROWS_AS(dpb_build(ExplicitSpec{identity(4)}, 2), DomainError);
}

TEST_CASE("bicoherent state at the origin is the vacuum") {
    auto sys = dpb_build(RandomSpec{8, 20.0}, 10);
    auto bc = bicoherent(sys, 0.0, 10);
    CHECK((bc.phi_z - sys.phi[0]).norm() == 0.0);
    CHECK((sys.a * bc.phi_z).norm() < 1e-12);
    CHECK(truncation_residual(sys, 0.0, 10) == 0.0);
}

TEST_CASE("bicoherent overlap in the canonical case") {
    auto sys = dpb_build(IdentitySpec{}, 30);
    auto bc = bicoherent(sys, 1.0, 30);
    Complex ov = braket(bc.psi_z, bc.phi_z);
    CHECK(std::abs(ov - oracle::overlap_series(1.0, 30)) < 1e-12);
    CHECK(std::abs(ov - 1.0) < 1e-12);
    CHECK(truncated_overlap(1.0, 30) == doctest::Approx(oracle::overlap_series(1.0, 30)).epsilon(1e-14));
}

TEST_CASE("bicoherent eigen-residual follows the telescoped series") {
    auto sys = dpb_build(RandomSpec{40, 100.0}, 40);
    auto bc = bicoherent(sys, 2.0, 40);
    double direct = (sys.a * bc.phi_z - 2.0 * bc.phi_z).norm();
    // closed form from the scalar series
    double lg = std::lgamma(41.0);
    double formula = std::exp(-2.0 + 41 * std::log(2.0) - 0.5 * lg) * sys.phi[40].norm();
    CHECK(std::abs(direct - formula) <= 1e-12 * std::max(1.0, formula + 2.0 * bc.phi_z.norm()));
    CHECK(truncation_residual(sys, 2.0, 40) == doctest::Approx(formula).epsilon(1e-12));
}

TEST_CASE("bicoherent residual on a grid of moduli and orders") {
    auto sys = dpb_build(RandomSpec{17, 100.0}, 40);
    for (double m : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        for (int K : {10, 17, 25, 32, 40}) {
            Complex z = std::polar(m, 0.7);
            auto bc = bicoherent(sys, z, K);
            double direct = (sys.a * bc.phi_z - z * bc.phi_z).norm();
            double want = truncation_residual(sys, z, K);
            double scale = std::max({1.0, want, m * bc.phi_z.norm()});
            CHECK_MESSAGE(std::abs(direct - want) <= 1e-12 * scale, m, " ", K);
            Complex ov = braket(bc.psi_z, bc.phi_z);
            CHECK(std::abs(ov - oracle::overlap_series(m, K)) < 1e-10 * sys.kappa);
        }
    }
}

TEST_CASE("bicoherent order beyond the cutoff is rejected") {
    auto sys = dpb_build(IdentitySpec{}, 5);
    CHECK_THROWS_AS(bicoherent(sys, 1.0, 6), DomainError);
}

TEST_CASE("resolution tail matches the incomplete gamma oracle") {
    CHECK(resolution_tail(10, 6.0) == doctest::Approx(oracle::upper_gamma_ratio(11, 36.0)).epsilon(1e-10));
    CHECK(resolution_tail(10, 3.0) == doctest::Approx(0.70599).epsilon(1e-4));
    CHECK(resolution_tail(10, 3.0) == doctest::Approx(oracle::upper_gamma_ratio(11, 9.0)).epsilon(1e-10));
    CHECK(default_radius(10) == doctest::Approx(oracle::tail_radius(10, 1e-10)).epsilon(1e-8));
    CHECK(default_radius(10) == doctest::Approx(6.82383).epsilon(1e-5));
    CHECK(default_radius(40) == doctest::Approx(oracle::tail_radius(40, 1e-10)).epsilon(1e-8));
    CHECK_THROWS_AS(default_radius(10, 0.0), DomainError);
}

TEST_CASE("resolution deviation in the canonical case is the analytic tail") {
    auto sys = dpb_build(IdentitySpec{}, 10);
    auto res = bicoherent_resolution(sys, 6.0, 200, 64);
    double tail = oracle::upper_gamma_ratio(11, 36.0);
    CHECK(res.tail_bound == doctest::Approx(tail).epsilon(1e-10));
    // the whole deviation is the missing mass of the highest mode
    CHECK(res.deviation == doctest::Approx(tail).epsilon(1e-6));

    auto half = bicoherent_resolution(sys, 3.0, 200, 64);
    CHECK(half.deviation == doctest::Approx(oracle::upper_gamma_ratio(11, 9.0)).epsilon(1e-8));

    auto wide = bicoherent_resolution(sys, default_radius(10), 200, 64);
    CHECK(wide.deviation <= 1e-8);
}

TEST_CASE("resolution improves monotonically with the radius once the tail is below one") {
    auto sys = dpb_build(RandomSpec{10, 20.0}, 10);
    double prev = INFINITY;
    for (double R : {3.0, 4.0, 5.0, 6.0, 6.82383}) {
        auto res = bicoherent_resolution(sys, R, 128);
        CHECK(res.deviation < prev);
        CHECK(res.deviation <= sys.kappa * res.tail_bound * (1 + 1e-6) + 1e-10 * sys.kappa);
        prev = res.deviation;
    }
}

TEST_CASE("resolution converges in the radial node count") {
    auto sys = dpb_build(IdentitySpec{}, 10);
    double R = default_radius(10);
    double d16 = bicoherent_resolution(sys, R, 16).deviation;
    double d64 = bicoherent_resolution(sys, R, 64).deviation;
    double d128 = bicoherent_resolution(sys, R, 128).deviation;
    CHECK(d64 < d16);
    CHECK(d128 <= 1e-9);
}

TEST_CASE("single-mode resolution is the identity") {
    auto sys = dpb_build(IdentitySpec{}, 0);
    auto res = bicoherent_resolution(sys, 6.0, 64);
    CHECK(res.Q.rows() == 1);
    CHECK(res.deviation <= res.tail_bound + 1e-12);
    CHECK(res.tail_bound == doctest::Approx(std::exp(-36.0)));
    CHECK_THROWS_AS(bicoherent_resolution(sys, 0.0, 64), DomainError);
}

TEST_CASE("norm growth fits") {
    SUBCASE("identity has unit norms") {
        auto fit = norm_growth_fit(dpb_build(IdentitySpec{}, 20), 1, 19);
        CHECK(std::abs(fit.alpha_phi) < 1e-10);
        CHECK(fit.r_phi == doctest::Approx(1.0));
        CHECK(fit.bounds_hold);
    }
    SUBCASE("geometric diagonal") {
        std::vector<Complex> d;
        for (int n = 0; n <= 20; ++n) d.push_back(std::pow(2.0, n));
        auto fit = norm_growth_fit(dpb_build(DiagonalSpec{d}, 20, {1e7}), 1, 19);
        CHECK(fit.r_phi == doctest::Approx(2.0).epsilon(1e-8));
        CHECK(std::abs(fit.alpha_phi) < 1e-8);
        CHECK(fit.r_psi == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(fit.residual < 1e-8);
    }
    SUBCASE("bounded random similarity") {
        auto fit = norm_growth_fit(dpb_build(RandomSpec{2, 100.0}, 40), 1, 39);
        CHECK(fit.alpha_phi < 0.5);
        CHECK(fit.alpha_psi < 0.5);
        CHECK(fit.bounds_hold);
    }
    SUBCASE("range validation") {
        auto sys = dpb_build(IdentitySpec{}, 10);
        CHECK_THROWS_AS(norm_growth_fit(sys, 1, 10), DomainError);
        CHECK_THROWS_AS(norm_growth_fit(sys, 3, 4), DomainError);
    }
}
