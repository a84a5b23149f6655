#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "pbtk/cli.hpp"
#include "pbtk/dpb.hpp"
#include "pbtk/epf.hpp"
#include "pbtk/errors.hpp"
#include "pbtk/gauss2d.hpp"
#include "pbtk/pseudofermion.hpp"
#include "pbtk/serialize.hpp"

namespace pbtk::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(const std::string& header) : text_(header + "\n") {}
    template <class... T>
    void row(const T&... cells) {
        std::string line;
        ((line += cell(cells) + ","), ...);
        line.back() = '\n';
        text_ += line;
    }
    const std::string& str() const { return text_; }

private:
    static std::string cell(double v) { return fmt(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }
    std::string text_;
};

// Adds one entry per check name holding the case with the largest residual/tolerance ratio.
void add_worst(VerificationReport& out, const std::vector<VerificationReport>& runs, const Json& ctx) {
    std::vector<std::string> order;
    std::map<std::string, CheckEntry> worst;
    std::map<std::string, std::size_t> index;
    auto ratio = [](const CheckEntry& e) {
        if (std::isnan(e.residual)) return std::numeric_limits<double>::infinity();
        if (e.tolerance > 0.0) return e.residual / e.tolerance;
        return e.residual <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    for (std::size_t i = 0; i < runs.size(); ++i)
        for (const auto& e : runs[i].entries()) {
            auto it = worst.find(e.check);
            if (it == worst.end()) {
                order.push_back(e.check);
                worst.emplace(e.check, e);
                index[e.check] = i;
            } else if (ratio(e) > ratio(it->second)) {
                it->second = e;
                index[e.check] = i;
            }
        }
    for (const auto& name : order) {
        const CheckEntry& e = worst.at(name);
        Json c = ctx;
        c["cases"] = runs.size();
        c["worst_case"] = index.at(name);
        if (!e.context.empty()) c["worst_context"] = e.context;
        out.add(name, e.residual, e.tolerance, c);
    }
    for (const auto& r : runs)
        for (const auto& w : r.warnings()) out.warn(w);
}

dpb::SimilaritySpec similarity_spec(const DpbSection& s, std::uint64_t seed) {
    if (s.similarity == "identity") return dpb::IdentitySpec{};
    if (s.similarity == "random") return dpb::RandomSpec{seed, s.kappa};
    if (s.similarity == "diagonal") {
        dpb::DiagonalSpec d;
        for (const auto& z : s.diagonal) d.entries.push_back(complex_from_json(z, "dpb.diagonal"));
        return d;
    }
    if (s.similarity == "explicit") return dpb::ExplicitSpec{operator_from_json(s.matrix)};
    throw ConfigError("dpb.similarity: expected identity, diagonal, random or explicit");
}

std::vector<int> bicoherent_orders(int N) {
    std::vector<int> ks;
    for (int j = 0; j < 5; ++j) {
        int k = int(std::lround(N / 4.0 + j * (3.0 * N / 16.0)));
        ks.push_back(std::clamp(k, 0, N));
    }
    return ks;
}

// Bi-coherent eigen-residual and overlap against their closed forms on a 5x5 (|z|, K) grid.
void bicoherent_grid(VerificationReport& r, const dpb::DpbSystem& sys, double tol) {
    const int N = sys.fock.cutoff;
    const std::vector<double> moduli{0.5, 1.0, 1.5, 2.0, 2.5};
    const std::vector<int> ks = bicoherent_orders(N);
    double eig = 0.0, ovl = 0.0;
    for (double m : moduli)
        for (int K : ks) {
            const Complex z = std::polar(m, 0.7);
            const auto bc = dpb::bicoherent(sys, z, K);
            const double got = (sys.a * bc.phi_z - z * bc.phi_z).norm();
            const double want = dpb::truncation_residual(sys, z, K);
            // Relative to the size of the two vectors being subtracted.
            const double scale = std::max({1.0, want, std::abs(z) * bc.phi_z.norm()});
            eig = std::max(eig, std::abs(got - want) / scale);
            const double o = dpb::truncated_overlap(z, K);
            ovl = std::max(ovl, std::abs(bc.psi_z.dot(bc.phi_z) - o) / std::max(1.0, o));
        }
    Json ctx{{"moduli", moduli}, {"orders", ks}, {"arg", 0.7}};
    r.add("dpb.bicoherent-eigen-residual", eig, tol, ctx);
    r.add("dpb.bicoherent-overlap", ovl, tol, ctx);
}

// Quadrature resolution of the identity: tail-rule radius plus a sweep in R.
std::string resolution_checks(VerificationReport& r, const dpb::DpbSystem& sys, double radius, int n_r,
                              double tol_res, double tol) {
    const int N = sys.fock.cutoff;
    const double R = radius > 0.0 ? radius : dpb::default_radius(N);
    const auto res = dpb::bicoherent_resolution(sys, R, n_r);
    Json ctx{{"cutoff", N}, {"R", R}, {"n_r", n_r}, {"tail_bound", res.tail_bound}, {"kappa", sys.kappa}};
    r.add("dpb.resolution", res.deviation, tol_res, ctx);
    r.add("dpb.resolution-tail-bound", res.deviation, sys.kappa * res.tail_bound * (1.0 + 1e-6) + tol * sys.kappa,
          ctx);

    std::vector<double> radii{3.0, 4.0, 5.0, 6.0};
    if (std::find(radii.begin(), radii.end(), R) == radii.end()) radii.push_back(R);
    std::sort(radii.begin(), radii.end());
    Csv csv("R,n_r,deviation");
    double prev = std::numeric_limits<double>::infinity();
    int rises = 0;
    for (double rr : radii) {
        const double dev = dpb::bicoherent_resolution(sys, rr, n_r).deviation;
        csv.row(rr, n_r, dev);
        // Past the quadrature floor the deviation can only stall, not grow.
        if (dev > prev && dev > 100.0 * tol * sys.kappa) ++rises;
        prev = dev;
    }
    r.add("dpb.resolution-monotone-in-R", rises, 0.0, Json{{"radii", radii}, {"n_r", n_r}});
    return csv.str();
}

// Gauss2d ---------------------------------------------------------------------

struct StateList {
    std::vector<std::pair<int, int>> labels;
    std::vector<gauss2d::GaussPoly> phi, psi;
};

StateList states_up_to(const gauss2d::ModelParams& p, int max_degree) {
    StateList s;
    for (int t = 0; t <= max_degree; ++t)
        for (int n1 = t; n1 >= 0; --n1) {
            auto e = gauss2d::excite(p, n1, t - n1);
            s.labels.emplace_back(n1, t - n1);
            s.phi.push_back(std::move(e.phi));
            s.psi.push_back(std::move(e.psi));
        }
    return s;
}

double vacuum_annihilation(const gauss2d::ModelParams& p) {
    const auto ops = gauss2d::model_ops(p);
    const auto v = gauss2d::build_vacua(p);
    double worst = 0.0;
    for (const auto* op : {&ops.a1, &ops.a2}) worst = std::max(worst, gauss2d::apply_op(*op, v.phi).P.max_abs());
    for (const auto* op : {&ops.b1_dag, &ops.b2_dag})
        worst = std::max(worst, gauss2d::apply_op(*op, v.psi).P.max_abs());
    return worst;
}

double ladder_algebra(const gauss2d::ModelParams& p) {
    const auto o = gauss2d::model_ops(p);
    const gauss2d::DiffOp one = gauss2d::DiffOp::scalar(1.0), zero;
    const gauss2d::DiffOp* a[2] = {&o.a1, &o.a2};
    const gauss2d::DiffOp* b[2] = {&o.b1, &o.b2};
    double worst = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            worst = std::max(worst, gauss2d::distance(gauss2d::commutator(*a[j], *b[k]), j == k ? one : zero));
            worst = std::max(worst, gauss2d::distance(gauss2d::commutator(*a[j], *a[k]), zero));
            worst = std::max(worst, gauss2d::distance(gauss2d::commutator(*b[j], *b[k]), zero));
        }
    return worst;
}

double energy_law(const gauss2d::ModelParams& p, int n_max, Csv* csv) {
    double worst = 0.0;
    for (int n1 = 0; n1 <= n_max; ++n1)
        for (int n2 = 0; n2 <= n_max; ++n2) {
            const auto e = gauss2d::energy_check(p, n1, n2);
            worst = std::max(worst, e.residual);
            if (csv) csv->row(p.epsilon, p.xi, n1, n2, "energy-law", e.residual);
        }
    return worst;
}

double max_offset(const Eigen::MatrixXcd& g) {
    return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

// Theta phi_n against C psi_n with C taken from the vacuum.
std::pair<double, Complex> theta_proportionality(const gauss2d::ModelParams& p, const StateList& s, int max_degree) {
    const auto t0 = gauss2d::theta_shift(p, s.phi[0]);
    const Complex C = t0.P.coeff(0, 0) / s.psi[0].P.coeff(0, 0);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        if (s.labels[i].first + s.labels[i].second > max_degree) continue;
        const auto t = gauss2d::theta_shift(p, s.phi[i]);
        const double scale = std::max(t.P.max_abs(), 1e-300);
        worst = std::max(worst, (t.P - s.psi[i].P * C).max_abs() / scale);
        worst = std::max(worst, (t.L - s.psi[i].L).norm() / std::max(1.0, t.L.norm()));
        worst = std::max(worst, (t.Q - s.psi[i].Q).norm() / std::max(1.0, t.Q.norm()));
    }
    return {worst, C};
}

}  // namespace

// ---------------------------------------------------------------------------

Outcome pf_suite(const PfSection& s, double tol) {
    const pf::HeffParams hp{s.delta, s.omega, s.theta};
    const auto model = pf::heff_build(hp);
    const auto sys = pf::pf_system(model.pair);
    Outcome out;
    out.report = pf::pf_verify(sys, tol);
    out.report.merge(pf::pf_model_verify(model, sys, tol));
    return out;
}

Outcome epf_suite(const EpfSection& s, std::uint64_t seed, double tol) {
    epf::EpfBasis basis;
    if (s.basis == "standard") {
        basis = epf::EpfBasis::standard(s.M);
    } else if (s.basis == "random") {
        std::mt19937_64 rng(seed);
        basis = epf::random_basis(s.M, rng, s.kappa_max);
    } else if (s.basis == "file") {
        std::ifstream in(s.basis_file);
        if (!in) throw ConfigError("epf.basis_file: cannot open '" + s.basis_file + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::parse_error& e) {
            throw ConfigError("epf.basis_file: " + std::string(e.what()));
        }
        basis = basis_from_json(j);
    } else {
        throw ConfigError("epf.basis: expected standard, random or file");
    }
    const auto sys = epf::epf_system(basis);
    Outcome out;
    out.report = epf::epf_verify(sys, tol);
    Csv csv("M,k,alpha");
    for (int k = 0; k <= sys.basis.M; ++k) csv.row(sys.basis.M, k, sys.alpha[std::size_t(k)]);
    out.csv["alpha.csv"] = csv.str();
    return out;
}

Outcome dpb_suite(const DpbSection& s, std::uint64_t seed, double tol) {
    dpb::BuildOptions opts;
    opts.kappa_max = std::max(opts.kappa_max, 1.01 * s.kappa);
    const auto sys = dpb::dpb_build(similarity_spec(s, seed), s.cutoff, opts);
    const int N = sys.fock.cutoff;
    Outcome out;
    out.report = dpb::dpb_verify(sys, tol);
    out.report.merge(dpb::dpb_theta_conjugacy(sys, tol, seed, s.samples));
    bicoherent_grid(out.report, sys, tol / 100.0);
    out.csv["quadrature.csv"] = resolution_checks(out.report, sys, s.radius, s.radial_nodes, 100.0 * tol, tol);

    Csv norms("n,norm_phi,norm_psi");
    for (int n = 0; n <= N; ++n) norms.row(n, sys.phi[std::size_t(n)].norm(), sys.psi[std::size_t(n)].norm());
    out.csv["norms.csv"] = norms.str();
    if (N >= 4) {
        const auto fit = dpb::norm_growth_fit(sys, 1, N - 1);
        out.report.add("dpb.norm-growth-alpha", std::max(fit.alpha_phi, fit.alpha_psi), 0.5,
                       Json{{"n_min", fit.n_min}, {"n_max", fit.n_max}, {"r_phi", fit.r_phi},
                            {"alpha_phi", fit.alpha_phi}, {"r_psi", fit.r_psi}, {"alpha_psi", fit.alpha_psi},
                            {"fit_residual", fit.residual}});
    }
    return out;
}

Outcome gauss2d_suite(const Gauss2dSection& s, double tol) {
    const auto p = gauss2d::ModelParams::make(s.epsilon, s.xi);
    if (s.max_degree < 0) throw ConfigError("gauss2d.max_degree must be non-negative");
    const Json ctx{{"epsilon", p.epsilon}, {"xi", p.xi}};
    Outcome out;
    auto& r = out.report;
    Csv sweep("epsilon,xi,n1,n2,check,residual");

    const double annihilation = vacuum_annihilation(p);
    r.add("gauss2d.vacuum-annihilation", annihilation, 0.0, ctx);
    sweep.row(p.epsilon, p.xi, 0, 0, "vacuum-annihilation", annihilation);
    r.add("gauss2d.ladder-commutators", ladder_algebra(p), tol, ctx);
    {
        const auto H = gauss2d::model_ops(p).H;
        r.add("gauss2d.hamiltonian-ladder-form", gauss2d::distance(H, gauss2d::ladder_hamiltonian(p)), tol, ctx);
    }
    const auto v = gauss2d::build_vacua(p);
    r.add("gauss2d.vacuum-gauge",
          std::max(std::abs(gauss2d::inner(v.phi, v.psi) - 1.0), std::abs(gauss2d::inner(v.phi, v.phi) - 1.0)), tol,
          ctx);

    const StateList st = states_up_to(p, s.max_degree);
    const Eigen::Index n = Eigen::Index(st.labels.size());
    Eigen::MatrixXcd G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) G(i, j) = gauss2d::inner(st.phi[std::size_t(i)], st.psi[std::size_t(j)]);
    const auto quad = gauss2d::inner_by_quadrature(st.phi, st.psi);
    Json gctx = ctx;
    gctx["max_degree"] = s.max_degree;
    gctx["states"] = n;
    r.add("gauss2d.biorthogonal-moments", max_offset(G), 100.0 * tol, gctx);
    Json qctx = gctx;
    qctx["nodes"] = quad.nodes;
    qctx["refinement_change"] = quad.change;
    r.add("gauss2d.biorthogonal-quadrature", max_offset(quad.gram), 100.0 * tol, qctx);
    r.add("gauss2d.integration-agreement", (G - quad.gram).cwiseAbs().maxCoeff(), 100.0 * tol, qctx);

    r.add("gauss2d.energy-law", energy_law(p, 4, &sweep), tol, ctx);

    const auto [prop, C] = theta_proportionality(p, st, std::min(4, s.max_degree));
    Json tctx = ctx;
    tctx["constant"] = complex_to_json(C);
    r.add("gauss2d.theta-proportionality", prop, 100.0 * tol, tctx);

    double round_trip = 0.0;
    for (const auto& f : st.phi) {
        const auto back = gauss2d::theta_shift(p, gauss2d::theta_shift(p, f, 1), -1);
        round_trip = std::max(round_trip, (back.P - f.P).max_abs() / f.P.max_abs());
        round_trip = std::max(round_trip, (back.L - f.L).norm());
    }
    r.add("gauss2d.theta-round-trip", round_trip, tol, ctx);

    // Gram matrix <Theta phi_n, phi_m> over total degree <= 3.
    std::vector<gauss2d::GaussPoly> tphi;
    Eigen::Index m = 0;
    for (std::size_t i = 0; i < st.labels.size(); ++i)
        if (st.labels[i].first + st.labels[i].second <= 3) {
            tphi.push_back(gauss2d::theta_shift(p, st.phi[i]));
            ++m;
        }
    Eigen::MatrixXcd TG(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) TG(i, j) = gauss2d::inner(tphi[std::size_t(i)], st.phi[std::size_t(j)]);
    const double tg_scale = std::max(1.0, TG.cwiseAbs().maxCoeff());
    r.add("gauss2d.theta-gram-hermitian", (TG - TG.adjoint()).cwiseAbs().maxCoeff() / tg_scale, 100.0 * tol, ctx);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> tes(0.5 * (TG + TG.adjoint()));
    r.add("gauss2d.theta-gram-positive", -tes.eigenvalues().minCoeff() / tes.eigenvalues().maxCoeff(), 0.0, ctx);

    // ||Psi_{n,n}||^2 must grow strictly for n = 1..5.
    std::vector<double> norms2, ratios;
    for (int k = 1; k <= 5; ++k) {
        const auto e = gauss2d::excite(p, k, k);
        norms2.push_back(gauss2d::inner(e.psi, e.psi).real());
    }
    int violations = 0;
    for (std::size_t k = 1; k < norms2.size(); ++k) {
        ratios.push_back(norms2[k] / norms2[k - 1]);
        if (!(ratios.back() > 1.0)) ++violations;
    }
    Json nctx = ctx;
    nctx["norms_squared"] = norms2;
    nctx["ratios"] = ratios;
    r.add("gauss2d.norm-divergence", violations, 0.0, nctx);

    out.csv["gauss_sweep.csv"] = sweep.str();
    return out;
}

// ---------------------------------------------------------------------------

Outcome verify_all(std::uint64_t seed, double tol) {
    std::set<std::string> touched;
    auto touch = [&](std::initializer_list<const char*> names) {
        for (const char* n : names) touched.insert(n);
    };
    Outcome out;
    auto& r = out.report;

    // Two-level model at the reference parameters, held to tol / 100.
    {
        const pf::HeffParams hp{0.6, 1.0, std::numbers::pi / 3.0};
        const auto model = pf::heff_build(hp);
        const auto sys = pf::pf_system(model.pair);
        r.merge(pf::pf_verify(sys, tol / 100.0));
        r.merge(pf::pf_model_verify(model, sys, tol / 100.0));
        touch({"heff_build", "pf_system", "pf_verify", "hermitize"});
    }
    // Decomposition of the three model Hamiltonian families.
    {
        std::vector<std::pair<std::string, pf::HamiltonianParams>> cases{
            {"dg-1", pf::DgParams{1.0, 2.0, 0.5, 0.3, 0.2}},
            {"dg-2", pf::DgParams{0.5, 1.0, 1.0, 1.1, -0.7}},
            {"dg-3", pf::DgParams{2.0, 0.3, 3.0, 0.0, 0.0}},
            {"gmm-1", pf::GmmParams{1.0, -1.0, 0.5, 0.2, Complex(0.3, 0.0)}},
            {"gmm-2", pf::GmmParams{0.0, 0.5, 1.0, 0.1, Complex(0.4, 0.2)}},
            {"gmm-3", pf::GmmParams{2.0, 1.0, 0.3, 0.3, Complex(0.0, 0.6)}},
            {"mo-1", pf::MoParams{1.0, Complex(0.4, 0.0), Complex(0.3, 0.0)}},
            {"mo-2", pf::MoParams{0.7, Complex(1.0, 0.3), Complex(0.5, -0.2)}},
            {"mo-3", pf::MoParams{2.0, Complex(2.5, -0.4), Complex(0.0, 0.5)}},
        };
        std::vector<VerificationReport> runs;
        Json names = Json::array();
        double min_gap = std::numeric_limits<double>::infinity();
        for (const auto& [name, params] : cases) {
            const Operator H = pf::model_hamiltonian(params);
            const auto d = pf::pf_from_hamiltonian(H);
            min_gap = std::min(min_gap, std::abs(d.Omega));
            VerificationReport one = pf::pf_verify(d.system, tol);
            one.merge(pf::pf_decomposition_verify(H, d, tol));
            runs.push_back(std::move(one));
            names.push_back(name);
        }
        VerificationReport agg;
        add_worst(agg, runs, Json{{"family", "model-hamiltonians"}, {"instances", names}});
        for (const auto& e : agg.entries()) r.add(e.check + "@models", e.residual, e.tolerance, e.context);
        r.add("pf.models-eigen-gap", 0.1 - min_gap, 0.0, Json{{"min_gap", min_gap}});
        touch({"model_hamiltonian", "pf_from_hamiltonian"});
    }
    // Extended pseudo-fermions: 100 random bases for every M up to 12.
    {
        std::mt19937_64 rng(seed);
        constexpr int kBases = 100;
        for (int M = 1; M <= 12; ++M) {
            std::vector<VerificationReport> runs;
            double worst_kappa = 1.0;
            for (int i = 0; i < kBases; ++i) {
                const auto sys = epf::epf_system(epf::random_basis(M, rng, 1e3));
                worst_kappa = std::max(worst_kappa, sys.kappa);
                runs.push_back(epf::epf_verify(sys, tol));
            }
            VerificationReport agg;
            add_worst(agg, runs, Json{{"M", M}, {"max_kappa", worst_kappa}});
            for (const auto& e : agg.entries())
                r.add(e.check + "@M" + std::to_string(M), e.residual, e.tolerance, e.context);
        }
        // Printed tables for M = 1..3 against the standard basis.
        const std::vector<std::vector<double>> table{{1, 1}, {1, 3, 2}, {1, 3, 5, 3}};
        double dev = 0.0;
        for (int M = 1; M <= 3; ++M) {
            const auto a = epf::epf_anticommutator(epf::epf_system(epf::EpfBasis::standard(M)));
            for (int k = 0; k <= M; ++k)
                dev = std::max(dev, std::abs(a.alpha[std::size_t(k)] - table[std::size_t(M - 1)][std::size_t(k)]));
        }
        r.add("epf.alpha-table", dev, tol, Json{{"M", Json::array({1, 2, 3})}});
        touch({"epf_system", "epf_dual", "epf_dual_iterative", "epf_ladder", "epf_anticommutator", "epf_verify"});
    }
    // Truncated pseudo-bosons: cutoff 40 with a random similarity of condition 100.
    {
        const auto sys = dpb::dpb_build(dpb::RandomSpec{seed, 100.0}, 40);
        r.merge(dpb::dpb_verify(sys, tol));
        r.merge(dpb::dpb_theta_conjugacy(sys, tol, seed));
        bicoherent_grid(r, sys, tol / 100.0);
        const auto fit = dpb::norm_growth_fit(sys, 1, 39);
        r.add("dpb.norm-growth-alpha", std::max(fit.alpha_phi, fit.alpha_psi), 0.5,
              Json{{"alpha_phi", fit.alpha_phi}, {"alpha_psi", fit.alpha_psi}, {"fit_residual", fit.residual}});
        touch({"dpb_build", "dpb_verify", "dpb_theta_conjugacy", "bicoherent", "norm_growth_fit"});
    }
    {
        const auto sys = dpb::dpb_build(dpb::RandomSpec{seed + 1, 100.0}, 10);
        VerificationReport res;
        const std::string csv = resolution_checks(res, sys, 0.0, 64, 100.0 * tol, tol);
        for (const auto& e : res.entries()) r.add(e.check + "@N10", e.residual, e.tolerance, e.context);
        out.csv["quadrature.csv"] = csv;
        touch({"bicoherent_resolution"});
    }
    // Two-dimensional model: exact algebra across the epsilon grid, integrals at 0.4.
    {
        Csv sweep("epsilon,xi,n1,n2,check,residual");
        double annihilation = 0.0, energy = 0.0, algebra = 0.0;
        for (double eps : {-0.8, -0.4, 0.0, 0.4, 0.8})
            for (int xi : {1, -1}) {
                const auto p = gauss2d::ModelParams::make(eps, xi);
                const double a = vacuum_annihilation(p);
                sweep.row(eps, xi, 0, 0, "vacuum-annihilation", a);
                annihilation = std::max(annihilation, a);
                algebra = std::max(algebra, ladder_algebra(p));
                energy = std::max(energy, energy_law(p, 4, &sweep));
            }
        const Json grid{{"epsilon", Json::array({-0.8, -0.4, 0.0, 0.4, 0.8})}, {"xi", Json::array({1, -1})}};
        r.add("gauss2d.vacuum-annihilation@grid", annihilation, 0.0, grid);
        r.add("gauss2d.ladder-commutators@grid", algebra, tol, grid);
        r.add("gauss2d.energy-law@grid", energy, tol, grid);

        Outcome g = gauss2d_suite(Gauss2dSection{0.4, 1, 5}, tol);
        r.merge(g.report);
        out.csv["gauss_sweep.csv"] = sweep.str();
        touch({"model_ops", "build_vacua", "apply_op", "excite", "inner", "inner_by_quadrature", "energy_check",
               "theta_shift"});
    }

    static const std::vector<std::string> required{
        "heff_build",     "pf_system",          "pf_verify",      "hermitize",
        "model_hamiltonian", "pf_from_hamiltonian", "epf_system", "epf_dual",
        "epf_dual_iterative", "epf_ladder",     "epf_anticommutator", "epf_verify",
        "dpb_build",      "dpb_verify",         "dpb_theta_conjugacy", "bicoherent",
        "bicoherent_resolution", "norm_growth_fit", "model_ops",  "build_vacua",
        "apply_op",       "excite",             "inner",          "inner_by_quadrature",
        "energy_check",   "theta_shift"};
    Json missing = Json::array();
    for (const auto& name : required)
        if (!touched.count(name)) missing.push_back(name);
    r.add("verify-all.coverage", double(missing.size()), 0.0,
          Json{{"operations", required.size()}, {"missing", missing}});
    return out;
}

}  // namespace pbtk::cli
