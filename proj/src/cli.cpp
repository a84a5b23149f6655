#include "pbtk/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#define TOML_EXCEPTIONS 1
#include <CLI11.hpp>
#include <toml.hpp>

#include "pbtk/errors.hpp"

namespace pbtk::cli {

namespace {

using LineMap = std::map<std::string, long>;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

Json toml_to_json(const toml::node& node, const std::string& path, LineMap& lines) {
    lines[path] = long(node.source().begin.line);
    if (const auto* t = node.as_table()) {
        Json j = Json::object();
        for (auto&& [k, v] : *t) {
            const std::string key(k.str());
            j[key] = toml_to_json(v, join(path, key), lines);
        }
        return j;
    }
    if (const auto* a = node.as_array()) {
        Json j = Json::array();
        for (std::size_t i = 0; i < a->size(); ++i)
            j.push_back(toml_to_json(*a->get(i), path + "[" + std::to_string(i) + "]", lines));
        return j;
    }
    if (const auto* v = node.as_integer()) return Json(v->get());
    if (const auto* v = node.as_floating_point()) return Json(v->get());
    if (const auto* v = node.as_string()) return Json(v->get());
    if (const auto* v = node.as_boolean()) return Json(v->get());
    throw ConfigError("config: " + path + ": unsupported value type (line " +
                      std::to_string(node.source().begin.line) + ")");
}

class Reader {
public:
    Reader(const Json& root, const LineMap& lines) : root_(root), lines_(lines) {}

    [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
        std::string where;
        if (auto it = lines_.find(path); it != lines_.end() && it->second > 0)
            where = " (line " + std::to_string(it->second) + ")";
        throw ConfigError("config: " + (path.empty() ? std::string("<root>") : path) + ": " + msg + where);
    }

    const Json& object(const Json& j, const std::string& path, const std::set<std::string>& allowed) const {
        if (!j.is_object()) fail(path, "expected a table");
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key())) fail(join(path, it.key()), "unknown key");
        return j;
    }

    void number(const Json& obj, const std::string& path, const char* key, double& out) const {
        if (!obj.contains(key)) return;
        const Json& v = obj.at(key);
        if (!v.is_number()) fail(join(path, key), "expected a number");
        out = v.get<double>();
        if (!std::isfinite(out)) fail(join(path, key), "must be finite");
    }

    void integer(const Json& obj, const std::string& path, const char* key, int& out) const {
        if (!obj.contains(key)) return;
        const Json& v = obj.at(key);
        if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
        const long long x = v.get<long long>();
        if (x < -1000000 || x > 1000000) fail(join(path, key), "out of range");
        out = int(x);
    }

    void text(const Json& obj, const std::string& path, const char* key, std::string& out) const {
        if (!obj.contains(key)) return;
        const Json& v = obj.at(key);
        if (!v.is_string()) fail(join(path, key), "expected a string");
        out = v.get<std::string>();
    }

    const Json& root() const { return root_; }

private:
    const Json& root_;
    const LineMap& lines_;
};

RunConfig config_from_json(const Json& j, const LineMap& lines) {
    Reader rd(j, lines);
    RunConfig c;
    rd.object(j, "", {"command", "seed", "tol", "report", "csv_dir", "pf", "epf", "dpb", "gauss2d"});

    rd.text(j, "", "command", c.command);
    static const std::set<std::string> commands{"pf", "epf", "dpb", "gauss2d", "verify-all"};
    if (!commands.count(c.command)) rd.fail("command", "expected pf, epf, dpb, gauss2d or verify-all");
    if (j.contains("seed")) {
        const Json& s = j.at("seed");
        if (!s.is_number_integer() || s.get<long long>() < 0) rd.fail("seed", "expected a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    if (j.contains("tol")) {
        double t = 0.0;
        rd.number(j, "", "tol", t);
        if (!(t > 0.0)) rd.fail("tol", "must be positive");
        c.tol = t;
    }
    rd.text(j, "", "report", c.report);
    rd.text(j, "", "csv_dir", c.csv_dir);

    if (j.contains("pf")) {
        const Json& s = rd.object(j.at("pf"), "pf", {"delta", "omega", "theta"});
        rd.number(s, "pf", "delta", c.pf.delta);
        rd.number(s, "pf", "omega", c.pf.omega);
        rd.number(s, "pf", "theta", c.pf.theta);
    }
    if (j.contains("epf")) {
        const Json& s = rd.object(j.at("epf"), "epf", {"M", "basis", "basis_file", "kappa_max"});
        rd.integer(s, "epf", "M", c.epf.M);
        rd.text(s, "epf", "basis", c.epf.basis);
        rd.text(s, "epf", "basis_file", c.epf.basis_file);
        rd.number(s, "epf", "kappa_max", c.epf.kappa_max);
        if (c.epf.basis != "standard" && c.epf.basis != "random" && c.epf.basis != "file")
            rd.fail("epf.basis", "expected standard, random or file");
        if (c.epf.basis == "file" && c.epf.basis_file.empty()) rd.fail("epf.basis_file", "required when basis = file");
    }
    if (j.contains("dpb")) {
        const Json& s = rd.object(j.at("dpb"), "dpb",
                                  {"cutoff", "similarity", "kappa", "diagonal", "matrix", "radius", "radial_nodes",
                                   "samples"});
        rd.integer(s, "dpb", "cutoff", c.dpb.cutoff);
        rd.text(s, "dpb", "similarity", c.dpb.similarity);
        rd.number(s, "dpb", "kappa", c.dpb.kappa);
        rd.number(s, "dpb", "radius", c.dpb.radius);
        rd.integer(s, "dpb", "radial_nodes", c.dpb.radial_nodes);
        rd.integer(s, "dpb", "samples", c.dpb.samples);
        if (s.contains("diagonal")) {
            if (!s.at("diagonal").is_array()) rd.fail("dpb.diagonal", "expected an array");
            c.dpb.diagonal = s.at("diagonal");
        }
        if (s.contains("matrix")) c.dpb.matrix = s.at("matrix");
        static const std::set<std::string> kinds{"identity", "diagonal", "random", "explicit"};
        if (!kinds.count(c.dpb.similarity)) rd.fail("dpb.similarity", "expected identity, diagonal, random or explicit");
        if (c.dpb.radial_nodes < 1) rd.fail("dpb.radial_nodes", "must be positive");
        if (c.dpb.samples < 1) rd.fail("dpb.samples", "must be positive");
    }
    if (j.contains("gauss2d")) {
        const Json& s = rd.object(j.at("gauss2d"), "gauss2d", {"epsilon", "xi", "max_degree"});
        rd.number(s, "gauss2d", "epsilon", c.gauss2d.epsilon);
        rd.integer(s, "gauss2d", "xi", c.gauss2d.xi);
        rd.integer(s, "gauss2d", "max_degree", c.gauss2d.max_degree);
    }
    return c;
}

double parse_tolerance(const std::string& text, const char* origin) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v) || !(v > 0.0))
        throw ConfigError(std::string(origin) + ": expected a positive number, got '" + text + "'");
    return v;
}

Json report_json(const RunConfig& cfg, double tol, const VerificationReport& report) {
    Json j{{"command", cfg.command}, {"seed", cfg.seed}, {"tolerance", tol}};
    const Json body = report.to_json();
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = *it;
    return j;
}

}  // namespace

RunConfig parse_config(const std::string& text, ConfigFormat format) {
    LineMap lines;
    Json j;
    if (format == ConfigFormat::Json) {
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
    } else {
        try {
            toml::table t = toml::parse(text);
            j = toml_to_json(t, "", lines);
        } catch (const toml::parse_error& e) {
            throw ConfigError("config: invalid TOML: " + std::string(e.description()) + " (line " +
                              std::to_string(e.source().begin.line) + ")");
        }
    }
    return config_from_json(j, lines);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.extension() == ".json" ? ConfigFormat::Json : ConfigFormat::Toml);
}

double resolve_tolerance(const RunConfig& cfg, const char* env_value, std::optional<double> flag) {
    double tol = cfg.tol.value_or(kDefaultTolerance);
    if (env_value && *env_value) tol = parse_tolerance(env_value, "PBTK_TOL");
    if (flag) {
        if (!std::isfinite(*flag) || !(*flag > 0.0)) throw ConfigError("--tol: must be positive");
        tol = *flag;
    }
    return tol;
}

Outcome execute(const RunConfig& cfg, double tol) {
    if (cfg.command == "pf") return pf_suite(cfg.pf, tol);
    if (cfg.command == "epf") return epf_suite(cfg.epf, cfg.seed, tol);
    if (cfg.command == "dpb") return dpb_suite(cfg.dpb, cfg.seed, tol);
    if (cfg.command == "gauss2d") return gauss2d_suite(cfg.gauss2d, tol);
    if (cfg.command == "verify-all") return verify_all(cfg.seed, tol);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

int run(const RunConfig& cfg, double tol, std::ostream& out, std::ostream& err) {
    Outcome o;
    try {
        o = execute(cfg, tol);
    } catch (const Error& e) {
        err << "pbtk: " << e.what() << "\n";
        return 2;
    }
    try {
        if (!cfg.csv_dir.empty())
            for (const auto& [name, text] : o.csv) write_atomic(std::filesystem::path(cfg.csv_dir) / name, text);
        const std::string body = report_json(cfg, tol, o.report).dump(2) + "\n";
        if (cfg.report.empty()) out << body;
        else write_atomic(cfg.report, body);
    } catch (const std::exception& e) {
        err << "pbtk: " << e.what() << "\n";
        return 2;
    }

    const auto s = o.report.summary();
    err << "pbtk " << cfg.command << ": " << s.total << " checks, " << s.passed << " passed, " << s.failed
        << " failed\n";
    for (const auto& e : o.report.entries())
        if (!e.pass) err << "  FAIL " << e.check << " residual=" << e.residual << " tolerance=" << e.tolerance << "\n";
    for (const auto& w : o.report.warnings()) err << "  warning: " << w << "\n";
    return o.report.all_passed() ? 0 : 1;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification toolkit for pseudo-fermion and pseudo-boson structures", "pbtk"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string config_path, report, csv_dir;
    double tol_flag = 0.0;
    std::uint64_t seed = 0;
    auto* o_config = app.add_option("--config", config_path, "TOML or JSON run configuration");
    auto* o_report = app.add_option("--report", report, "Report JSON path (stdout when omitted)");
    auto* o_csv = app.add_option("--csv-dir", csv_dir, "Directory for CSV series");
    auto* o_tol = app.add_option("--tol", tol_flag, "Base tolerance");
    auto* o_seed = app.add_option("--seed", seed, "Random seed");

    PfSection pf;
    auto* c_pf = app.add_subcommand("pf", "Two-level pseudo-fermion model");
    auto* o_delta = c_pf->add_option("--delta", pf.delta, "Decay parameter delta");
    auto* o_omega = c_pf->add_option("--omega", pf.omega, "Coupling modulus |omega|");
    auto* o_theta = c_pf->add_option("--theta", pf.theta, "Coupling phase theta");

    EpfSection epf;
    auto* c_epf = app.add_subcommand("epf", "Extended pseudo-fermions on C^{M+1}");
    auto* o_M = c_epf->add_option("--M", epf.M, "Top level M");
    auto* o_basis = c_epf->add_option("--basis", epf.basis, "standard, random or file");
    auto* o_bfile = c_epf->add_option("--basis-file", epf.basis_file, "Basis JSON for --basis file");
    auto* o_kmax = c_epf->add_option("--kappa-max", epf.kappa_max, "Condition cap for random bases");

    DpbSection dpb;
    auto* c_dpb = app.add_subcommand("dpb", "Truncated pseudo-bosons");
    auto* o_cutoff = c_dpb->add_option("--cutoff", dpb.cutoff, "Occupation cutoff N");
    auto* o_sim = c_dpb->add_option("--similarity", dpb.similarity, "identity or random");
    auto* o_kappa = c_dpb->add_option("--kappa", dpb.kappa, "Condition number of the random similarity");
    auto* o_radius = c_dpb->add_option("--radius", dpb.radius, "Quadrature radius (tail rule when omitted)");
    auto* o_nr = c_dpb->add_option("--radial-nodes", dpb.radial_nodes, "Radial quadrature nodes");

    Gauss2dSection g2;
    auto* c_g2 = app.add_subcommand("gauss2d", "Two-dimensional non-Hermitian oscillator");
    auto* o_eps = c_g2->add_option("--epsilon", g2.epsilon, "Coupling epsilon, |epsilon| < 1");
    auto* o_xi = c_g2->add_option("--xi", g2.xi, "Sign xi = +1 or -1");
    auto* o_deg = c_g2->add_option("--max-degree", g2.max_degree, "Largest total excitation for integrals");

    auto* c_all = app.add_subcommand("verify-all", "Run every module suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    RunConfig cfg;
    double tol = kDefaultTolerance;
    try {
        if (o_config->count()) cfg = load_config(config_path);
        if (o_report->count()) cfg.report = report;
        if (o_csv->count()) cfg.csv_dir = csv_dir;
        if (o_seed->count()) cfg.seed = seed;

        auto take = [](CLI::Option* o, auto& dst, const auto& src) {
            if (o->count()) dst = src;
        };
        if (c_pf->parsed()) {
            cfg.command = "pf";
            take(o_delta, cfg.pf.delta, pf.delta);
            take(o_omega, cfg.pf.omega, pf.omega);
            take(o_theta, cfg.pf.theta, pf.theta);
        } else if (c_epf->parsed()) {
            cfg.command = "epf";
            take(o_M, cfg.epf.M, epf.M);
            take(o_basis, cfg.epf.basis, epf.basis);
            take(o_bfile, cfg.epf.basis_file, epf.basis_file);
            take(o_kmax, cfg.epf.kappa_max, epf.kappa_max);
        } else if (c_dpb->parsed()) {
            cfg.command = "dpb";
            take(o_cutoff, cfg.dpb.cutoff, dpb.cutoff);
            take(o_sim, cfg.dpb.similarity, dpb.similarity);
            take(o_kappa, cfg.dpb.kappa, dpb.kappa);
            take(o_radius, cfg.dpb.radius, dpb.radius);
            take(o_nr, cfg.dpb.radial_nodes, dpb.radial_nodes);
        } else if (c_g2->parsed()) {
            cfg.command = "gauss2d";
            take(o_eps, cfg.gauss2d.epsilon, g2.epsilon);
            take(o_xi, cfg.gauss2d.xi, g2.xi);
            take(o_deg, cfg.gauss2d.max_degree, g2.max_degree);
        } else if (c_all->parsed()) {
            cfg.command = "verify-all";
        }
        std::optional<double> flag;
        if (o_tol->count()) flag = tol_flag;
        tol = resolve_tolerance(cfg, std::getenv("PBTK_TOL"), flag);
    } catch (const Error& e) {
        err << "pbtk: " << e.what() << "\n";
        return 2;
    }
    return run(cfg, tol, out, err);
}

}  // namespace pbtk::cli
