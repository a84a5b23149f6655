#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "pbtk/report.hpp"

namespace pbtk::cli {

struct PfSection {
    double delta = 0.6;
    double omega = 1.0;
    double theta = 0.0;
};

struct EpfSection {
    int M = 3;
    std::string basis = "random";  // standard | random | file
    std::string basis_file;        // JSON {"M", "vectors"} when basis = "file"
    double kappa_max = 1e3;
};

struct DpbSection {
    int cutoff = 10;
    std::string similarity = "random";  // identity | diagonal | random | explicit
    double kappa = 100.0;               // target condition number for "random"
    Json diagonal = Json::array();      // complex entries for "diagonal"
    Json matrix = Json::object();       // operator JSON for "explicit"
    double radius = 0.0;                // <= 0: tail rule
    int radial_nodes = 64;
    int samples = 100;
};

struct Gauss2dSection {
    double epsilon = 0.4;
    int xi = 1;
    int max_degree = 5;
};

struct RunConfig {
    std::string command = "verify-all";  // pf | epf | dpb | gauss2d | verify-all
    std::uint64_t seed = 7;
    std::optional<double> tol;
    std::string report;   // empty: JSON report on stdout
    std::string csv_dir;  // empty: no CSV output
    PfSection pf;
    EpfSection epf;
    DpbSection dpb;
    Gauss2dSection gauss2d;
};

inline constexpr double kDefaultTolerance = 1e-10;

enum class ConfigFormat { Toml, Json };

/// Strict parse: unknown keys and wrongly typed values raise ConfigError with
/// the field path (and the line, for TOML).
RunConfig parse_config(const std::string& text, ConfigFormat format);

/// Format chosen by extension: .json is JSON, anything else TOML.
RunConfig load_config(const std::filesystem::path& path);

/// Base tolerance: config value, then PBTK_TOL, then the command line flag.
double resolve_tolerance(const RunConfig& cfg, const char* env_value, std::optional<double> flag);

struct Outcome {
    VerificationReport report;
    std::map<std::string, std::string> csv;  // file name -> contents
};

// Module suites. Each throws pbtk::Error on invalid input.
Outcome pf_suite(const PfSection& s, double tol);
Outcome epf_suite(const EpfSection& s, std::uint64_t seed, double tol);
Outcome dpb_suite(const DpbSection& s, std::uint64_t seed, double tol);
Outcome gauss2d_suite(const Gauss2dSection& s, double tol);

/// Acceptance runner over all four domain modules, ending with a coverage entry.
Outcome verify_all(std::uint64_t seed, double tol);

Outcome execute(const RunConfig& cfg, double tol);

/// Writes via a temporary sibling file and rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Executes and writes artifacts. Returns 0 if every check passes, 1 if any
/// fails and 2 on configuration or input errors.
int run(const RunConfig& cfg, double tol, std::ostream& out, std::ostream& err);

/// Command-line entry point.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pbtk::cli
