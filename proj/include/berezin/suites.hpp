#pragma once

#include "berezin/core.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bq {

/// Parameters of one CLI invocation. Empty lists select the suite defaults.
struct RunConfig {
    std::string command;
    ModelParams params{2, 0.0, 0.5, 12};
    double tol = 1e-10;
    int radial_nodes = 256;
    std::vector<int> sphere_orders;
    std::size_t mc_samples = 1000000;
    std::uint64_t seed = 20240607;
    std::vector<double> hbar_grid;
    Point z;
    std::filesystem::path out_dir = "out";

    void validate() const;
};

/// Suite names accepted by run_suite, in report order.
const std::vector<std::string>& suite_names();

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;      // measured quantity
    double threshold = 0.0;  // bound it is compared against
    std::string detail;
    bool gating = true;      // informational rows never change the exit status
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    std::vector<std::filesystem::path> files;
    double seconds = 0.0;

    bool all_pass() const;
};

/// "PASS|FAIL|INFO name value threshold detail".
std::string format_check(const CheckResult& c);

SuiteResult run_specfun(const RunConfig& cfg);
SuiteResult run_moments(const RunConfig& cfg);
SuiteResult run_measure(const RunConfig& cfg);
SuiteResult run_hilbert(const RunConfig& cfg);
SuiteResult run_kernels(const RunConfig& cfg);
SuiteResult run_asymptotics(const RunConfig& cfg);
SuiteResult run_berezin(const RunConfig& cfg);
SuiteResult run_star(const RunConfig& cfg);
/// Every suite into out_dir/<suite>/ plus out_dir/report.json.
SuiteResult run_report(const RunConfig& cfg);

SuiteResult run_suite(const RunConfig& cfg);

/// "1", "-0.5", "0.3+0.4i", "2-1e-3i", "0.7i".
cplx parse_complex(const std::string& s);
/// Comma-separated components.
Point parse_point(const std::string& s);
std::vector<double> parse_reals(const std::string& s);
std::vector<int> parse_naturals(const std::string& s);

}  // namespace bq
