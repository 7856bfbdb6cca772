// One line per acceptance criterion. Tolerances live in the suites; the runtime
// budgets and criterion mapping live here.

#include "berezin/suites.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string suite;
    double budget_s;
};

const std::vector<Criterion> kCriteria{
    {1, "specfun", 1.0},   {2, "moments", 30.0},     {3, "measure", 10.0}, {4, "hilbert", 20.0},
    {5, "kernels", 10.0},  {6, "berezin", 300.0},    {7, "star", 600.0},   {8, "asymptotics", 5.0},
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "berezin_acceptance";
    fs::remove_all(root);
    bool all = true;
    std::vector<bq::SuiteResult> first;

    for (const auto& c : kCriteria) {
        bq::RunConfig cfg;
        cfg.command = c.suite;
        cfg.out_dir = root / "run1" / c.suite;
        bq::SuiteResult r;
        try {
            r = bq::run_suite(cfg);
        } catch (const std::exception& e) {
            std::printf("FAIL criterion %d (%s): %s\n", c.id, c.suite.c_str(), e.what());
            all = false;
            continue;
        }
        int failed = 0;
        for (const auto& k : r.checks)
            if (k.gating && !k.pass) {
                std::printf("    %s\n", bq::format_check(k).c_str());
                ++failed;
            }
        const bool ok = failed == 0 && r.seconds < c.budget_s;
        all = all && ok;
        std::printf("%s criterion %d (%s): %zu checks, %d failed, %.2f s (budget %.0f s)\n", ok ? "PASS" : "FAIL", c.id,
                    c.suite.c_str(), r.checks.size(), failed, r.seconds, c.budget_s);
        first.push_back(std::move(r));
    }

    // Criterion 9: a second run through the report driver must reproduce every CSV byte for byte.
    bq::RunConfig rep;
    rep.command = "report";
    rep.out_dir = root / "run2";
    std::size_t compared = 0, differing = 0;
    try {
        bq::run_suite(rep);
        for (const auto& r : first)
            for (const auto& f : r.files) {
                if (f.extension() != ".csv") continue;
                const fs::path other = rep.out_dir / r.suite / f.filename();
                ++compared;
                if (!fs::exists(other) || slurp(f) != slurp(other)) {
                    std::printf("    differs: %s\n", f.filename().string().c_str());
                    ++differing;
                }
            }
        if (!fs::exists(rep.out_dir / "report.json")) ++differing;
    } catch (const std::exception& e) {
        std::printf("    report run failed: %s\n", e.what());
        ++differing;
    }
    const bool ok9 = differing == 0 && compared > 0;
    all = all && ok9;
    std::printf("%s criterion 9 (determinism): %zu CSV files compared, %zu differ\n", ok9 ? "PASS" : "FAIL", compared,
                differing);

    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}
