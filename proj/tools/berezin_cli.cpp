// Runs one verification suite and writes its CSV/JSON artifacts under --out.
// Exit status: 0 all checks pass, 1 tolerance failure, 2 configuration or domain error.

#include "berezin/suites.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    bq::RunConfig cfg;
    CLI::App app{"Berezin quantization verification suites"};
    app.set_help_flag("-h,--help", "Print usage");

    std::string sphere, grid, z;
    app.add_option("command", cfg.command, "Suite to run")
        ->required()
        ->check(CLI::IsMember(bq::suite_names()));
    app.add_option("--n", cfg.params.n, "Complex dimension")->capture_default_str();
    app.add_option("--p", cfg.params.p, "Weight exponent")->capture_default_str();
    app.add_option("--hbar", cfg.params.hbar, "Planck parameter")->capture_default_str();
    app.add_option("--L", cfg.params.L, "Degree cutoff")->capture_default_str();
    app.add_option("--tol", cfg.tol, "Relative tolerance of the identity checks")->capture_default_str();
    app.add_option("--radial-nodes", cfg.radial_nodes, "Radial quadrature nodes")->capture_default_str();
    app.add_option("--sphere-orders", sphere, "Sphere rule orders, comma-separated");
    app.add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples per case")->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    app.add_option("--hbar-grid", grid, "Decreasing hbar grid, comma-separated");
    app.add_option("--z", z, "Point, comma-separated components re+imi");
    app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (!sphere.empty()) cfg.sphere_orders = bq::parse_naturals(sphere);
        if (!grid.empty()) cfg.hbar_grid = bq::parse_reals(grid);
        if (!z.empty()) cfg.z = bq::parse_point(z);
        const bq::SuiteResult r = bq::run_suite(cfg);
        for (const auto& c : r.checks) std::cout << bq::format_check(c) << '\n';
        for (const auto& f : r.files) std::cout << "wrote " << f.generic_string() << '\n';
        const bool ok = r.all_pass();
        std::cout << (ok ? "PASS " : "FAIL ") << r.suite << " in " << r.seconds << " s\n";
        return ok ? 0 : 1;
    } catch (const bq::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
