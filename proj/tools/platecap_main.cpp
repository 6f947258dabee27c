// Command-line front end: assemble, solve, extrapolate, compare.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "platecap/errors.hpp"
#include "platecap/kernel.hpp"
#include "platecap/pipeline.hpp"

namespace {

int env_threads() {
    if (const char* v = std::getenv("PLATECAP_THREADS")) {
        const int n = std::atoi(v);
        if (n >= 1) return n;
    }
    return 1;
}

int write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circular parallel plate capacitance via the Love equation"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand(
        "solve", "Compute capacitance rows for a list of separations");
    std::vector<double> kappas;
    std::vector<int> truncs;
    std::string mode = "raw";
    std::string format = "csv";
    std::string out_path;
    int threads = env_threads();
    solve->add_option("--kappa", kappas, "separation(s) d/a")
        ->required()
        ->delimiter(',');
    solve->add_option("--trunc", truncs,
                      "truncation N (one value, or one per kappa)")
        ->required()
        ->delimiter(',');
    solve->add_option("--mode", mode, "raw|power|heuristic")
        ->check(CLI::IsMember({"raw", "power", "heuristic"}));
    solve->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    solve->add_option("--out", out_path, "output path (default stdout)");
    solve->add_option("--threads", threads,
                      "assembly threads (default $PLATECAP_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    // verify
    auto* verify = app.add_subcommand(
        "verify", "Run the quadrature-oracle comparison suites");
    std::string level = "fast";
    verify->add_option("--level", level, "fast|full")
        ->check(CLI::IsMember({"fast", "full"}));

    // dump-kernel
    auto* dump = app.add_subcommand(
        "dump-kernel", "Assemble a kernel matrix and write the binary dump");
    double dump_kappa = 0.0;
    int dump_trunc = 0;
    std::string dump_out;
    int dump_threads = env_threads();
    dump->add_option("--kappa", dump_kappa, "separation d/a")->required();
    dump->add_option("--trunc", dump_trunc, "truncation N")->required();
    dump->add_option("--out", dump_out, "output path")->required();
    dump->add_option("--threads", dump_threads, "assembly threads")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            platecap::pipeline::RunConfig config;
            config.kappas = kappas;
            config.truncs = truncs;
            config.mode = mode == "raw" ? platecap::pipeline::Mode::raw
                          : mode == "power"
                              ? platecap::pipeline::Mode::power
                              : platecap::pipeline::Mode::heuristic;
            config.format = format == "csv" ? platecap::pipeline::Format::csv
                                            : platecap::pipeline::Format::json;
            config.output_path = out_path;
            config.threads = threads;

            const auto report = platecap::pipeline::run(config);
            for (const auto& row : report.rows)
                for (const auto& w : row.warnings)
                    std::cerr << "warning: kappa=" << row.kappa << ": " << w << "\n";
            for (const auto& e : report.errors)
                std::cerr << "error: kappa=" << e.kappa << ": " << e.message << "\n";

            const std::string text = config.format == platecap::pipeline::Format::csv
                                         ? platecap::pipeline::to_csv(report)
                                         : platecap::pipeline::to_json(report);
            const int rc = write_output(text, out_path);
            if (rc != 0) return rc;
            return report.ok() ? 0 : 1;
        }

        if (*verify) {
            const auto report = platecap::pipeline::verify(
                level == "fast" ? platecap::pipeline::VerifyLevel::fast
                                : platecap::pipeline::VerifyLevel::full);
            for (const auto& f : report.failures)
                std::cerr << "FAIL " << f.check << ": " << f.detail << "\n";
            std::cout << "verify " << level << ": " << report.checks_run
                      << " checks, " << report.failures.size() << " failure(s)\n";
            return report.passed() ? 0 : 1;
        }

        if (*dump) {
            const auto matrix = platecap::kernel::assemble(
                platecap::kernel::Separation(dump_kappa), dump_trunc,
                dump_threads);
            if (matrix.guard_warning)
                std::cerr << "warning: N*pi*kappa = " << matrix.guard_product
                          << " is above the accuracy warning level\n";
            platecap::kernel::dump_kernel(matrix, dump_out);
            std::cout << "wrote " << dump_out << " (N=" << matrix.trunc
                      << ", kappa=" << matrix.kappa << ")\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
