// Command-line front end: scheme validation, extension, max-height sweeps,
// tensor products, Schurian constructions and verification.
//
// Exit codes: 0 = success / extensible / verified,
//             2 = not extensible or verification failed (a decision),
//             1 = usage, parse, validation or resource error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "asx/asx.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kBudgetEnv = "ASX_BUDGET";

std::uint64_t default_budget() {
    if (const char* env = std::getenv(kBudgetEnv)) {
        try {
            return std::stoull(env);
        } catch (...) {
            std::cerr << "warning: ignoring malformed " << kBudgetEnv << "\n";
        }
    }
    return asx::kDefaultEntryBudget;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) asx::fail(asx::Errc::ParseError, "cannot write " + path);
    out << text;
}

std::string cells_summary(const asx::Extension& ext) {
    std::ostringstream line;
    line << '[';
    for (int h = 0; h <= ext.height(); ++h) {
        if (h) line << ", ";
        line << ext.cells_at(h);
    }
    line << ']';
    return line.str();
}

struct SweepRow {
    std::string name;
    std::string verdict;
};

SweepRow sweep_one(const std::string& name, const asx::Scheme& scheme, int height,
                   const asx::EngineOptions& opts) {
    try {
        asx::ExtendResult result = asx::extend(scheme, height, opts);
        if (result.extensible())
            return {name, "EXTENSIBLE " + cells_summary(*result.extension)};
        return {name, "NOT-EXTENSIBLE"};
    } catch (const asx::Error& e) {
        return {name, std::string("ERROR ") + e.what()};
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"association scheme extension toolkit"};
    app.require_subcommand(1);

    std::uint64_t budget = default_budget();
    app.add_option("--budget", budget,
                   "dense entry budget per layer (env " + std::string(kBudgetEnv) + ")")
        ->capture_default_str();

    std::string in_path, in_path2, out_path;
    int height = 1;
    std::optional<int> cap;
    bool one_based = false;
    unsigned jobs = 1;

    auto* validate = app.add_subcommand("validate", "check a scheme file against the axioms");
    validate->add_option("file", in_path, "scheme file")->required();

    auto* extend = app.add_subcommand("extend", "compute the coarsest extension of a scheme");
    extend->add_option("--height", height, "target height t")->required();
    extend->add_option("file", in_path, "scheme file")->required();
    extend->add_option("--out", out_path, "write the extension to this file");

    auto* maxh = app.add_subcommand("max-height", "probe the maximal extension height");
    maxh->add_option("--cap", cap, "largest height to try (default min(d-2, 3))");
    maxh->add_option("file", in_path, "scheme file")->required();

    auto* tensor = app.add_subcommand("tensor-product", "tensor product of two schemes");
    tensor->add_option("a", in_path, "first scheme file")->required();
    tensor->add_option("b", in_path2, "second scheme file")->required();
    tensor->add_option("--out", out_path, "output scheme file");

    auto* fromg = app.add_subcommand("from-group", "Schurian scheme of a permutation group");
    fromg->add_option("generators", in_path, "generator file")->required();
    fromg->add_option("--out", out_path, "output scheme file");

    auto* orbext = app.add_subcommand("orbit-extension", "orbit extension of a permutation group");
    orbext->add_option("--height", height, "height t")->required();
    orbext->add_option("generators", in_path, "generator file")->required();
    orbext->add_option("--out", out_path, "output extension file");

    auto* verify = app.add_subcommand("verify", "verify an extension against a scheme");
    verify->add_option("scheme", in_path, "scheme file")->required();
    verify->add_option("extension", in_path2, "extension file")->required();

    auto* sweep = app.add_subcommand("sweep", "batch extend over a catalog directory");
    sweep->add_option("--height", height, "target height t")->required();
    sweep->add_option("dir", in_path, "catalog directory")->required();
    sweep->add_flag("--one-based", one_based, "catalog colors label the identity relation 1");
    sweep->add_option("--jobs", jobs, "parallel workers")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    asx::EngineOptions opts;
    opts.entry_budget = budget;

    try {
        if (validate->parsed()) {
            asx::Scheme scheme = asx::parse_scheme(asx::read_file(in_path));
            std::cout << "valid scheme: order " << scheme.order << ", " << scheme.cell_count
                      << " cells\n";
            return 0;
        }

        if (extend->parsed()) {
            asx::Scheme scheme = asx::parse_scheme(asx::read_file(in_path));
            asx::ExtendResult result = asx::extend(scheme, height, opts);
            if (!result.extensible()) {
                const auto& info = *result.failure;
                std::cout << "not extensible to height " << height << " (projection failure in"
                          << " cycle " << info.pass << ": height-1 cell " << info.height1_cell
                          << " straddles base cell " << info.straddled_base_cell << ")\n";
                return 2;
            }
            std::cout << "extensible; heights: " << cells_summary(*result.extension)
                      << " cells; splits: " << result.total_splits << "\n";
            if (!out_path.empty()) write_text(out_path, asx::serialize_extension(*result.extension));
            return 0;
        }

        if (maxh->parsed()) {
            asx::Scheme scheme = asx::parse_scheme(asx::read_file(in_path));
            asx::MaxHeightReport report = asx::max_height(scheme, cap, opts);
            if (report.budget_hit)
                std::cout << "budget exhausted after t_max >= " << report.t_max << " (cap "
                          << report.cap_used << ")\n";
            else if (report.infinite)
                std::cout << "t_max = infinite (Schurian certified at height d-2 = "
                          << scheme.order - 2 << ")\n";
            else
                std::cout << "t_max = " << report.t_max << " (cap " << report.cap_used << ")\n";
            return report.budget_hit ? 1 : 0;
        }

        if (tensor->parsed()) {
            asx::Scheme a = asx::parse_scheme(asx::read_file(in_path));
            asx::Scheme b = asx::parse_scheme(asx::read_file(in_path2));
            asx::Scheme product = asx::tensor_product(a, b);
            std::string text = asx::serialize_scheme(product);
            if (!out_path.empty())
                write_text(out_path, text);
            else
                std::cout << text;
            return 0;
        }

        if (fromg->parsed()) {
            asx::PermGroup group = asx::parse_generators(asx::read_file(in_path));
            asx::Scheme scheme = asx::scheme_from_orbitals(group);
            std::string text = asx::serialize_scheme(scheme);
            if (!out_path.empty())
                write_text(out_path, text);
            else
                std::cout << text;
            return 0;
        }

        if (orbext->parsed()) {
            asx::PermGroup group = asx::parse_generators(asx::read_file(in_path));
            asx::Extension ext = asx::orbit_extension(group, height, budget);
            std::string text = asx::serialize_extension(ext);
            if (!out_path.empty())
                write_text(out_path, text);
            else
                std::cout << text;
            return 0;
        }

        if (verify->parsed()) {
            asx::Scheme scheme = asx::parse_scheme(asx::read_file(in_path));
            asx::Extension ext = asx::parse_extension(asx::read_file(in_path2));
            asx::Layer a = asx::layer_from_scheme(scheme);
            asx::Layer b = asx::layer_from_scheme(ext.base);
            if (scheme.order != ext.base.order || !asx::is_fusion(a, b) || !asx::is_fusion(b, a)) {
                std::cout << "verification failed: extension base does not match the scheme\n";
                return 2;
            }
            asx::VerifyReport report = asx::verify_prescheme(ext);
            if (!report.passed) {
                for (const auto& violation : report.violations)
                    std::cout << "violation at height " << violation.height << ": "
                              << violation.detail << "\n";
                return 2;
            }
            asx::CompositionReport comp = asx::check_composition(ext);
            if (!comp.ok) {
                std::cout << "composition check failed at (m,n)=(" << comp.witness->m << ","
                          << comp.witness->n << ")\n";
                return 2;
            }
            std::cout << "verified: properties and composition hold up to height "
                      << ext.height() << "\n";
            return 0;
        }

        if (sweep->parsed()) {
            asx::CatalogReport catalog = asx::ingest_catalog(in_path, one_based);
            std::vector<SweepRow> rows(catalog.schemes.size());
            if (jobs <= 1) {
                for (std::size_t i = 0; i < catalog.schemes.size(); ++i)
                    rows[i] = sweep_one(catalog.schemes[i].name, catalog.schemes[i].scheme,
                                        height, opts);
            } else {
                std::vector<std::future<SweepRow>> futures;
                futures.reserve(catalog.schemes.size());
                std::atomic<std::size_t> next{0};
                // bounded fan-out: jobs futures at a time
                std::vector<std::future<void>> workers;
                for (unsigned w = 0; w < jobs; ++w)
                    workers.push_back(std::async(std::launch::async, [&]() {
                        for (;;) {
                            std::size_t i = next.fetch_add(1);
                            if (i >= catalog.schemes.size()) return;
                            rows[i] = sweep_one(catalog.schemes[i].name,
                                                catalog.schemes[i].scheme, height, opts);
                        }
                    }));
                for (auto& worker : workers) worker.get();
            }
            for (const auto& row : rows) std::cout << row.name << ": " << row.verdict << "\n";
            for (const auto& failure : catalog.failures)
                std::cout << failure.name << ": SKIPPED (" << failure.reason << ")\n";
            std::cout << rows.size() << " schemes processed, " << catalog.failures.size()
                      << " files skipped\n";
            return 0;
        }
    } catch (const asx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
