// qcalc command-line front end.
//
// Exit codes: 0 pass, 1 a check failed, 2 mismatches without --allow-mismatch,
// 3 usage error (unknown preset or suite, bad expression or DSL file), 4 I/O error.

#include "qcalc/dsl.hpp"
#include "qcalc/suites.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qcalc;

constexpr int exit_usage = 3;
constexpr int exit_io = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PresetId preset_or_throw(const std::string& name) {
    auto id = parse_preset_id(name);
    if (!id) throw UsageError("unknown preset '" + name + "' (see list-presets)");
    return *id;
}

// Explicit --report wins; otherwise $QCALC_REPORT_DIR/<label>.json; otherwise no file.
std::string report_path(const std::string& explicit_path, const std::string& label) {
    if (!explicit_path.empty()) return explicit_path;
    const char* dir = std::getenv("QCALC_REPORT_DIR");
    if (!dir || !*dir) return {};
    return (std::filesystem::path(dir) / (label + ".json")).string();
}

void write_report(const Report& r, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report to " + path);
    out << to_json(r).dump(2) << "\n";
    if (!out) throw IoError("write failed for " + path);
}

void print_summary(const Report& r, bool verbose) {
    for (const auto& s : r.suites) {
        std::cout << s.preset << " " << s.name << ": " << s.count(Status::pass) << " pass, " << s.count(Status::fail)
                  << " fail, " << s.count(Status::mismatch) << " mismatch, " << s.count(Status::skipped) << " skipped\n";
        for (const auto& c : s.checks) {
            if (!verbose && c.status == Status::pass) continue;
            std::cout << "  " << status_name(c.status) << "  " << c.name;
            if (!c.residual.empty()) std::cout << "  [" << c.residual << "]";
            std::cout << "\n";
        }
    }
    std::cout << "overall: " << r.overall() << " (" << r.count(Status::mismatch) << " mismatches)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for quantum-group differential calculi"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list-presets", "List built-in presentations");

    std::string preset_name_arg, file, expr;
    auto* norm = app.add_subcommand("normalize", "Print the normal form of an expression");
    auto* norm_src = norm->add_option_group("source");
    norm_src->add_option("--preset", preset_name_arg, "Built-in preset");
    norm_src->add_option("--file", file, "Presentation in the DSL format");
    norm_src->require_option(1);
    norm->add_option("--expr", expr, "Expression, e.g. \"d.a\"")->required();

    std::vector<std::string> suites;
    std::size_t max_degree = 0;
    std::uint64_t seed = SuiteConfig{}.seed;
    std::string report;
    bool allow_mismatch = false, verbose = false;
    auto* check = app.add_subcommand("check", "Run named suites on one presentation");
    auto* check_src = check->add_option_group("source");
    check_src->add_option("--preset", preset_name_arg, "Built-in preset");
    check_src->add_option("--file", file, "Presentation in the DSL format");
    check_src->require_option(1);
    check->add_option("--suite", suites, "Suite name (repeatable); default: all applicable");
    auto* verify = app.add_subcommand("verify-paper", "Run every applicable suite on every preset");
    for (auto* sc : {check, verify}) {
        sc->add_option("--max-degree", max_degree, "Word-length bound for corpora (default 4, vector fields 3)");
        sc->add_option("--seed", seed, "Seed for randomized corpora");
        sc->add_option("--report", report, "JSON report path (default: $QCALC_REPORT_DIR/<name>.json)");
        sc->add_flag("--allow-mismatch", allow_mismatch, "Exit 0 when the only non-passes are mismatches");
        sc->add_flag("-v,--verbose", verbose, "Print passing checks too");
    }

    auto* exp = app.add_subcommand("export-preset", "Print a preset in the DSL format");
    exp->add_option("--preset", preset_name_arg, "Built-in preset")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (*list) {
            for (PresetId id : all_presets()) {
                const auto& p = preset(id);
                std::cout << preset_name(id) << "  " << p.num_generators() << " generators, " << p.rules().size()
                          << " rules, order " << order_name(p.order()) << "\n";
            }
            return 0;
        }
        if (*exp) {
            std::cout << serialize_presentation(preset(preset_or_throw(preset_name_arg)));
            return 0;
        }

        std::optional<Presentation> from_file;
        auto load = [&]() -> const Presentation& {
            if (!file.empty()) {
                from_file = parse_presentation(read_file(file));
                return *from_file;
            }
            return preset(preset_or_throw(preset_name_arg));
        };

        if (*norm) {
            const Presentation& p = load();
            std::cout << p.str(normalize(parse_expression(expr, p), p)) << "\n";
            return 0;
        }

        SuiteConfig cfg;
        if (max_degree) cfg.max_degree = max_degree;
        cfg.seed = seed;
        std::vector<SuiteTask> tasks;
        std::string label;
        if (*verify) {
            tasks = all_suite_tasks();
            label = "verify-paper";
        } else {
            const Presentation& p = load();
            auto id = file.empty() ? parse_preset_id(preset_name_arg) : std::nullopt;
            label = file.empty() ? preset_name_arg : p.name();
            for (const auto& s : suites)
                if (!is_suite(s)) throw UsageError("unknown suite '" + s + "'");
            if (suites.empty())
                for (const auto& s : suite_names())
                    if (id ? suite_applies(s, *id) : (s == "confluence" || s == "classical-limit")) suites.push_back(s);
            for (const auto& s : suites) tasks.push_back({s, id, id ? nullptr : &p});
        }
        Report r = run_suites(tasks, cfg, label);
        print_summary(r, verbose);
        write_report(r, report_path(report, label));
        return exit_code(r, allow_mismatch);
    } catch (const IoError& e) {
        std::cerr << "qcalc: " << e.what() << "\n";
        return exit_io;
    } catch (const DslError& e) {
        for (const auto& d : e.diagnostics)
            std::cerr << file << ":" << d.line << ":" << d.col << ": " << d.kind << ": " << d.message << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "qcalc: expression: " << e.what() << "\n";
        return exit_usage;
    } catch (const UnknownGenerator& e) {
        std::cerr << "qcalc: " << e.what() << "\n";
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "qcalc: " << e.what() << "\n";
        return exit_usage;
    } catch (const UnknownSuite& e) {
        std::cerr << "qcalc: " << e.what() << "\n";
        return exit_usage;
    }
}
