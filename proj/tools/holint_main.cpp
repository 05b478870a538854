#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "holint/analysis.hpp"
#include "holint/field_parse.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ','))
        if (!part.empty()) out.push_back(part);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"holint: integrability analysis for holomorphic vector field germs on (C^3,0)"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "parse a germ file and run the analysis pipeline");
    std::string file;
    std::vector<std::string> task_names;
    int order = 0;
    int degree_bound = 0;
    std::string z0_arg;
    int max_period = 24;
    double tol = 1e-6;
    int max_blowups = 64;
    std::string format = "text";
    std::uint64_t seed = 0;
    analyze->add_option("file", file, "germ description file")->required();
    analyze->add_option("--tasks", task_names,
                        "tasks to run (star resonances first_integral meromorphic_invariant "
                        "distribution resolution holonomy; default all)");
    analyze->add_option("--order", order, "override the truncation order of the input");
    analyze->add_option("--degree-bound", degree_bound, "resonance search bound (default: order)");
    analyze->add_option("--z0", z0_arg, "comma-separated exact z0 candidates, e.g. 0,1/2,1/4");
    analyze->add_option("--max-period", max_period, "holonomy period search bound");
    analyze->add_option("--tol", tol, "numeric tolerance for the holonomy tests");
    analyze->add_option("--max-blowups", max_blowups, "blow-up budget for resolution");
    analyze->add_option("--format", format, "report format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    analyze->add_option("--seed", seed, "seed recorded in the report provenance");

    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "error: cannot open '" << file << "'\n";
            return kExitParse;
        }
        std::stringstream buf;
        buf << in.rdbuf();

        holint::AnalysisRequest request{holint::parse_field(
            buf.str(), order > 0 ? std::optional<int>(order) : std::nullopt)};
        if (!task_names.empty()) {
            request.tasks.clear();
            for (const auto& chunk : task_names)
                for (const auto& name : split_commas(chunk)) {
                    if (name == "all") {
                        request.tasks = holint::all_tasks();
                        break;
                    }
                    request.tasks.insert(holint::task_from_name(name));
                }
        }
        for (const auto& v : split_commas(z0_arg))
            request.z0.push_back(holint::parse_gaussian_literal(v));
        request.degree_bound = degree_bound;
        request.max_period = max_period;
        request.tol = tol;
        request.max_blowups = max_blowups;
        request.seed = seed;

        holint::AnalysisReport report = holint::run(request);
        std::cout << (format == "structured" ? report.structured : report.text);
        if (format == "structured") std::cout << "\n";
        return report.budget_hit ? kExitBudget : kExitOk;
    } catch (const holint::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const holint::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const holint::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
