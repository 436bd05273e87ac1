// krein-check: runs the property-check scenarios and renders a report.
//
//   krein-check check [--scenario NAME] [options]
//   krein-check demo NAME [options]
//   krein-check list
//
// Exit status: 0 all records pass, 1 some record fails, 2 usage error,
// 3 the tensor relation budget was exceeded.

#include <krein/checker.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace krein;
using namespace krein::checker;

enum Exit { exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_budget = 3 };

struct Options {
    std::optional<std::uint64_t> seed;
    std::optional<int> samples, p, q, rank, jobs;
    std::optional<double> tol;
    std::optional<std::string> scenario, symmetry;
    std::optional<std::vector<int>> blocks;
    std::optional<std::size_t> max_relation_entries;
    std::string config_path, report_path, demo;
    bool quiet = false, json = false, timings = false;
};

void add_common(CLI::App& app, Options& o)
{
    app.add_option("--seed", o.seed, "random seed (default 42, or $KREIN_CHECK_SEED)");
    app.add_option("--samples", o.samples, "random samples per property");
    app.add_option("--tol", o.tol, "tolerance for every measured record");
    app.add_option("--p", o.p, "number of positive directions");
    app.add_option("--q", o.q, "number of negative directions");
    app.add_option("--blocks", o.blocks, "block sizes of the base algebra")->expected(1, -1);
    app.add_option("--rank", o.rank, "module rank");
    app.add_option("--symmetry", o.symmetry, "standard, random or hyperbolic");
    app.add_option("--max-relation-entries", o.max_relation_entries, "budget for tensor relation matrices");
    app.add_option("--jobs", o.jobs, "worker threads (0: all cores)");
    app.add_option("--config", o.config_path, "JSON file with default options");
    app.add_option("--report", o.report_path, "write the JSON report to this file");
    app.add_flag("--json", o.json, "print the JSON report instead of text");
    app.add_flag("--quiet", o.quiet, "print failures and the verdict only");
    app.add_flag("--timings", o.timings, "include per-task timings in the JSON report");
}

// Defaults, then the environment seed, then the config file, then flags.
CheckConfig resolve(const Options& o)
{
    CheckConfig c;
    if (auto s = seed_from_env())
        c.seed = *s;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in)
            throw UsageError("cannot read config file " + o.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config file " + o.config_path + ": " + e.what());
        }
        apply_json(c, j);
    }
    if (o.seed)
        c.seed = *o.seed;
    if (o.samples)
        c.samples = *o.samples;
    if (o.tol)
        c.tol = o.tol;
    if (o.scenario)
        c.scenario = parse_scenario(*o.scenario);
    if (o.p)
        c.p = *o.p;
    if (o.q)
        c.q = *o.q;
    if (o.blocks)
        c.blocks = *o.blocks;
    if (o.rank)
        c.rank = *o.rank;
    if (o.symmetry)
        c.symmetry = *o.symmetry;
    if (o.max_relation_entries)
        c.max_relation_entries = *o.max_relation_entries;
    if (o.jobs)
        c.jobs = *o.jobs;
    c.validate();
    return c;
}

int emit(const RunResult& r, const CheckConfig& c, const Options& o, const std::string& command,
         const std::string& target, const std::string& preface)
{
    const auto j = to_json(r, c, command, target, o.timings);
    if (!o.report_path.empty()) {
        std::ofstream out(o.report_path);
        if (!out)
            throw UsageError("cannot write report to " + o.report_path);
        out << j.dump(2) << "\n";
    }
    if (o.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        if (!preface.empty() && !o.quiet)
            std::cout << preface << "\n\n";
        std::ostringstream title;
        title << "krein-check " << command << " " << target << "  seed " << c.seed << "  samples " << c.samples;
        std::cout << render_text(r, title.str(), o.quiet);
    }
    return r.passed() ? exit_pass : exit_fail;
}

void list()
{
    std::cout << "scenarios:\n";
    for (const auto& [name, s] : scenario_names()) {
        CheckConfig c;
        c.scenario = s;
        if (s == Scenario::spinor && (c.p + c.q) % 2)
            c.q += 1;
        std::cout << "  " << name << "  (" << scenario_tasks(c).size() << " tasks)\n";
    }
    std::cout << "demos:\n";
    for (const auto& d : demo_names())
        std::cout << "  " << d << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Property checker for Krein C*-algebras, modules and correspondences"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "run a scenario");
    add_common(*check, o);
    check->add_option("--scenario", o.scenario, "scenario name (see 'list'; default full-gallery)");

    auto* demo = app.add_subcommand("demo", "run a worked example with a short narrative");
    add_common(*demo, o);
    demo->add_option("name", o.demo, "demo name (see 'list')")->required();

    app.add_subcommand("list", "list scenarios and demos");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (app.got_subcommand("list")) {
            list();
            return exit_pass;
        }
        if (check->parsed()) {
            const CheckConfig c = resolve(o);
            return emit(run(c), c, o, "check", to_string(c.scenario), "");
        }
        const CheckConfig c = resolve(o);
        const Demo d = demo_tasks(o.demo, c);
        return emit(run_tasks(d.tasks, c), c, o, "demo", o.demo, d.narrative);
    } catch (const UsageError& e) {
        std::cerr << "krein-check: " << e.what() << "\n";
        return exit_usage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "krein-check: relation budget exceeded: " << e.what() << "\n";
        return exit_budget;
    } catch (const std::exception& e) {
        std::cerr << "krein-check: " << e.what() << "\n";
        return exit_fail;
    }
}
