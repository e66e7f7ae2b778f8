#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "specshrink/errors.hpp"
#include "specshrink/parallel.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitSchema = 2;
constexpr int kExitPrecondition = 3;

struct Flags {
    std::string config;
    std::string out;
    std::string format;
    bool svg = false;
    int threads = -1;
    long long seed = -1;
    std::vector<std::string> overrides;
    std::string figure;
};

void emit(const cli::Experiment& e, const std::vector<cli::Table>& tables) {
    for (const auto& t : tables) {
        const std::string body = e.format == "json" ? cli::to_json(t).dump(2) + "\n" : cli::to_csv(t);
        if (e.output == "-") {
            std::fwrite(body.data(), 1, body.size(), stdout);
        } else {
            const auto path = e.output + t.suffix + (e.format == "json" ? ".json" : ".csv");
            cli::write_atomic(path, body);
            spdlog::info("wrote {}", path);
        }
        if (e.svg && e.output != "-") {
            for (std::size_t i = 0; i < t.plots.size(); ++i) {
                const auto path = e.output + t.suffix + (i ? "_" + std::to_string(i) : "") + ".svg";
                cli::write_atomic(path, cli::to_svg(t, t.plots[i]));
                spdlog::info("wrote {}", path);
            }
        }
    }
}

int run(const std::string& command, const Flags& f) {
    cli::Json doc;
    if (!f.config.empty()) {
        doc = cli::load_json_file(f.config);
        if (!doc.is_object()) throw cli::SchemaError("", "config must be a JSON object");
        if (!doc.contains("command")) doc["command"] = command;
        if (doc["command"] != command)
            throw cli::SchemaError("command", "config is for '" + doc["command"].dump() + "' but subcommand is '" + command + "'");
        if (command == "figure" && !f.figure.empty()) {
            if (!doc.contains("params")) doc["params"] = cli::Json::object();
            doc["params"]["name"] = f.figure;
        }
    } else {
        if (command == "figure" && f.figure.empty()) throw cli::SchemaError("figure", "figure name required");
        doc = cli::default_config(command, f.figure);
    }
    for (const auto& o : f.overrides) cli::apply_override(doc, o);
    auto e = cli::parse_experiment(doc);
    if (!f.out.empty()) e.output = f.out;
    if (!f.format.empty()) e.format = f.format;
    if (f.svg) e.svg = true;
    if (f.threads >= 0) e.threads = f.threads;
    if (f.seed >= 0) e.seed = static_cast<std::uint64_t>(f.seed);
    specshrink::set_thread_count(e.threads);
    const auto resolved = e.to_json();
    spdlog::info("resolved config: {}", resolved.dump());
    const auto tables = cli::run_experiment(e);
    if (e.output != "-") cli::write_atomic(e.output + ".config.json", resolved.dump(2) + "\n");
    emit(e, tables);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    auto logger = spdlog::stderr_color_mt("specshrink");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");

    CLI::App app{"Exact excess risks, bounds and figure data for spectral shrinkage estimator classes"};
    app.require_subcommand(1);
    Flags f;
    const std::vector<std::string> commands = {"risk", "compare", "bounds", "minimax", "simulate", "figure"};
    std::vector<CLI::App*> subs;
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name, "Run the " + name + " experiment");
        sub->add_option("--config", f.config, "JSON experiment config (defaults are built in)")->check(CLI::ExistingFile);
        sub->add_option("--out", f.out, "Output path prefix ('-' writes to stdout)");
        sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--svg", f.svg, "Also write static SVG line charts");
        sub->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->check(CLI::Range(0, 4096));
        sub->add_option("--seed", f.seed, "Random seed")->check(CLI::NonNegativeNumber);
        sub->add_option("--override", f.overrides, "key=value (dotted path, relative to params unless top-level)");
        if (name == "figure") {
            sub->add_option("name", f.figure, "Figure preset")->check(CLI::IsMember(cli::figure_names()));
        }
        sub->footer(cli::columns_help(name));
        subs.push_back(sub);
    }
    auto* self = app.add_subcommand("selftest", "Run quick built-in numerical checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitSchema;
    }

    try {
        if (self->parsed()) return cli::selftest() ? 0 : kExitRuntime;
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) return run(commands[i], f);
    } catch (const cli::SchemaError& e) {
        spdlog::error("schema error at {}", e.what());
        return kExitSchema;
    } catch (const specshrink::PreconditionError& e) {
        spdlog::error("precondition failed: {}", e.what());
        return kExitPrecondition;
    } catch (const specshrink::ArgumentError& e) {
        spdlog::error("invalid argument: {}", e.what());
        return kExitSchema;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitRuntime;
    }
    return kExitRuntime;
}
