#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cli {

namespace {

const char* type_name(const Json& j) { return j.type_name(); }

constexpr std::string_view kTopLevel[] = {"command", "params", "output", "format", "svg", "seed", "threads"};

const char* kFigureDefaults = R"({
  "fig1_left": {"alpha": 0.5, "r": 1000000, "k": 100, "points": 100, "lambda_star_min": 0.01,
                "lambda_star_max": 1.0, "lambda_min_factor": 0.71245212, "ridge_lambda_min": 0.0},
  "fig1_right": {"alpha_min": 0.0, "alpha_max": 3.0, "points": 31, "lambda_star": 0.05, "r": 1000000, "k": 100,
                 "lambda_min_factor": 0.71245212, "ridge_lambda_min": 0.0},
  "fig2": {"alpha": 0.5, "r": 1000000, "k": 100, "points": 100, "lambda_star_min": 0.01, "lambda_star_max": 1.0,
           "lambda_min_factor": 0.71245212, "lower_rank": 1e10},
  "fig3": {"n": 2000, "d": 200, "alphas": [0.01, 0.1, 0.25], "points": 10, "replications": 20, "repeats": 1},
  "fig4": {"s": 1.0, "psi_minus": 4.0, "psi_plus": 4.5, "k_min": 16, "k_max": 10000, "points": 20,
           "psi_points": 100000, "eta_scale": 8.0},
  "fig5_left": {"s": 1.0, "psi_minus": 4.0, "psi_plus": 4.5, "k_min": 16, "k_max": 10000, "points": 20,
                "psi_points": 100000, "eta_scale": 8.0}
})";

const char* kCommandDefaults = R"({
  "risk": {"spectrum": {"kind": "power_law", "alpha": 0.5, "r": 1000, "d": 1000},
           "problem": {"n": 1000, "sigma": 0.5, "psi": 1.0},
           "shrinkers": [{"type": "ridge", "lambda": 0.1}]},
  "compare": {"spectrum": {"kind": "power_law", "alpha": 0.5, "r": 10000, "d": 10000},
              "problem": {"lambda_star": 0.137, "psi": 1.0},
              "class_a": {"type": "gd", "eta": 0.1, "k": 100},
              "class_b": {"type": "ridge_uniform", "lambda_min": 0.0, "k": 100}},
  "bounds": {"spectrum": {"kind": "power_law", "alpha": 0.5, "r": 10000, "d": 10000},
             "proposition": "ridge_fine", "lambda_stars": [0.05, 0.13, 0.4, 0.77], "psi": 1.0,
             "lambda_min": 0.02, "k": 100, "constants": "stated"},
  "minimax": {"s": 1.0, "psi_minus": 4.0, "psi_plus": 4.5, "ks": [16, 100, 1000], "eta_scale": 8.0,
              "psi_points": 100000, "classes": ["minimax", "ridge", "gd"]},
  "simulate": {"n": 2000, "d": 200, "alpha": 0.1, "lambda_star": 0.1, "psi": 10.0, "k": 10, "eta": 1.0,
               "lambda_min": 0.0985315, "replications": 20, "beta_mode": "fixed_ones", "ridge_grid": "bracket"}
})";

}  // namespace

Reader::Reader(const Json& node, std::string path) : node_(&node), path_(std::move(path)) {
    if (!node.is_object()) throw SchemaError(path_, std::string("expected object, found ") + type_name(node));
}

std::string Reader::sub(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
}

void Reader::only(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : node_->items()) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw SchemaError(sub(k), "unknown field");
    }
}

bool Reader::has(std::string_view key) const { return node_->contains(std::string(key)); }

const Json& Reader::at(std::string_view key) const {
    const auto it = node_->find(std::string(key));
    if (it == node_->end()) throw SchemaError(sub(key), "missing required field");
    return *it;
}

double Reader::number(std::string_view key) const {
    const auto& v = at(key);
    if (!v.is_number()) throw SchemaError(sub(key), std::string("expected number, found ") + type_name(v));
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw SchemaError(sub(key), "expected finite number");
    return d;
}

double Reader::number(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }

std::int64_t Reader::integer(std::string_view key) const {
    const auto& v = at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9.2e18) return static_cast<std::int64_t>(d);
    }
    throw SchemaError(sub(key), std::string("expected integer, found ") + type_name(v));
}

std::int64_t Reader::integer(std::string_view key, std::int64_t fallback) const {
    return has(key) ? integer(key) : fallback;
}

bool Reader::flag(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = at(key);
    if (!v.is_boolean()) throw SchemaError(sub(key), std::string("expected boolean, found ") + type_name(v));
    return v.get<bool>();
}

std::string Reader::text(std::string_view key) const {
    const auto& v = at(key);
    if (!v.is_string()) throw SchemaError(sub(key), std::string("expected string, found ") + type_name(v));
    return v.get<std::string>();
}

std::string Reader::text(std::string_view key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
}

std::vector<double> Reader::numbers(std::string_view key) const {
    const auto& v = at(key);
    if (!v.is_array()) throw SchemaError(sub(key), std::string("expected array, found ") + type_name(v));
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw SchemaError(sub(key) + "[" + std::to_string(i) + "]", "expected number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::vector<std::string> Reader::texts(std::string_view key) const {
    const auto& v = at(key);
    if (!v.is_array()) throw SchemaError(sub(key), std::string("expected array, found ") + type_name(v));
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string()) throw SchemaError(sub(key) + "[" + std::to_string(i) + "]", "expected string");
        out.push_back(v[i].get<std::string>());
    }
    return out;
}

Reader Reader::child(std::string_view key) const { return Reader(at(key), sub(key)); }

std::vector<Reader> Reader::children(std::string_view key) const {
    const auto& v = at(key);
    if (!v.is_array()) throw SchemaError(sub(key), std::string("expected array, found ") + type_name(v));
    std::vector<Reader> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], sub(key) + "[" + std::to_string(i) + "]");
    return out;
}

Json Experiment::to_json() const {
    Json j = Json::object();
    j["command"] = command;
    j["params"] = params;
    j["output"] = output;
    j["format"] = format;
    j["svg"] = svg;
    j["seed"] = seed;
    j["threads"] = threads;
    return j;
}

std::vector<std::string> figure_names() {
    std::vector<std::string> out;
    const auto figs = Json::parse(kFigureDefaults);
    for (const auto& [k, v] : figs.items()) out.push_back(k);
    return out;
}

Json default_config(const std::string& command, const std::string& figure) {
    Json doc = Json::object();
    doc["command"] = command;
    if (command == "figure") {
        const auto figs = Json::parse(kFigureDefaults);
        if (!figs.contains(figure)) throw SchemaError("params.name", "unknown figure '" + figure + "'");
        Json params = Json::object();
        params["name"] = figure;
        for (const auto& [k, v] : figs[figure].items()) params[k] = v;
        doc["params"] = params;
    } else {
        const auto cmds = Json::parse(kCommandDefaults);
        if (!cmds.contains(command)) throw SchemaError("command", "unknown command '" + command + "'");
        doc["params"] = cmds[command];
    }
    return doc;
}

Experiment parse_experiment(const Json& doc) {
    Reader r(doc, "");
    for (const auto& [k, v] : doc.items()) {
        if (std::find(std::begin(kTopLevel), std::end(kTopLevel), k) == std::end(kTopLevel))
            throw SchemaError(k, "unknown field");
    }
    Experiment e;
    e.command = r.text("command");
    static const std::vector<std::string> commands = {"risk", "compare", "bounds", "minimax", "simulate", "figure"};
    if (std::find(commands.begin(), commands.end(), e.command) == commands.end())
        throw SchemaError("command", "unknown command '" + e.command + "'");
    if (r.has("params")) {
        Reader p = r.child("params");
        e.params = p.node();
    }
    e.output = r.text("output", e.output);
    e.format = r.text("format", e.format);
    if (e.format != "csv" && e.format != "json") throw SchemaError("format", "expected \"csv\" or \"json\"");
    e.svg = r.flag("svg", e.svg);
    const auto seed = r.integer("seed", 0);
    if (seed < 0) throw SchemaError("seed", "expected non-negative integer");
    e.seed = static_cast<std::uint64_t>(seed);
    const auto threads = r.integer("threads", 0);
    if (threads < 0 || threads > 4096) throw SchemaError("threads", "expected integer in [0, 4096]");
    e.threads = static_cast<int>(threads);
    return e;
}

Json load_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw SchemaError("--config", "cannot read " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    try {
        return Json::parse(ss.str(), nullptr, true, true);
    } catch (const Json::parse_error& e) {
        throw SchemaError("--config", std::string("invalid JSON: ") + e.what());
    }
}

void apply_override(Json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw SchemaError("--override", "expected key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    std::vector<std::string> parts;
    std::stringstream ks(key);
    for (std::string part; std::getline(ks, part, '.');) {
        if (part.empty()) throw SchemaError("--override", "empty path segment in '" + key + "'");
        parts.push_back(part);
    }
    if (std::find(std::begin(kTopLevel), std::end(kTopLevel), parts.front()) == std::end(kTopLevel))
        parts.insert(parts.begin(), "params");
    Json value;
    try {
        value = Json::parse(raw);
    } catch (const Json::parse_error&) {
        value = raw;
    }
    Json* node = &doc;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object()) throw SchemaError(key, "override path crosses a non-object");
        if (!node->contains(parts[i])) (*node)[parts[i]] = Json::object();
        node = &(*node)[parts[i]];
    }
    if (!node->is_object()) throw SchemaError(key, "override path crosses a non-object");
    (*node)[parts.back()] = value;
}

}  // namespace cli
