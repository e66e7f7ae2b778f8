#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cli {

using Json = nlohmann::ordered_json;

class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Read-only view of a JSON object that reports errors with the field path.
class Reader {
public:
    Reader(const Json& node, std::string path);

    const std::string& path() const noexcept { return path_; }
    const Json& node() const noexcept { return *node_; }
    void only(std::initializer_list<std::string_view> keys) const;
    bool has(std::string_view key) const;

    double number(std::string_view key) const;
    double number(std::string_view key, double fallback) const;
    std::int64_t integer(std::string_view key) const;
    std::int64_t integer(std::string_view key, std::int64_t fallback) const;
    bool flag(std::string_view key, bool fallback) const;
    std::string text(std::string_view key) const;
    std::string text(std::string_view key, const std::string& fallback) const;
    std::vector<double> numbers(std::string_view key) const;
    std::vector<std::string> texts(std::string_view key) const;
    Reader child(std::string_view key) const;
    std::vector<Reader> children(std::string_view key) const;

private:
    const Json& at(std::string_view key) const;
    std::string sub(std::string_view key) const;

    const Json* node_;
    std::string path_;
};

struct Experiment {
    std::string command;
    Json params = Json::object();
    std::string output = "-";
    std::string format = "csv";
    bool svg = false;
    std::uint64_t seed = 0;
    int threads = 0;

    Json to_json() const;
};

// Built-in defaults for a command (figure presets are keyed by name inside params).
Json default_config(const std::string& command, const std::string& figure = "");
std::vector<std::string> figure_names();

// Validates the top-level layout; command-specific fields are validated when the command runs.
Experiment parse_experiment(const Json& doc);
Json load_json_file(const std::string& path);
// Applies "a.b.c=value"; keys outside the top-level record are taken relative to params.
void apply_override(Json& doc, const std::string& assignment);

}  // namespace cli
