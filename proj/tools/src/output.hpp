#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cli {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Series {
    std::string label;
    std::string y_column;
};

struct PlotSpec {
    std::string title;
    std::string x_column;
    std::vector<Series> series;
    bool log_x = false;
    bool log_y = false;
};

struct Table {
    std::string suffix;  // appended to the output prefix, e.g. "" or "_ridge"
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<PlotSpec> plots;

    void add(std::vector<Cell> row);
};

std::string to_csv(const Table& t);
nlohmann::ordered_json to_json(const Table& t);
std::string to_svg(const Table& t, const PlotSpec& plot);

// Writes to a temporary sibling file, then renames over the target.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace cli
