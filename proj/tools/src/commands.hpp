#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace cli {

std::vector<Table> run_experiment(const Experiment& e);

// Quick built-in checks; prints one line per check and returns true when all pass.
bool selftest();

// Column documentation shown in --help.
std::string columns_help(const std::string& command);

}  // namespace cli
