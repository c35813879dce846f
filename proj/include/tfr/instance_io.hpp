#pragma once

#include <string>

#include "tfr/model.hpp"
#include "tfr/search.hpp"

namespace tfr {

// Instance files are UTF-8 JSON; schema documented in the README.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& json_text);

// Solution files: selected columns (route, profile, composition, leave and
// return times, per-task gamma-scenario finishes and distributions, cost)
// plus the worker flow plan and solver bounds.
std::string solution_to_json(const SolveResult& res, const Instance& inst);
// Rebuilds columns through the instance's propagation; flows read verbatim.
Solution solution_from_json(const std::string& json_text,
                            const Instance& inst);

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Pinned float formatting so identical runs produce byte-identical files.
std::string format_double(double v);

}  // namespace tfr
