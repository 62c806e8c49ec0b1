#pragma once

#include <nlohmann/json_fwd.hpp>
#include <functional>
#include <string>
#include <vector>

namespace cvhide {

// Fixed 12-significant-digit float serialization; identical inputs give
// byte-identical output.
std::string format_sig12(double x);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // pre-formatted cells
    std::vector<std::string> cutoffs;            // provenance
    std::vector<std::string> grids;
};

std::string to_csv(const Table& table);
std::string to_text(const Table& table);
std::string to_json(const Table& table, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& params);

// "start:stop:step" (inclusive of stop up to rounding) or a single value.
std::vector<double> parse_range(const std::string& text);
std::vector<long long> parse_int_range(const std::string& text);

// Runs fn(0..count-1) on up to `jobs` threads; results must be written to
// index-addressed slots so output order matches input order.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

// --jobs default: CVHIDE_JOBS when set, otherwise 1.
int default_jobs();

} // namespace cvhide
