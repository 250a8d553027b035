#pragma once

// JSON mirror of the CSV sweep output: {"meta": {...}, "columns": [...],
// "rows": [[...]]}.  Kept in its own header so the core library does not
// pull in nlohmann/json.

#include <json.hpp>

#include "mtcs/sweep.hpp"

namespace mtcs {

inline std::string to_json(const SweepResult& result) {
    nlohmann::ordered_json j;
    j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : result.meta) j["meta"][key] = value;
    j["columns"] = result.columns;
    j["rows"] = result.rows;
    return j.dump(2) + "\n";
}

inline void write_result(const SweepResult& result, const std::string& path, OutputFormat format) {
    write_text_file(path, format == OutputFormat::csv ? to_csv(result) : to_json(result));
}

}  // namespace mtcs
