#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "splitpack/core.hpp"

namespace splitpack {

/// Malformed or unreadable input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance: {"k": 2, "items": ["3/4", "0.5", ...]}
// Packing:  {"bins": [[{"item": 0, "part": "3/4"}, ...], ...], "labels": ["S2a", ...]}
// Sizes and parts are strings so they stay exact.

nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const Packing& p);
Instance instance_from_json(const nlohmann::json& j);
Packing packing_from_json(const nlohmann::json& j);

std::string render(const Instance& inst);
std::string render(const Packing& p);
Instance parse_instance(const std::string& text);
Packing parse_packing(const std::string& text);

Instance read_instance(const std::filesystem::path& path);
Packing read_packing(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace splitpack
