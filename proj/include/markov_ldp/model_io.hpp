#pragma once

// File formats:
//   model  JSON  {"states": [...], "rates": [[...]], "initial": [...], "description": "..."}
//   path   CSV   header "t,<label>..." (optionally a trailing "action" column), one row per grid node
//   report JSON  RunReport

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "markov_ldp/markov_core.hpp"
#include "markov_ldp/rate_function.hpp"

namespace ldp {

struct Model {
    Generator generator;
    Measure initial;
    std::string description;
    std::vector<std::string> warnings;
};

// Syntax errors map to exit code 2, validation errors to exit code 3.
class ModelFileError : public std::runtime_error {
public:
    ModelFileError(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

Model parse_model(const std::string& text, const std::string& source = "<model>");
Model load_model(const std::filesystem::path& path);

// cell_actions, when given, fill the "action" column: row 0 holds 0, row k the action of cell k-1.
void write_path_csv(const std::filesystem::path& path, const PathGrid& grid,
                    const std::vector<double>* cell_actions = nullptr);
PathGrid read_path_csv(const std::filesystem::path& path, const StateSpace& space);

struct RunReport {
    std::string command;
    std::vector<std::string> arguments;
    std::string inputs_digest;
    nlohmann::json outputs = nlohmann::json::object();
    double wall_time_seconds = 0.0;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

void save_report(const std::filesystem::path& path, const RunReport& report);
RunReport load_report(const std::filesystem::path& path);

// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& data);

std::string read_text_file(const std::filesystem::path& path);

} // namespace ldp
