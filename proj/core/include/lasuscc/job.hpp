#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lasuscc/integrals.hpp"
#include "lasuscc/layout.hpp"
#include "lasuscc/optimizer.hpp"

namespace lasuscc {

enum class TrotterMode { FirstOrder };

struct OutputPaths {
    std::optional<std::filesystem::path> csv;
    std::optional<std::filesystem::path> report;
};

struct JobConfig {
    std::string name = "job";
    std::optional<Geometry> geometry;
    std::optional<std::filesystem::path> fcidump; // resolved against the job file's directory
    FragmentLayout layout;
    std::vector<double> epsilon_ladder{0.1, 0.01, 0.001, 0.0001, 0.0};
    OptimizerSettings optimizer;
    TrotterMode trotter = TrotterMode::FirstOrder;
    bool warm_start = true;
    OutputPaths output;
};

/// Parses and validates a job file. Errors are ValidationError/ParseError whose
/// message starts with the JSON pointer of the offending value.
JobConfig read_job(const std::filesystem::path& path);

/// Same, from JSON text; relative paths resolve against base_dir.
JobConfig parse_job(const std::string& json_text, const std::filesystem::path& base_dir = {});

/// Inverse of parse_job for the fields it reads (defaults written explicitly).
std::string job_to_json(const JobConfig& job);

const char* to_string(TrotterMode mode) noexcept;

} // namespace lasuscc
