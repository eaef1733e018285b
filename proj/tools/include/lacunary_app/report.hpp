#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lacunary/error.hpp"
#include "lacunary_app/run_spec.hpp"

namespace lacunary::app {

using Cell = std::variant<std::monostate, bool, long long, double, std::string>;

struct ReportRow {
    std::vector<std::pair<std::string, Cell>> cells;

    ReportRow& set(std::string key, Cell value) {
        cells.emplace_back(std::move(key), std::move(value));
        return *this;
    }
};

struct Report {
    std::string tool = "lacunary";
    std::string version;
    std::string command;
    std::string spec_echo;
    ToleranceConfig config;
    std::optional<nlohmann::ordered_json> schedule;
    std::vector<ReportRow> rows;
    std::vector<std::string> warnings;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

const char* tool_version() noexcept;

/// Fatal errors abort; per-row module errors land in the row's `error` column.
Report execute(const RunSpec& spec);

std::string render_json(const Report& report);
std::string render_csv(const Report& report);
std::string render_text(const Report& report);
std::string render(const Report& report, OutputFormat format);

/// Throws ErrorKind::Io when the path cannot be written.
void write_report(const Report& report, OutputFormat format, const std::string& path);
/// Tag-based overload; unsupported tags are a Parameter error.
void write_report(const Report& report, const std::string& format, const std::string& path);

/// 0 success, 2 spec/validation, 3 runtime/range, 4 I/O.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace lacunary::app
