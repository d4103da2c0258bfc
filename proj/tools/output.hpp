#pragma once

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace tpc::cli {

/// Round-trip decimal form (17 significant digits).
[[nodiscard]] std::string format_number(double v);

class CsvBuilder {
public:
    using Cell = std::variant<double, std::size_t, std::string>;

    explicit CsvBuilder(std::vector<std::string> columns);

    void row(const std::vector<Cell>& cells);
    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] const std::string& text() const noexcept { return text_; }

private:
    std::vector<std::string> columns_;
    std::string text_;
    std::size_t rows_ = 0;
};

/// Writes to a temporary file next to `path`, then renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// CSV plus `<path>.json` sidecar holding the resolved configuration and extra results.
void write_table(const std::filesystem::path& path, const CsvBuilder& csv, const nlohmann::json& config,
                 const nlohmann::json& results = nlohmann::json::object());

}  // namespace tpc::cli
