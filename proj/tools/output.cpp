#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace tpc::cli {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvBuilder::CsvBuilder(std::vector<std::string> columns) : columns_(std::move(columns)) {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        text_ += (i ? "," : "") + columns_[i];
    }
    text_ += '\n';
}

void CsvBuilder::row(const std::vector<Cell>& cells) {
    if (cells.size() != columns_.size()) {
        throw std::logic_error("CSV row width does not match the header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        std::visit(
            [this](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>) {
                    text_ += format_number(v);
                } else if constexpr (std::is_same_v<T, std::size_t>) {
                    text_ += std::to_string(v);
                } else {
                    text_ += v;
                }
            },
            cells[i]);
    }
    text_ += '\n';
    ++rows_;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move output into place: " + path.string() + ": " + ec.message());
    }
}

void write_table(const std::filesystem::path& path, const CsvBuilder& csv, const nlohmann::json& config,
                 const nlohmann::json& results) {
    write_atomic(path, csv.text());
    nlohmann::json meta;
    meta["file"] = path.filename().string();
    meta["columns"] = csv.columns();
    meta["rows"] = csv.rows();
    meta["config"] = config;
    meta["results"] = results;
    std::filesystem::path side = path;
    side += ".json";
    write_atomic(side, meta.dump(2) + "\n");
}

}  // namespace tpc::cli
