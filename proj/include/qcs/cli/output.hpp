// output.hpp: Deterministic CSV / JSON writers
//
// Numbers are written with 12 significant digits; rows end in LF.

#pragma once

#include <json.hpp>

#include <filesystem>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace qcs::cli {

std::string format_number(double v);

using Cell = std::variant<double, long long, std::string>;

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    // Throws std::invalid_argument when the row width differs from the header.
    void add_row(std::vector<Cell> row);
    std::size_t rows() const { return n_rows_; }
    const std::string& text() const { return text_; }

private:
    std::size_t width_;
    std::size_t n_rows_{0};
    std::string text_;
};

// Creates the directory tree if needed; throws std::runtime_error on failure.
class OutputDir {
public:
    explicit OutputDir(const std::filesystem::path& root);

    const std::filesystem::path& root() const { return root_; }
    // Each writer records the file name so commands can list their outputs.
    void write_csv(const std::string& name, const CsvTable& table);
    void write_json(const std::string& name, const nlohmann::ordered_json& j);
    const std::vector<std::string>& written() const { return written_; }

private:
    void write_text(const std::string& name, const std::string& text);

    std::filesystem::path root_;
    std::vector<std::string> written_;
};

}  // namespace qcs::cli
