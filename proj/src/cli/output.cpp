// output.cpp: CSV / JSON writers

#include "qcs/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qcs::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
    if (header.empty()) throw std::invalid_argument("CsvTable: empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvTable::add_row(std::vector<Cell> row) {
    if (row.size() != width_) throw std::invalid_argument("CsvTable: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text_ += ',';
        if (const auto* d = std::get_if<double>(&row[i])) text_ += format_number(*d);
        else if (const auto* n = std::get_if<long long>(&row[i])) text_ += std::to_string(*n);
        else text_ += std::get<std::string>(row[i]);
    }
    text_ += '\n';
    ++n_rows_;
}

OutputDir::OutputDir(const std::filesystem::path& root) : root_(root) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec || !std::filesystem::is_directory(root_)) {
        throw std::runtime_error("cannot create output directory " + root_.string());
    }
}

void OutputDir::write_text(const std::string& name, const std::string& text) {
    const auto path = root_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw std::runtime_error("failed to write " + path.string());
    written_.push_back(name);
}

void OutputDir::write_csv(const std::string& name, const CsvTable& table) {
    write_text(name, table.text());
}

void OutputDir::write_json(const std::string& name, const nlohmann::ordered_json& j) {
    write_text(name, j.dump(2) + "\n");
}

}  // namespace qcs::cli
