#include "mfiv/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mfiv {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write_file_atomic: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "nan" || cell == "NaN";
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& col) {
    double value{};
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::runtime_error("load_csv: malformed numeric cell at row " +
                                 std::to_string(row) + ", column " + col + ": '" + cell + "'");
    return value;
}

double maybe_log(double value, bool take_log, std::size_t row, const std::string& col) {
    if (!take_log) return value;
    if (!(value > 0.0))
        throw std::runtime_error("load_csv: non-positive value under log transform at row " +
                                 std::to_string(row) + ", column " + col);
    return std::log(value);
}

}  // namespace

EmpiricalDataset load_csv(const std::string& path, const SchemaConfig& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_csv: empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_csv_line(line);

    int date_idx = -1, y_idx = -1, w_idx = -1;
    std::vector<int> z_idx;  // ordered by the z_1..z_m suffix
    std::vector<std::pair<int, int>> z_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string& name = header[c];
        if (name == schema.date_col) date_idx = static_cast<int>(c);
        else if (name == schema.y_col) y_idx = static_cast<int>(c);
        else if (name == schema.w_col) w_idx = static_cast<int>(c);
        else if (name.rfind(schema.z_prefix, 0) == 0) {
            const std::string suffix = name.substr(schema.z_prefix.size());
            int k{};
            auto [ptr, ec] = std::from_chars(suffix.data(), suffix.data() + suffix.size(), k);
            if (ec == std::errc{} && ptr == suffix.data() + suffix.size())
                z_cols.emplace_back(k, static_cast<int>(c));
        }
    }
    if (date_idx < 0 || y_idx < 0 || w_idx < 0 || z_cols.empty())
        throw std::runtime_error("load_csv: header must contain columns '" + schema.date_col +
                                 "', '" + schema.y_col + "', '" + schema.w_col + "', and '" +
                                 schema.z_prefix + "1'...");
    std::sort(z_cols.begin(), z_cols.end());
    for (std::size_t k = 0; k < z_cols.size(); ++k) {
        if (z_cols[k].first != static_cast<int>(k) + 1)
            throw std::runtime_error("load_csv: z columns are not contiguous " +
                                     schema.z_prefix + "1.." + schema.z_prefix +
                                     std::to_string(z_cols.size()));
        z_idx.push_back(z_cols[k].second);
    }
    const int m = static_cast<int>(z_idx.size());

    EmpiricalDataset data{{}, {}, {}, Eigen::MatrixXd(),
                          SamplingGrid::uniform(m, schema.grid_a, schema.grid_b), 0};
    std::vector<Eigen::VectorXd> z_rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("load_csv: ragged row " + std::to_string(row) + " (" +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()) + ")");
        bool missing = is_missing(cells[y_idx]) || is_missing(cells[w_idx]);
        for (int j = 0; j < m && !missing; ++j) missing = is_missing(cells[z_idx[j]]);
        if (missing) {
            if (schema.missing == MissingPolicy::DropRow) {
                ++data.dropped_rows;
                continue;
            }
            throw std::runtime_error("load_csv: missing value at row " + std::to_string(row));
        }
        data.dates.push_back(cells[date_idx]);
        data.y.push_back(
            maybe_log(parse_cell(cells[y_idx], row, schema.y_col), schema.log_y, row,
                      schema.y_col));
        data.w.push_back(parse_cell(cells[w_idx], row, schema.w_col));
        Eigen::VectorXd zr(m);
        for (int j = 0; j < m; ++j) {
            const std::string col = schema.z_prefix + std::to_string(j + 1);
            zr[j] = maybe_log(parse_cell(cells[z_idx[j]], row, col), schema.log_z, row, col);
        }
        z_rows.push_back(std::move(zr));
    }
    if (z_rows.empty()) throw std::runtime_error("load_csv: no data rows in " + path);

    data.z.resize(static_cast<int>(z_rows.size()), m);
    for (std::size_t t = 0; t < z_rows.size(); ++t)
        data.z.row(static_cast<int>(t)) = z_rows[t];
    return data;
}

void export_sample_csv(const std::string& path, const SimulatedSample& sample) {
    const int m = sample.grid.size();
    std::string out;
    out += "date,y,w";
    for (int j = 1; j <= m; ++j) out += ",z_" + std::to_string(j);
    out += "\n";
    for (std::size_t t = 0; t < sample.y.size(); ++t) {
        out += std::to_string(t + 1);
        out += ',';
        out += format_double(sample.y[t]);
        out += ',';
        out += format_double(sample.w[t]);
        for (int j = 0; j < m; ++j) {
            out += ',';
            out += format_double(sample.z(static_cast<int>(t), j));
        }
        out += "\n";
    }
    write_file_atomic(path, out);
}

SimulatedSample dataset_to_sample(const EmpiricalDataset& data) {
    const int t_count = static_cast<int>(data.y.size());
    const int m = data.grid.size();
    return SimulatedSample{data.y,
                           data.w,
                           data.z,
                           Eigen::MatrixXd::Zero(t_count, m),
                           std::vector<double>(t_count, 0.0),
                           data.grid};
}

}  // namespace mfiv
