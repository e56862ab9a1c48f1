// output.hpp — result tables, CSV/SVG rendering and the artifact manifest
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace vibrolang::cli {

struct Table {
    std::string name;                       // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // column-major, all columns equally long
    std::string title;
    bool log_y{false};

    std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
    void add(std::string column, std::vector<double> values);
};

/// Everything one run produces before anything touches the disk.
struct RunOutput {
    std::vector<Table> tables;
    nlohmann::json summary = nlohmann::json::object();
};

std::string format_value(double x);
std::string to_csv(const Table& t);
/// Inverse of to_csv; throws ConfigError on schema mismatch.
Table parse_csv(const std::string& text, const std::string& name);
std::string to_svg(const Table& t);
std::string sha256_hex(const std::string& bytes);

struct EmittedFile {
    std::string path;  // relative to the output directory
    std::size_t rows{0};
    std::string sha256;
};

/// Writes CSV (and SVG) plus a JSON sidecar for one run into dir/prefix.
std::vector<EmittedFile> write_run(const std::string& dir, const std::string& prefix, const RunOutput& out,
                                   bool svg);

}  // namespace vibrolang::cli
