// output.cpp — CSV, SVG and checksummed file emission
#include "output.hpp"

#include "vibrolang/error.hpp"

#include <fmt/core.h>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vibrolang::cli {

namespace fs = std::filesystem;

void Table::add(std::string column, std::vector<double> values) {
    if (!data.empty() && values.size() != rows())
        throw std::logic_error("table " + name + ": column " + column + " has the wrong length");
    columns.push_back(std::move(column));
    data.push_back(std::move(values));
}

std::string format_value(double x) { return fmt::format("{:.12e}", x); }

std::string to_csv(const Table& t) {
    std::string s;
    for (std::size_t c = 0; c < t.columns.size(); ++c) s += (c ? "," : "") + t.columns[c];
    s += '\n';
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t c = 0; c < t.data.size(); ++c) {
            if (c) s += ',';
            s += format_value(t.data[c][r]);
        }
        s += '\n';
    }
    return s;
}

Table parse_csv(const std::string& text, const std::string& name) {
    Table t;
    t.name = name;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(name + ": empty CSV");
    std::istringstream header(line);
    for (std::string col; std::getline(header, col, ',');) t.columns.push_back(col);
    t.data.assign(t.columns.size(), {});
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        std::istringstream cells(line);
        std::size_t c = 0;
        for (std::string cell; std::getline(cells, cell, ','); ++c) {
            if (c >= t.columns.size()) throw ConfigError(fmt::format("{}:{}: too many fields", name, row));
            std::size_t used = 0;
            double x = 0.0;
            try {
                x = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size() || cell.empty())
                throw ConfigError(fmt::format("{}:{}: not a number: \"{}\"", name, row, cell));
            t.data[c].push_back(x);
        }
        if (c != t.columns.size()) throw ConfigError(fmt::format("{}:{}: expected {} fields", name, row, t.columns.size()));
    }
    return t;
}

namespace {

constexpr double kWidth = 720.0, kHeight = 440.0;
constexpr double kLeft = 80.0, kRight = 160.0, kTop = 36.0, kBottom = 52.0;
constexpr std::array<const char*, 8> kColours{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '<') out += "&lt;";
        else if (ch == '>') out += "&gt;";
        else if (ch == '&') out += "&amp;";
        else out += ch;
    }
    return out;
}

}  // namespace

std::string to_svg(const Table& t) {
    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        kWidth, kHeight);
    if (t.rows() < 2 || t.data.size() < 2) return s + "</svg>\n";

    const auto& x = t.data[0];
    const double x0 = *std::min_element(x.begin(), x.end()), x1 = *std::max_element(x.begin(), x.end());
    auto ty = [&](double v) { return t.log_y ? (v > 0.0 ? std::log10(v) : NAN) : v; };
    double y0 = INFINITY, y1 = -INFINITY;
    for (std::size_t c = 1; c < t.data.size(); ++c)
        for (double v : t.data[c])
            if (std::isfinite(ty(v))) {
                y0 = std::min(y0, ty(v));
                y1 = std::max(y1, ty(v));
            }
    if (!std::isfinite(y0)) return s + "</svg>\n";
    if (t.log_y) y0 = std::max(y0, y1 - 12.0);
    if (y1 - y0 < 1e-300) y1 = y0 + 1.0;
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (x1 > x0 ? (v - x0) / (x1 - x0) : 0.5) * pw; };
    auto py = [&](double v) { return kTop + (1.0 - (std::clamp(v, y0, y1) - y0) / (y1 - y0)) * ph; };

    s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                     kTop, pw, ph);
    s += fmt::format("<text x=\"{}\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n", kLeft,
                     escape(t.title.empty() ? t.name : t.title));
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4.0, yv = y0 + (y1 - y0) * i / 4.0;
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" "
                         "text-anchor=\"middle\">{:.3g}</text>\n",
                         px(xv), kHeight - kBottom + 16.0, xv);
        const std::string label = t.log_y ? fmt::format("1e{:.1f}", yv) : fmt::format("{:.3g}", yv);
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" "
                         "text-anchor=\"end\">{}</text>\n",
                         kLeft - 6.0, py(yv) + 4.0, label);
    }
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\" "
                     "text-anchor=\"middle\">{}</text>\n",
                     kLeft + pw / 2.0, kHeight - 12.0, escape(t.columns[0]));

    for (std::size_t c = 1; c < t.data.size(); ++c) {
        const char* colour = kColours[(c - 1) % kColours.size()];
        std::string pts;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            const double v = ty(t.data[c][r]);
            if (!std::isfinite(v)) continue;
            pts += fmt::format("{:.2f},{:.2f} ", px(x[r]), py(v));
        }
        s += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.3\" points=\"{}\"/>\n", colour, pts);
        const double ly = kTop + 14.0 * double(c);
        s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                         kWidth - kRight + 10.0, ly, kWidth - kRight + 30.0, colour);
        s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                         kWidth - kRight + 34.0, ly + 4.0, escape(t.columns[c]));
    }
    return s + "</svg>\n";
}

std::string sha256_hex(const std::string& bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
    return hex;
}

namespace {

EmittedFile emit(const fs::path& dir, const std::string& rel, const std::string& bytes, std::size_t rows) {
    const fs::path p = dir / rel;
    fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    f << bytes;
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return {rel, rows, sha256_hex(bytes)};
}

}  // namespace

std::vector<EmittedFile> write_run(const std::string& dir, const std::string& prefix, const RunOutput& out,
                                   bool svg) {
    std::vector<EmittedFile> files;
    const std::string base = prefix.empty() ? "" : prefix + "/";
    for (const auto& t : out.tables) {
        files.push_back(emit(dir, base + t.name + ".csv", to_csv(t), t.rows()));
        if (svg) files.push_back(emit(dir, base + t.name + ".svg", to_svg(t), 0));
    }
    files.push_back(emit(dir, base + "summary.json", out.summary.dump(2) + "\n", 0));
    return files;
}

}  // namespace vibrolang::cli
