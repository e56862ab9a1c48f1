// config.hpp — strict JSON parameter reader with field-path error messages
#pragma once

#include <json.hpp>

#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace vibrolang::cli {

using nlohmann::json;

/// View of one JSON object. Every key read is recorded; finish() rejects the rest.
class Node {
public:
    Node(const json& value, std::string path);

    const std::string& path() const { return path_; }
    bool has(const std::string& key) const;

    double number(const std::string& key, double fallback);
    /// Accepts a number or the string "inf".
    double number_or_inf(const std::string& key, double fallback);
    int integer(const std::string& key, int fallback);
    bool boolean(const std::string& key, bool fallback);
    std::string string(const std::string& key, const std::string& fallback,
                       std::initializer_list<const char*> allowed);
    std::vector<double> numbers(const std::string& key, std::vector<double> fallback);
    /// Missing key yields an empty object.
    Node child(const std::string& key);

    void finish() const;

private:
    const json& lookup(const std::string& key, json::value_t expected, const char* what);
    std::string at(const std::string& key) const;

    const json* value_;
    std::string path_;
    std::set<std::string> used_;
};

/// Run document: {"command": ..., "params": {...}, "sweep": {"axis": ..., "values": [...]}, "seed": ...}.
struct Document {
    std::string command;
    json params = json::object();
    std::string sweep_axis;
    std::vector<json> sweep_values;
    bool has_seed{false};
    std::uint64_t seed{0};
};

Document parse_document(const std::string& text, const std::string& source);

/// Copy of params with the dotted axis replaced by value; the target must be a scalar slot.
json apply_axis(const json& params, const std::string& axis, const json& value);

}  // namespace vibrolang::cli
