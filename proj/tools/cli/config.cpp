// config.cpp — strict JSON parameter reader
#include "config.hpp"

#include "vibrolang/error.hpp"
#include "vibrolang/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace vibrolang::cli {

namespace {

const char* type_name(json::value_t t) {
    switch (t) {
        case json::value_t::number_float: return "a number";
        case json::value_t::number_integer: return "an integer";
        case json::value_t::boolean: return "a boolean";
        case json::value_t::string: return "a string";
        case json::value_t::array: return "an array";
        case json::value_t::object: return "an object";
        default: return "a value";
    }
}

bool is_number(const json& v) { return v.is_number(); }

}  // namespace

Node::Node(const json& value, std::string path) : value_(&value), path_(std::move(path)) {
    if (!value.is_object()) throw ConfigError(path_ + ": expected an object");
}

std::string Node::at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

bool Node::has(const std::string& key) const { return value_->contains(key); }

const json& Node::lookup(const std::string& key, json::value_t expected, const char* what) {
    used_.insert(key);
    const json& v = (*value_)[key];
    const bool ok = expected == json::value_t::number_float ? is_number(v)
                    : expected == json::value_t::number_integer
                        ? v.is_number_integer() || v.is_number_unsigned()
                        : v.type() == expected;
    if (!ok) throw ConfigError(at(key) + ": expected " + (what ? what : type_name(expected)));
    return v;
}

double Node::number(const std::string& key, double fallback) {
    if (!has(key)) {
        used_.insert(key);
        return fallback;
    }
    const double x = lookup(key, json::value_t::number_float, nullptr).get<double>();
    if (!std::isfinite(x)) throw ConfigError(at(key) + ": expected a finite number");
    return x;
}

double Node::number_or_inf(const std::string& key, double fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = (*value_)[key];
    if (v.is_string() && v.get<std::string>() == "inf") return kInf;
    if (!v.is_number()) throw ConfigError(at(key) + ": expected a number or \"inf\"");
    return v.get<double>();
}

int Node::integer(const std::string& key, int fallback) {
    if (!has(key)) {
        used_.insert(key);
        return fallback;
    }
    const json& v = lookup(key, json::value_t::number_integer, "an integer");
    const auto x = v.get<long long>();
    if (x < -1000000000LL || x > 1000000000LL) throw ConfigError(at(key) + ": integer out of range");
    return int(x);
}

bool Node::boolean(const std::string& key, bool fallback) {
    if (!has(key)) {
        used_.insert(key);
        return fallback;
    }
    return lookup(key, json::value_t::boolean, nullptr).get<bool>();
}

std::string Node::string(const std::string& key, const std::string& fallback,
                         std::initializer_list<const char*> allowed) {
    std::string s = fallback;
    if (has(key)) s = lookup(key, json::value_t::string, nullptr).get<std::string>();
    else used_.insert(key);
    if (allowed.size() == 0) return s;
    for (const char* a : allowed)
        if (s == a) return s;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    throw ConfigError(at(key) + ": \"" + s + "\" is not one of " + list);
}

std::vector<double> Node::numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) {
        used_.insert(key);
        return fallback;
    }
    const json& v = lookup(key, json::value_t::array, "an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
            throw ConfigError(at(key) + "[" + std::to_string(i) + "]: expected a finite number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

Node Node::child(const std::string& key) {
    static const json empty = json::object();
    if (!has(key)) {
        used_.insert(key);
        return Node(empty, at(key));
    }
    return Node(lookup(key, json::value_t::object, nullptr), at(key));
}

void Node::finish() const {
    for (const auto& item : value_->items())
        if (!used_.count(item.key())) throw ConfigError(at(item.key()) + ": unknown key");
}

Document parse_document(const std::string& text, const std::string& source) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": malformed JSON: " + e.what());
    }
    if (!root.is_object()) throw ConfigError(source + ": top level must be an object");
    Document doc;
    for (const auto& item : root.items()) {
        const std::string& k = item.key();
        const json& v = item.value();
        if (k == "command") {
            if (!v.is_string()) throw ConfigError("command: expected a string");
            doc.command = v.get<std::string>();
        } else if (k == "params") {
            if (!v.is_object()) throw ConfigError("params: expected an object");
            doc.params = v;
        } else if (k == "seed") {
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                throw ConfigError("seed: expected a non-negative integer");
            doc.has_seed = true;
            doc.seed = v.get<std::uint64_t>();
        } else if (k == "sweep") {
            if (!v.is_object()) throw ConfigError("sweep: expected an object");
            for (const auto& s : v.items()) {
                if (s.key() == "axis") {
                    if (!s.value().is_string() || s.value().get<std::string>().empty())
                        throw ConfigError("sweep.axis: expected a non-empty string");
                    doc.sweep_axis = s.value().get<std::string>();
                } else if (s.key() == "values") {
                    if (!s.value().is_array() || s.value().empty())
                        throw ConfigError("sweep.values: expected a non-empty array");
                    for (std::size_t i = 0; i < s.value().size(); ++i) {
                        const json& x = s.value()[i];
                        if (!x.is_primitive() || x.is_null())
                            throw ConfigError("sweep.values[" + std::to_string(i) + "]: expected a scalar");
                        doc.sweep_values.push_back(x);
                    }
                } else {
                    throw ConfigError("sweep." + s.key() + ": unknown key");
                }
            }
            if (doc.sweep_axis.empty()) throw ConfigError("sweep.axis: missing");
            if (doc.sweep_values.empty()) throw ConfigError("sweep.values: missing");
        } else {
            throw ConfigError(k + ": unknown key");
        }
    }
    return doc;
}

json apply_axis(const json& params, const std::string& axis, const json& value) {
    json out = params;
    json* node = &out;
    std::string path = "params";
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = axis.find('.', start);
        const std::string key = axis.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigError("sweep.axis: empty component in \"" + axis + "\"");
        path += "." + key;
        if (dot == std::string::npos) {
            if (node->contains(key) && !(*node)[key].is_primitive())
                throw ConfigError("sweep.axis: " + path + " is not a scalar parameter");
            (*node)[key] = value;
            return out;
        }
        if (!node->contains(key)) (*node)[key] = json::object();
        node = &(*node)[key];
        if (!node->is_object()) throw ConfigError("sweep.axis: " + path + " is not an object");
        start = dot + 1;
    }
}

}  // namespace vibrolang::cli
