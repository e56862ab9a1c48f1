// main.cpp — vibrolang command line entry point
#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "presets.hpp"

#include "vibrolang/error.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

namespace {

using namespace vibrolang;
using namespace vibrolang::cli;
using nlohmann::json;

constexpr int kOk = 0, kNumeric = 1, kConfig = 2;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError(path + ": cannot read config");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

int parse_threads(const std::optional<int>& flag) {
    if (flag) {
        if (*flag < 1) throw ConfigError("--threads: must be >= 1");
        return *flag;
    }
    const char* env = std::getenv("VIBROLANG_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024) throw ConfigError("VIBROLANG_THREADS: expected an integer in 1..1024");
    return int(n);
}

bool is_run_command(const std::string& c) {
    const auto& names = command_names();
    return std::find(names.begin(), names.end(), c) != names.end();
}

std::vector<RunOutput> execute(const std::vector<Job>& jobs, int threads) {
    std::vector<RunOutput> results(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                results[i] = jobs[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads, int(jobs.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vibrolang: vibrational relaxation, vibronic spectra and cavity transmission"};
    std::string command, preset_name, config_path, out_dir = "vibrolang-out", format = "csv";
    std::optional<std::uint64_t> seed_flag;
    std::optional<int> threads_flag;
    app.add_option("command", command,
                   "relaxation | collective | absorption | phonon-wing | cavity | polariton | preset | sweep")
        ->required();
    app.add_option("name", preset_name, "preset name (preset command; 'list' prints the names)");
    app.add_option("--config", config_path, "JSON run document");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "csv or csv+svg")->check(CLI::IsMember({"csv", "csv+svg"}));
    app.add_option("--seed", seed_flag, "seed for thermal phonon sampling");
    app.add_option("--threads", threads_flag, "worker threads for sweeps (fallback: VIBROLANG_THREADS)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    Document doc;
    std::vector<Job> jobs;
    std::vector<json> point_params;
    std::uint64_t seed = 0;
    int threads = 1;
    try {
        if (command == "preset") {
            if (preset_name == "list") {
                for (const auto& [name, text] : presets()) fmt::print("{}\n", name);
                return kOk;
            }
            if (!config_path.empty()) throw ConfigError("--config: not used by the preset command");
            const auto it = presets().find(preset_name);
            if (it == presets().end()) throw ConfigError("preset: unknown name \"" + preset_name + "\"");
            doc = parse_document(it->second, "preset " + preset_name);
        } else {
            if (!preset_name.empty()) throw ConfigError("unexpected argument \"" + preset_name + "\"");
            if (config_path.empty()) throw ConfigError("--config: required for " + command);
            doc = parse_document(read_file(config_path), config_path);
            if (command == "sweep") {
                if (doc.sweep_axis.empty()) throw ConfigError("sweep: missing in " + config_path);
            } else {
                if (!is_run_command(command)) throw ConfigError("unknown command \"" + command + "\"");
                if (!doc.sweep_axis.empty()) throw ConfigError("sweep: only valid with the sweep command");
                if (!doc.command.empty() && doc.command != command)
                    throw ConfigError("command: document is for \"" + doc.command + "\", not \"" + command + "\"");
                doc.command = command;
            }
        }
        if (!is_run_command(doc.command)) throw ConfigError("command: unknown or missing \"" + doc.command + "\"");
        seed = seed_flag.value_or(doc.has_seed ? doc.seed : 0);
        threads = parse_threads(threads_flag);
        if (doc.sweep_axis.empty()) {
            point_params.push_back(doc.params);
        } else {
            for (const auto& v : doc.sweep_values) point_params.push_back(apply_axis(doc.params, doc.sweep_axis, v));
        }
        for (const auto& p : point_params) jobs.push_back(prepare(doc.command, p, seed));
    } catch (const std::invalid_argument& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kConfig;
    }

    std::vector<RunOutput> results;
    try {
        results = execute(jobs, threads);
    } catch (const std::invalid_argument& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kConfig;
    } catch (const std::exception& e) {
        fmt::print(stderr, "numeric error: {}\n", e.what());
        return kNumeric;
    }

    try {
        const bool svg = format == "csv+svg";
        json files = json::array();
        json points = json::array();
        const bool sweep = !doc.sweep_axis.empty();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const std::string prefix = sweep ? fmt::format("point_{:03d}", i) : "";
            for (const auto& f : write_run(out_dir, prefix, results[i], svg))
                files.push_back({{"file", f.path}, {"rows", f.rows}, {"sha256", f.sha256}});
            if (sweep) points.push_back({{"dir", prefix}, {"value", doc.sweep_values[i]}, {"params", point_params[i]}});
        }
        json manifest = {{"command", doc.command}, {"seed", seed}, {"format", format}, {"params", doc.params}};
        if (command == "preset") manifest["preset"] = preset_name;
        if (sweep) manifest["sweep"] = {{"axis", doc.sweep_axis}, {"points", points}};
        manifest["files"] = files;
        std::ofstream m(std::filesystem::path(out_dir) / "manifest.json", std::ios::binary);
        m << manifest.dump(2) << "\n";
        if (!m) throw std::runtime_error("cannot write manifest");
        fmt::print("{} files written to {}\n", files.size() + 1, out_dir);
    } catch (const std::exception& e) {
        fmt::print(stderr, "output error: {}\n", e.what());
        return kNumeric;
    }
    return kOk;
}
