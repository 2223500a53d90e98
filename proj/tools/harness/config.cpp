#include "harness/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include <yaml-cpp/yaml.h>

namespace lfi::harness {

namespace {

std::string with_line(const std::string& message, std::size_t line, const std::string& source) {
    if (source.empty()) return line == 0 ? message : "line " + std::to_string(line) + ": " + message;
    return source + (line == 0 ? "" : ":" + std::to_string(line)) + ": " + message;
}

template <typename T>
T read_scalar(const YAML::Node& node, const std::string& key) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("key '" + key + "' has a value of the wrong type",
                          static_cast<std::size_t>(node.Mark().line + 1));
    }
}

std::size_t read_count(const YAML::Node& node, const std::string& key) {
    const auto v = read_scalar<long long>(node, key);
    if (v < 0) throw ConfigError("key '" + key + "' must be non-negative", static_cast<std::size_t>(node.Mark().line + 1));
    return static_cast<std::size_t>(v);
}

using Setter = std::function<void(RunConfig&, const YAML::Node&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"sample_size", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.sample_size = read_count(n, k); }},
        {"observed_seed", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.observed_seed = read_scalar<std::uint64_t>(n, k); }},
        {"bounds_lo", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.bounds_lo = read_scalar<double>(n, k); }},
        {"bounds_hi", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.bounds_hi = read_scalar<double>(n, k); }},
        {"n_folds", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.n_folds = read_count(n, k); }},
        {"lambda_scale", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.lambda_scale = read_scalar<double>(n, k); }},
        {"grid_lo", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.grid.lo = read_scalar<double>(n, k); }},
        {"grid_hi", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.grid.hi = read_scalar<double>(n, k); }},
        {"grid_step", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.grid.step = read_scalar<double>(n, k); }},
        {"repetitions", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.repetitions = read_count(n, k); }},
        {"abc_samples", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.abc_samples = read_count(n, k); }},
        {"epsilon", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.epsilon = read_scalar<double>(n, k); }},
        {"max_proposals", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.max_proposals = read_count(n, k); }},
        {"bo_acquisitions", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.bo_acquisitions = read_count(n, k); }},
        {"initial_design", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.initial_design = read_count(n, k); }},
        {"beta_schedule", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.beta_schedule = read_scalar<std::string>(n, k); }},
        {"beta_constant", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.beta_constant = read_scalar<double>(n, k); }},
        {"candidate_grid", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.candidate_grid = read_count(n, k); }},
        {"eval_grid", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.eval_grid = read_count(n, k); }},
        {"prior_mean", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.prior_mean = read_scalar<double>(n, k); }},
        {"snapshot_steps",
         [](RunConfig& c, const YAML::Node& n, const std::string& k) {
             if (!n.IsSequence()) {
                 throw ConfigError("key '" + k + "' must be a list", static_cast<std::size_t>(n.Mark().line + 1));
             }
             c.snapshot_steps.clear();
             for (const auto& item : n) c.snapshot_steps.push_back(read_count(item, k));
         }},
        {"target_radius", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.target_radius = read_scalar<double>(n, k); }},
    };
    return table;
}

void apply_node(RunConfig& config, const YAML::Node& root) {
    if (root.IsNull()) return;
    if (!root.IsMap()) throw ConfigError("config must be a mapping of keys to values", static_cast<std::size_t>(root.Mark().line + 1));
    for (const auto& entry : root) {
        const auto key = entry.first.as<std::string>();
        const auto line = static_cast<std::size_t>(entry.first.Mark().line + 1);
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line);
        if (entry.second.IsNull()) throw ConfigError("key '" + key + "' has no value", line);
        it->second(config, entry.second, key);
    }
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::size_t line, const std::string& source)
    : Error(with_line(message, line, source)), message_(message), line_(line) {}

std::string_view command_name(Command command) {
    switch (command) {
        case Command::kCurve: return "curve";
        case Command::kDist: return "dist";
        case Command::kAbc: return "abc";
        case Command::kBolfi: return "bolfi";
        case Command::kBudget: return "budget";
    }
    return "unknown";
}

std::vector<double> ThetaGrid::values() const {
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(lo + step * static_cast<double>(i));
    return out;
}

void RunConfig::validate() const {
    if (sample_size < 2) throw ConfigError("sample_size must be >= 2");
    if (!(bounds_lo < bounds_hi) || !std::isfinite(bounds_lo) || !std::isfinite(bounds_hi)) {
        throw ConfigError("bounds_lo must be below bounds_hi");
    }
    if (n_folds < 2) throw ConfigError("n_folds must be >= 2");
    if (sample_size < n_folds) throw ConfigError("sample_size must be >= n_folds");
    if (!(lambda_scale >= 0.0)) throw ConfigError("lambda_scale must be >= 0");
    if (!(grid.step > 0.0) || !(grid.lo <= grid.hi) || !std::isfinite(grid.lo) || !std::isfinite(grid.hi)) {
        throw ConfigError("grid must satisfy grid_lo <= grid_hi and grid_step > 0");
    }
    if (grid.values().size() > 100000) throw ConfigError("grid has more than 100000 points");
    if (repetitions < 2) throw ConfigError("repetitions must be >= 2");
    if (abc_samples < 1) throw ConfigError("abc_samples must be >= 1");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
    if (max_proposals < abc_samples) throw ConfigError("max_proposals must be >= abc_samples");
    if (initial_design < 1) throw ConfigError("initial_design must be >= 1");
    if (bo_acquisitions < initial_design) throw ConfigError("bo_acquisitions must be >= initial_design");
    if (beta_schedule != "gp-ucb" && beta_schedule != "constant") {
        throw ConfigError("beta_schedule must be 'gp-ucb' or 'constant'");
    }
    if (!(beta_constant >= 0.0)) throw ConfigError("beta_constant must be >= 0");
    if (candidate_grid < 100) throw ConfigError("candidate_grid must be >= 100");
    if (eval_grid < 2) throw ConfigError("eval_grid must be >= 2");
    if (!std::isfinite(prior_mean)) throw ConfigError("prior_mean must be finite");
    if (!(target_radius > 0.0)) throw ConfigError("target_radius must be > 0");
}

RunConfig default_config(Command command) {
    RunConfig config;
    config.command = command;
    config.sample_size = (command == Command::kCurve || command == Command::kAbc) ? 10000 : 50;
    return config;
}

void apply_config_text(RunConfig& config, std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError("malformed YAML: " + e.msg, static_cast<std::size_t>(e.mark.line + 1));
    }
    apply_node(config, root);
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        apply_config_text(config, buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(e.message(), e.line(), path.string());
    }
}

void apply_override(RunConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
    }
    const std::string key(assignment.substr(0, eq));
    const std::string value(assignment.substr(eq + 1));
    try {
        apply_config_text(config, key + ": " + value);
    } catch (const ConfigError& e) {
        throw ConfigError(e.message(), 0, "--set " + std::string(assignment));
    }
}

std::size_t thread_count_from_env() {
    if (const char* env = std::getenv("LFI_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw ConfigError("LFI_THREADS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace lfi::harness
