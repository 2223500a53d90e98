#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "harness/config.hpp"

namespace lfi::harness {

std::string sha256_hex(const std::filesystem::path& path);

nlohmann::json config_to_json(const RunConfig& config);

/// Collects what is needed to replay a run: the config echo, seed
/// derivations, stage timings and digests of every data file.
class Manifest {
public:
    explicit Manifest(const RunConfig& config);

    void stage(const std::string& name, double seconds);
    void output(const std::filesystem::path& file);
    void set(const std::string& key, nlohmann::json value);
    void status(const std::string& status, int exit_code);

    /// Writes manifest.json into the run's output directory.
    std::filesystem::path write() const;
    [[nodiscard]] const nlohmann::json& json() const { return doc_; }

private:
    std::filesystem::path dir_;
    nlohmann::json doc_;
};

}  // namespace lfi::harness
