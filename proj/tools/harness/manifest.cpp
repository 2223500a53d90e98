#include "harness/manifest.hpp"

#include <array>
#include <fstream>
#include <memory>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "lfi/error.hpp"
#include "lfi/simulator.hpp"

#ifndef LFI_VERSION
#define LFI_VERSION "unknown"
#endif

namespace lfi::harness {

std::string sha256_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string() + " for hashing");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buffer{};
    while (in) {
        in.read(buffer.data(), buffer.size());
        EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
    std::string hex;
    for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

nlohmann::json config_to_json(const RunConfig& c) {
    return {
        {"sample_size", c.sample_size},
        {"observed_seed", c.observed_seed},
        {"bounds_lo", c.bounds_lo},
        {"bounds_hi", c.bounds_hi},
        {"n_folds", c.n_folds},
        {"lambda_scale", c.lambda_scale},
        {"grid_lo", c.grid.lo},
        {"grid_hi", c.grid.hi},
        {"grid_step", c.grid.step},
        {"repetitions", c.repetitions},
        {"abc_samples", c.abc_samples},
        {"epsilon", c.epsilon},
        {"max_proposals", c.max_proposals},
        {"bo_acquisitions", c.bo_acquisitions},
        {"initial_design", c.initial_design},
        {"beta_schedule", c.beta_schedule},
        {"beta_constant", c.beta_constant},
        {"candidate_grid", c.candidate_grid},
        {"eval_grid", c.eval_grid},
        {"prior_mean", c.prior_mean},
        {"snapshot_steps", c.snapshot_steps},
        {"target_radius", c.target_radius},
    };
}

Manifest::Manifest(const RunConfig& config) : dir_(config.out_dir) {
    doc_["schema"] = "lfi-kit/v1";
    doc_["artifact_version"] = LFI_VERSION;
    doc_["command"] = std::string(command_name(config.command));
    doc_["seed"] = config.seed;
    doc_["threads"] = config.threads;
    doc_["config"] = config_to_json(config);
    doc_["seed_derivations"] = {
        {"observed_data", fmt::format("RngSeed{{seed={}, stream_id=0}}", config.observed_seed)},
        {"root", fmt::format("RngSeed{{seed={}, stream_id=0}}", config.seed)},
        {"curve_point_i", "root.derive(kGridPoint=9, i); simulation .derive(kSimulate=1), folds .derive(kFolds=2)"},
        {"dist_point_i_rep_r", "root.derive(kGridPoint=9, i).derive(kRepetition=8, r)"},
        {"abc_proposal_i", "theta from root.derive(kProposal=3, i); discrepancy from root.derive(kEvaluation=4, i)"},
        {"bolfi_step_k", "initial design point i from root.derive(kInitialDesign=5, i); evaluation root.derive(kEvaluation=4, k); "
                         "candidate jitter root.derive(kAcquisition=7).derive(kCandidates=6, k)"},
        {"budget_abc_root", "root.derive(kRepetition=8, 1) used as the ABC root"},
    };
    doc_["stages"] = nlohmann::json::object();
    doc_["outputs"] = nlohmann::json::array();
}

void Manifest::stage(const std::string& name, double seconds) { doc_["stages"][name] = seconds; }

void Manifest::output(const std::filesystem::path& file) {
    doc_["outputs"].push_back({{"file", file.filename().string()},
                               {"bytes", std::filesystem::file_size(file)},
                               {"sha256", sha256_hex(file)}});
}

void Manifest::set(const std::string& key, nlohmann::json value) { doc_[key] = std::move(value); }

void Manifest::status(const std::string& status, int exit_code) {
    doc_["status"] = status;
    doc_["exit_code"] = exit_code;
}

std::filesystem::path Manifest::write() const {
    const auto path = dir_ / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << doc_.dump(2) << '\n';
    return path;
}

}  // namespace lfi::harness
