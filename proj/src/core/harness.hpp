#pragma once

#include <filesystem>
#include <vector>

#include "evolution.hpp"
#include "phenotype.hpp"
#include "run_config.hpp"

namespace stylesearch {

// The deterministic generator/embedder pair a config describes.
struct World {
    SynthGenerator generator;
    LinearEmbedder embedder;
};

World build_world(const RunConfig& cfg);

// The M training latents, re-derivable from the master seed alone.
std::vector<Eigen::VectorXd> sample_dataset_latents(const RunConfig& cfg);

// Raw embeddings of the generated dataset, one row per sample.
Eigen::MatrixXd dataset_embeddings(const RunConfig& cfg, const World& world);

// Full style-model pipeline: scaler -> PCA(target ratio) -> GMM(K).
StyleModel fit_style_model(const RunConfig& cfg, const Eigen::MatrixXd& embeddings);

// Hard-assignment cluster sizes (argmax posterior per training sample).
std::vector<int> cluster_sizes(const StyleModel& model, const Eigen::MatrixXd& embeddings);

// Components the config's target selection resolves to: the top-k largest
// clusters (size desc, index asc) or the explicit list.
std::vector<int> resolve_targets(const RunConfig& cfg, const std::vector<int>& sizes);

// Fitness closure over the full generate -> embed -> posterior chain.
FitnessFn make_fitness(const StyleModel& model, const World& world, int target);

struct FitArtifacts {
    std::filesystem::path model_path;
    std::filesystem::path sizes_path;
    StyleModel model;
    std::vector<int> sizes;
};

struct EvolveArtifacts {
    std::filesystem::path stats_path;
    std::filesystem::path pgm_path;
    std::filesystem::path latent_path;
    double best_fitness = 0.0;
};

struct SweepArtifacts {
    std::filesystem::path detail_path;
    std::filesystem::path aggregate_path;
    int detail_rows = 0;
    int aggregate_rows = 0;
};

struct BaselineArtifacts {
    std::filesystem::path csv_path;
    std::filesystem::path pgm_path;
    double best_fitness = 0.0;
};

struct ExportArtifacts {
    std::vector<std::filesystem::path> pgm_paths;
    std::vector<double> posteriors;  // non-increasing, aligned with pgm_paths
};

// The CLI subcommands. Each creates out_dir if needed and writes byte-stable
// artifacts for a fixed config.
FitArtifacts run_fit(const RunConfig& cfg, const std::filesystem::path& out_dir);

EvolveArtifacts run_evolve(const RunConfig& cfg, const std::filesystem::path& model_path,
                           int target, const std::filesystem::path& out_dir);

SweepArtifacts run_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir);

BaselineArtifacts run_baseline(const RunConfig& cfg, const std::filesystem::path& model_path,
                               int target, const std::filesystem::path& out_dir);

ExportArtifacts run_export(const RunConfig& cfg, const std::filesystem::path& model_path,
                           int target, int count, const std::filesystem::path& out_dir);

} // namespace stylesearch
