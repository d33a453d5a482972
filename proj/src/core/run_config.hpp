#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "evolution.hpp"
#include "gmm.hpp"

namespace stylesearch {

// How the harness picks style components to work on when none is given
// explicitly: either the k largest clusters by hard-assignment size, or a
// fixed index list.
struct TargetSelection {
    enum class Mode { TopK, Explicit };
    Mode mode = Mode::TopK;
    int top_k = 5;
    std::vector<int> indices;
};

// Everything a pipeline run needs, parsed from a flat `key = value` file
// ('#' comments). Defaults describe the small built-in world.
struct RunConfig {
    // synthetic world
    std::uint64_t generator_seed = 1001;
    std::uint64_t embedder_seed = 2002;
    int latent_dim = 16;
    int hidden_dim = 32;
    int height = 16;
    int width = 16;
    int embed_dim = 64;

    // dataset and style model
    int dataset_size = 2000;
    double pca_target_ratio = 0.9;
    GmmConfig gmm;  // gmm.seed is derived from `seed` at fit time

    // evolution defaults, possibly overridden per sweep cell
    EvolutionConfig evolution;

    // run
    std::uint64_t seed = 42;  // master seed; every stage stream derives from it
    TargetSelection targets;
    std::string out_dir = "out";
    int export_count = 3;

    // sweep grid
    std::vector<double> sweep_p_cx = {0.7, 0.9};
    std::vector<double> sweep_p_mut = {0.2, 0.5};
    std::vector<int> sweep_n_pop = {50, 100};
    std::vector<int> sweep_n_ts = {3, 6};
    int sweep_runs = 1;
};

RunConfig load_run_config(const std::filesystem::path& path);

// Parses config text (as found in a file); `origin` names the source in
// error messages.
RunConfig parse_run_config(const std::string& text, const std::string& origin);

// Cross-field checks (dimensional chain, dataset_size >= K, grid non-empty).
void validate_run_config(const RunConfig& cfg);

} // namespace stylesearch
