#pragma once

#include <cstdint>
#include <filesystem>

#include <Eigen/Dense>

#include "embedding.hpp"
#include "gmm.hpp"

namespace stylesearch {

// Generated design: an H x W grid with every pixel strictly inside (-1, 1).
struct Phenotype {
    int height = 0;
    int width = 0;
    Eigen::MatrixXd pixels;
};

// Two-layer tanh network mapping latent vectors to pixel grids. Weights are a
// pure function of (seed, dims): entries are seeded standard normals scaled
// by 1/sqrt(fan_in), drawn in the order w1 row-major, b1, w2 row-major, b2.
struct SynthGenerator {
    std::uint64_t seed = 0;
    int latent_dim = 0;
    int hidden_dim = 0;
    int height = 0;
    int width = 0;
    Eigen::MatrixXd w1;  // hidden_dim x latent_dim
    Eigen::VectorXd b1;
    Eigen::MatrixXd w2;  // (height*width) x hidden_dim
    Eigen::VectorXd b2;
};

// Fixed linear projection of a row-major flattened grid; rows are seeded
// standard normals scaled by 1/sqrt(H*W).
struct LinearEmbedder {
    std::uint64_t seed = 0;
    int embed_dim = 0;
    int height = 0;
    int width = 0;
    Eigen::MatrixXd projection;  // embed_dim x (height*width)
};

// Scaler -> PCA -> GMM bundle mapping raw embeddings to style posteriors.
struct StyleModel {
    Scaler scaler;
    PcaModel pca;
    GmmModel gmm;

    int embed_dim() const { return scaler.dim(); }
    int reduced_dim() const { return pca.dim_out(); }
    int component_count() const { return gmm.component_count(); }
};

SynthGenerator generator_new(std::uint64_t seed, int latent_dim, int hidden_dim,
                             int height, int width);

Phenotype generate(const SynthGenerator& gen, const Eigen::VectorXd& latent);

LinearEmbedder embedder_new(std::uint64_t seed, int embed_dim, int height, int width);

Eigen::VectorXd embed(const LinearEmbedder& emb, const Phenotype& phenotype);

// Posterior probability of the target component for the design generated
// from `latent`: the full generate -> embed -> scale -> PCA -> GMM chain.
double fitness(const StyleModel& style, const SynthGenerator& gen,
               const LinearEmbedder& emb, const Eigen::VectorXd& latent, int target);

// Raw embedding of the design generated from `latent`.
Eigen::VectorXd embed_latent(const SynthGenerator& gen, const LinearEmbedder& emb,
                             const Eigen::VectorXd& latent);

// Style posteriors of an already computed raw embedding.
Eigen::VectorXd style_posterior(const StyleModel& style, const Eigen::VectorXd& embedding);

// Binary PGM (P5, maxval 255); pixel byte = round((v+1)/2*255) clamped.
void export_pgm(const Phenotype& phenotype, const std::filesystem::path& path);

} // namespace stylesearch
