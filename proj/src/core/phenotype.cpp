#include "phenotype.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace stylesearch {

namespace {

void fill_normal_scaled(RandomStream& stream, double scale, Eigen::Ref<Eigen::MatrixXd> out) {
    // Row-major fill order, part of the weight derivation contract.
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        for (Eigen::Index c = 0; c < out.cols(); ++c) {
            out(r, c) = scale * stream.next_normal();
        }
    }
}

void require_positive_dims(std::initializer_list<std::pair<const char*, int>> dims,
                           const char* op) {
    for (const auto& [name, value] : dims) {
        if (value < 1) {
            throw ValidationError(std::string(op) + ": " + name + " must be >= 1, got " +
                                  std::to_string(value));
        }
    }
}

} // namespace

SynthGenerator generator_new(std::uint64_t seed, int latent_dim, int hidden_dim,
                             int height, int width) {
    require_positive_dims({{"latent_dim", latent_dim},
                           {"hidden_dim", hidden_dim},
                           {"height", height},
                           {"width", width}},
                          "generator_new");
    SynthGenerator gen;
    gen.seed = seed;
    gen.latent_dim = latent_dim;
    gen.hidden_dim = hidden_dim;
    gen.height = height;
    gen.width = width;

    RandomStream stream(derive_stream_seed(seed, "generator-weights"));
    const int out_dim = height * width;
    gen.w1.resize(hidden_dim, latent_dim);
    gen.b1.resize(hidden_dim);
    gen.w2.resize(out_dim, hidden_dim);
    gen.b2.resize(out_dim);

    const double scale1 = 1.0 / std::sqrt(static_cast<double>(latent_dim));
    const double scale2 = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
    fill_normal_scaled(stream, scale1, gen.w1);
    fill_normal_scaled(stream, scale1, gen.b1);
    fill_normal_scaled(stream, scale2, gen.w2);
    fill_normal_scaled(stream, scale2, gen.b2);
    return gen;
}

Phenotype generate(const SynthGenerator& gen, const Eigen::VectorXd& latent) {
    if (latent.size() != gen.latent_dim) {
        throw DimensionError("generate: latent length " + std::to_string(latent.size()) +
                             " does not match generator latent_dim " +
                             std::to_string(gen.latent_dim));
    }
    if (!latent.allFinite()) {
        throw ValidationError("generate: latent contains non-finite entries");
    }
    const Eigen::VectorXd hidden = (gen.w1 * latent + gen.b1).array().tanh();
    const Eigen::VectorXd out = (gen.w2 * hidden + gen.b2).array().tanh();

    Phenotype phenotype;
    phenotype.height = gen.height;
    phenotype.width = gen.width;
    phenotype.pixels.resize(gen.height, gen.width);
    for (int r = 0; r < gen.height; ++r) {
        for (int c = 0; c < gen.width; ++c) {
            phenotype.pixels(r, c) = out(r * gen.width + c);
        }
    }
    return phenotype;
}

LinearEmbedder embedder_new(std::uint64_t seed, int embed_dim, int height, int width) {
    require_positive_dims({{"embed_dim", embed_dim}, {"height", height}, {"width", width}},
                          "embedder_new");
    LinearEmbedder emb;
    emb.seed = seed;
    emb.embed_dim = embed_dim;
    emb.height = height;
    emb.width = width;
    emb.projection.resize(embed_dim, height * width);

    RandomStream stream(derive_stream_seed(seed, "embedder-weights"));
    const double scale = 1.0 / std::sqrt(static_cast<double>(height * width));
    fill_normal_scaled(stream, scale, emb.projection);
    return emb;
}

Eigen::VectorXd embed(const LinearEmbedder& emb, const Phenotype& phenotype) {
    if (phenotype.height != emb.height || phenotype.width != emb.width) {
        throw DimensionError("embed: phenotype is " + std::to_string(phenotype.height) + "x" +
                             std::to_string(phenotype.width) + ", embedder expects " +
                             std::to_string(emb.height) + "x" + std::to_string(emb.width));
    }
    Eigen::VectorXd flat(phenotype.height * phenotype.width);
    for (int r = 0; r < phenotype.height; ++r) {
        for (int c = 0; c < phenotype.width; ++c) {
            flat(r * phenotype.width + c) = phenotype.pixels(r, c);
        }
    }
    return emb.projection * flat;
}

Eigen::VectorXd embed_latent(const SynthGenerator& gen, const LinearEmbedder& emb,
                             const Eigen::VectorXd& latent) {
    return embed(emb, generate(gen, latent));
}

Eigen::VectorXd style_posterior(const StyleModel& style, const Eigen::VectorXd& embedding) {
    return gmm_posterior(style.gmm,
                         pca_transform(style.pca, scaler_apply(style.scaler, embedding)));
}

double fitness(const StyleModel& style, const SynthGenerator& gen,
               const LinearEmbedder& emb, const Eigen::VectorXd& latent, int target) {
    return gmm_posterior_t(
        style.gmm,
        pca_transform(style.pca, scaler_apply(style.scaler, embed_latent(gen, emb, latent))),
        target);
}

void export_pgm(const Phenotype& phenotype, const std::filesystem::path& path) {
    if (phenotype.height < 1 || phenotype.width < 1 ||
        phenotype.pixels.rows() != phenotype.height ||
        phenotype.pixels.cols() != phenotype.width) {
        throw ValidationError("export_pgm: phenotype dimensions are inconsistent");
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("export_pgm: cannot open '" + path.string() + "' for writing");
    }
    file << "P5\n" << phenotype.width << " " << phenotype.height << "\n255\n";
    std::vector<unsigned char> row(phenotype.width);
    for (int r = 0; r < phenotype.height; ++r) {
        for (int c = 0; c < phenotype.width; ++c) {
            const double v = (phenotype.pixels(r, c) + 1.0) * 0.5 * 255.0;
            const long byte = std::lround(v);
            row[c] = static_cast<unsigned char>(std::clamp(byte, 0L, 255L));
        }
        file.write(reinterpret_cast<const char*>(row.data()), phenotype.width);
    }
    if (!file) {
        throw IoError("export_pgm: write failed for '" + path.string() + "'");
    }
}

} // namespace stylesearch
