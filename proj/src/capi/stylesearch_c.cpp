#include "stylesearch.h"

#include <exception>
#include <string>
#include <utility>

#include "../core/errors.hpp"
#include "../core/harness.hpp"
#include "../core/model_io.hpp"

namespace {

thread_local std::string g_last_error;

using stylesearch::RunConfig;
using stylesearch::StyleModel;

ss_status fail(ss_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs `fn` and maps the core exception taxonomy onto status codes.
template <typename Fn>
ss_status guarded(Fn&& fn) noexcept {
    try {
        return fn();
    } catch (const stylesearch::DimensionError& e) {
        return fail(SS_ERR_DIMENSION_MISMATCH, e.what());
    } catch (const stylesearch::ValidationError& e) {
        return fail(SS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const stylesearch::IoError& e) {
        return fail(SS_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(SS_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(SS_ERR_RUNTIME, "unknown error");
    }
}

ss_status require(bool condition, const char* message) {
    return condition ? SS_OK : fail(SS_ERR_INVALID_ARGUMENT, message);
}

} // namespace

struct ss_config {
    RunConfig cfg;
};

struct ss_generator {
    stylesearch::SynthGenerator gen;
};

struct ss_embedder {
    stylesearch::LinearEmbedder emb;
};

struct ss_style_model {
    StyleModel model;
};

extern "C" {

const char* ss_status_name(ss_status status) {
    switch (status) {
        case SS_OK: return "ok";
        case SS_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SS_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
        case SS_ERR_IO: return "io error";
        case SS_ERR_RUNTIME: return "runtime error";
    }
    return "unknown status";
}

const char* ss_last_error(void) {
    return g_last_error.c_str();
}

ss_status ss_config_load(const char* path, ss_config** out_config) {
    if (ss_status s = require(path && out_config, "ss_config_load: null argument"); s != SS_OK) {
        return s;
    }
    return guarded([&] {
        *out_config = new ss_config{stylesearch::load_run_config(path)};
        return SS_OK;
    });
}

ss_status ss_config_default(ss_config** out_config) {
    if (ss_status s = require(out_config != nullptr, "ss_config_default: null argument");
        s != SS_OK) {
        return s;
    }
    return guarded([&] {
        *out_config = new ss_config{RunConfig{}};
        return SS_OK;
    });
}

void ss_config_free(ss_config* config) {
    delete config;
}

ss_status ss_config_set_seed(ss_config* config, uint64_t seed) {
    if (ss_status s = require(config != nullptr, "ss_config_set_seed: null config");
        s != SS_OK) {
        return s;
    }
    config->cfg.seed = seed;
    return SS_OK;
}

const char* ss_config_out_dir(const ss_config* config) {
    return config ? config->cfg.out_dir.c_str() : "";
}

int ss_config_export_count(const ss_config* config) {
    return config ? config->cfg.export_count : -1;
}

ss_status ss_generator_create(uint64_t seed, int latent_dim, int hidden_dim, int height,
                              int width, ss_generator** out_generator) {
    if (ss_status s = require(out_generator != nullptr, "ss_generator_create: null output");
        s != SS_OK) {
        return s;
    }
    return guarded([&] {
        *out_generator = new ss_generator{
            stylesearch::generator_new(seed, latent_dim, hidden_dim, height, width)};
        return SS_OK;
    });
}

void ss_generator_free(ss_generator* generator) {
    delete generator;
}

ss_status ss_generate(const ss_generator* generator, const double* latent, int latent_len,
                      double* pixels_out) {
    if (ss_status s = require(generator && latent && pixels_out, "ss_generate: null argument");
        s != SS_OK) {
        return s;
    }
    return guarded([&] {
        const Eigen::Map<const Eigen::VectorXd> z(latent, latent_len);
        const stylesearch::Phenotype phenotype =
            stylesearch::generate(generator->gen, Eigen::VectorXd(z));
        for (int r = 0; r < phenotype.height; ++r) {
            for (int c = 0; c < phenotype.width; ++c) {
                pixels_out[r * phenotype.width + c] = phenotype.pixels(r, c);
            }
        }
        return SS_OK;
    });
}

ss_status ss_embedder_create(uint64_t seed, int embed_dim, int height, int width,
                             ss_embedder** out_embedder) {
    if (ss_status s = require(out_embedder != nullptr, "ss_embedder_create: null output");
        s != SS_OK) {
        return s;
    }
    return guarded([&] {
        *out_embedder = new ss_embedder{stylesearch::embedder_new(seed, embed_dim, height, width)};
        return SS_OK;
    });
}

void ss_embedder_free(ss_embedder* embedder) {
    delete embedder;
}

ss_status ss_embed(const ss_embedder* embedder, const double* pixels, int pixel_count,
                   double* embedding_out) {
    if (ss_status s = require(embedder && pixels && embedding_out, "ss_embed: null argument");
        s != SS_OK) {
        return s;
    }
    return guarded([&] {
        const auto& emb = embedder->emb;
        if (pixel_count != emb.height * emb.width) {
            throw stylesearch::DimensionError(
                "ss_embed: pixel count " + std::to_string(pixel_count) + " does not match " +
                std::to_string(emb.height * emb.width));
        }
        stylesearch::Phenotype phenotype;
        phenotype.height = emb.height;
        phenotype.width = emb.width;
        phenotype.pixels.resize(emb.height, emb.width);
        for (int r = 0; r < emb.height; ++r) {
            for (int c = 0; c < emb.width; ++c) {
                phenotype.pixels(r, c) = pixels[r * emb.width + c];
            }
        }
        const Eigen::VectorXd embedding = stylesearch::embed(emb, phenotype);
        for (int i = 0; i < embedding.size(); ++i) {
            embedding_out[i] = embedding(i);
        }
        return SS_OK;
    });
}

ss_status ss_write_pgm(const double* pixels, int height, int width, const char* path) {
    if (ss_status s = require(pixels && path, "ss_write_pgm: null argument"); s != SS_OK) {
        return s;
    }
    return guarded([&] {
        if (height < 1 || width < 1) {
            throw stylesearch::ValidationError("ss_write_pgm: dimensions must be >= 1");
        }
        stylesearch::Phenotype phenotype;
        phenotype.height = height;
        phenotype.width = width;
        phenotype.pixels.resize(height, width);
        for (int r = 0; r < height; ++r) {
            for (int c = 0; c < width; ++c) {
                phenotype.pixels(r, c) = pixels[r * width + c];
            }
        }
        stylesearch::export_pgm(phenotype, path);
        return SS_OK;
    });
}

ss_status ss_style_model_load(const char* path, ss_style_model** out_model) {
    if (ss_status s = require(path && out_model, "ss_style_model_load: null argument");
        s != SS_OK) {
        return s;
    }
    return guarded([&] {
        *out_model = new ss_style_model{stylesearch::load_style_model(path)};
        return SS_OK;
    });
}

ss_status ss_style_model_save(const ss_style_model* model, const char* path) {
    if (ss_status s = require(model && path, "ss_style_model_save: null argument"); s != SS_OK) {
        return s;
    }
    return guarded([&] {
        stylesearch::save_style_model(model->model, path);
        return SS_OK;
    });
}

void ss_style_model_free(ss_style_model* model) {
    delete model;
}

int ss_style_model_embed_dim(const ss_style_model* model) {
    return model ? model->model.embed_dim() : -1;
}

int ss_style_model_reduced_dim(const ss_style_model* model) {
    return model ? model->model.reduced_dim() : -1;
}

int ss_style_model_component_count(const ss_style_model* model) {
    return model ? model->model.component_count() : -1;
}

ss_status ss_style_posterior(const ss_style_model* model, const double* embedding,
                             int embedding_len, double* posterior_out) {
    if (ss_status s =
            require(model && embedding && posterior_out, "ss_style_posterior: null argument");
        s != SS_OK) {
        return s;
    }
    return guarded([&] {
        if (embedding_len != model->model.embed_dim()) {
            throw stylesearch::DimensionError(
                "ss_style_posterior: embedding length " + std::to_string(embedding_len) +
                " does not match model dimension " + std::to_string(model->model.embed_dim()));
        }
        const Eigen::Map<const Eigen::VectorXd> x(embedding, embedding_len);
        const Eigen::VectorXd posterior =
            stylesearch::style_posterior(model->model, Eigen::VectorXd(x));
        for (int k = 0; k < posterior.size(); ++k) {
            posterior_out[k] = posterior(k);
        }
        return SS_OK;
    });
}

ss_status ss_fitness(const ss_style_model* model, const ss_generator* generator,
                     const ss_embedder* embedder, const double* latent, int latent_len,
                     int target, double* fitness_out) {
    if (ss_status s = require(model && generator && embedder && latent && fitness_out,
                              "ss_fitness: null argument");
        s != SS_OK) {
        return s;
    }
    return guarded([&] {
        const Eigen::Map<const Eigen::VectorXd> z(latent, latent_len);
        *fitness_out = stylesearch::fitness(model->model, generator->gen, embedder->emb,
                                            Eigen::VectorXd(z), target);
        return SS_OK;
    });
}

namespace {

const char* resolve_out_dir(const ss_config* config, const char* out_dir) {
    return (out_dir && *out_dir) ? out_dir : config->cfg.out_dir.c_str();
}

} // namespace

ss_status ss_cmd_fit(const ss_config* config, const char* out_dir) {
    if (ss_status s = require(config != nullptr, "ss_cmd_fit: null config"); s != SS_OK) {
        return s;
    }
    return guarded([&] {
        stylesearch::run_fit(config->cfg, resolve_out_dir(config, out_dir));
        return SS_OK;
    });
}

ss_status ss_cmd_evolve(const ss_config* config, const char* model_path, int target,
                        const char* out_dir, double* best_fitness_out) {
    if (ss_status s = require(config && model_path, "ss_cmd_evolve: null argument"); s != SS_OK) {
        return s;
    }
    return guarded([&] {
        const auto artifacts = stylesearch::run_evolve(config->cfg, model_path, target,
                                                       resolve_out_dir(config, out_dir));
        if (best_fitness_out) {
            *best_fitness_out = artifacts.best_fitness;
        }
        return SS_OK;
    });
}

ss_status ss_cmd_sweep(const ss_config* config, const char* out_dir) {
    if (ss_status s = require(config != nullptr, "ss_cmd_sweep: null config"); s != SS_OK) {
        return s;
    }
    return guarded([&] {
        stylesearch::run_sweep(config->cfg, resolve_out_dir(config, out_dir));
        return SS_OK;
    });
}

ss_status ss_cmd_baseline(const ss_config* config, const char* model_path, int target,
                          const char* out_dir, double* best_fitness_out) {
    if (ss_status s = require(config && model_path, "ss_cmd_baseline: null argument");
        s != SS_OK) {
        return s;
    }
    return guarded([&] {
        const auto artifacts = stylesearch::run_baseline(config->cfg, model_path, target,
                                                         resolve_out_dir(config, out_dir));
        if (best_fitness_out) {
            *best_fitness_out = artifacts.best_fitness;
        }
        return SS_OK;
    });
}

ss_status ss_cmd_export(const ss_config* config, const char* model_path, int target, int count,
                        const char* out_dir) {
    if (ss_status s = require(config && model_path, "ss_cmd_export: null argument"); s != SS_OK) {
        return s;
    }
    return guarded([&] {
        stylesearch::run_export(config->cfg, model_path, target, count,
                                resolve_out_dir(config, out_dir));
        return SS_OK;
    });
}

} // extern "C"
