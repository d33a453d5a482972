/* stylesearch: evolutionary style search in a generative latent space.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed through this API; every fallible call returns an ss_status
 * and leaves a human-readable message in ss_last_error() on failure. Handles
 * are immutable after creation (except the config setters below) and safe to
 * share across threads for read-only use.
 */
#ifndef STYLESEARCH_H
#define STYLESEARCH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
    SS_OK = 0,
    SS_ERR_INVALID_ARGUMENT = 1, /* bad config value, range or null pointer */
    SS_ERR_DIMENSION_MISMATCH = 2,
    SS_ERR_IO = 3,
    SS_ERR_RUNTIME = 4
} ss_status;

typedef struct ss_config ss_config;
typedef struct ss_generator ss_generator;
typedef struct ss_embedder ss_embedder;
typedef struct ss_style_model ss_style_model;

const char* ss_status_name(ss_status status);

/* Message for the most recent failing call on this thread; empty string if
 * none. The pointer stays valid until the next failing call. */
const char* ss_last_error(void);

/* ---- run configuration ------------------------------------------------- */

/* Parses a flat `key = value` config file. */
ss_status ss_config_load(const char* path, ss_config** out_config);

/* Built-in defaults (the small synthetic world). */
ss_status ss_config_default(ss_config** out_config);

void ss_config_free(ss_config* config);

/* Overrides the master seed every derived stream (dataset, gmm fit,
 * evolution, baseline, sweep cells) is keyed on. */
ss_status ss_config_set_seed(ss_config* config, uint64_t seed);

/* Default output directory from the config ("out" unless set). */
const char* ss_config_out_dir(const ss_config* config);

int ss_config_export_count(const ss_config* config);

/* ---- synthetic world --------------------------------------------------- */

ss_status ss_generator_create(uint64_t seed, int latent_dim, int hidden_dim, int height,
                              int width, ss_generator** out_generator);
void ss_generator_free(ss_generator* generator);

/* Writes height*width pixels in row-major order, each strictly in (-1, 1). */
ss_status ss_generate(const ss_generator* generator, const double* latent, int latent_len,
                      double* pixels_out);

ss_status ss_embedder_create(uint64_t seed, int embed_dim, int height, int width,
                             ss_embedder** out_embedder);
void ss_embedder_free(ss_embedder* embedder);

/* pixel_count must equal the embedder's height*width. */
ss_status ss_embed(const ss_embedder* embedder, const double* pixels, int pixel_count,
                   double* embedding_out);

/* Binary PGM (P5, maxval 255); pixel byte = round((v+1)/2*255), clamped. */
ss_status ss_write_pgm(const double* pixels, int height, int width, const char* path);

/* ---- style model ------------------------------------------------------- */

ss_status ss_style_model_load(const char* path, ss_style_model** out_model);
ss_status ss_style_model_save(const ss_style_model* model, const char* path);
void ss_style_model_free(ss_style_model* model);

/* Negative on null handle. */
int ss_style_model_embed_dim(const ss_style_model* model);
int ss_style_model_reduced_dim(const ss_style_model* model);
int ss_style_model_component_count(const ss_style_model* model);

/* Posterior membership of a raw embedding; writes component_count values
 * summing to 1. */
ss_status ss_style_posterior(const ss_style_model* model, const double* embedding,
                             int embedding_len, double* posterior_out);

/* Posterior of the target component for the design generated from `latent`:
 * the full generate -> embed -> scale -> PCA -> GMM chain. */
ss_status ss_fitness(const ss_style_model* model, const ss_generator* generator,
                     const ss_embedder* embedder, const double* latent, int latent_len,
                     int target, double* fitness_out);

/* ---- pipeline commands (the CLI surface) ------------------------------- */

/* Builds the synthetic dataset, fits the style model and writes
 * style_model.txt plus cluster_sizes.csv into out_dir. NULL out_dir means
 * the config's out_dir; same below. */
ss_status ss_cmd_fit(const ss_config* config, const char* out_dir);

/* Runs the GA toward `target`; writes evolve_stats_t<t>.csv,
 * evolve_best_t<t>.pgm and evolve_latent_t<t>.txt. Stores the best fitness
 * in *best_fitness_out when non-NULL. */
ss_status ss_cmd_evolve(const ss_config* config, const char* model_path, int target,
                        const char* out_dir, double* best_fitness_out);

/* Full parameter grid; writes sweep_detail.csv and sweep_aggregate.csv. */
ss_status ss_cmd_sweep(const ss_config* config, const char* out_dir);

/* Budget-matched random search; writes baseline_t<t>.csv and
 * baseline_best_t<t>.pgm. */
ss_status ss_cmd_baseline(const ss_config* config, const char* model_path, int target,
                          const char* out_dir, double* best_fitness_out);

/* Re-generates the training set and exports the `count` designs with the
 * highest posterior for `target` as export_t<t>_r<rank>.pgm. */
ss_status ss_cmd_export(const ss_config* config, const char* model_path, int target, int count,
                        const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STYLESEARCH_H */
