#include "harness.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <string>
#include <utility>

#include "errors.hpp"
#include "model_io.hpp"
#include "textio.hpp"

namespace stylesearch {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
}

StyleModel load_model_checked(const RunConfig& cfg, const fs::path& model_path) {
    StyleModel model = load_style_model(model_path);
    if (model.embed_dim() != cfg.embed_dim) {
        throw DimensionError("style model '" + model_path.string() + "' has embedding dimension " +
                             std::to_string(model.embed_dim()) +
                             " but the config's embedder produces dimension " +
                             std::to_string(cfg.embed_dim));
    }
    return model;
}

void require_target(const StyleModel& model, int target) {
    if (target < 0 || target >= model.component_count()) {
        throw ValidationError("target " + std::to_string(target) + " out of range [0, " +
                              std::to_string(model.component_count()) + ")");
    }
}

std::string stats_csv(const std::vector<GenerationStats>& stats) {
    std::string out = "generation,max_fitness,mean_fitness\n";
    for (const auto& row : stats) {
        out += std::to_string(row.generation);
        out += ',';
        out += format_double(row.max_fitness);
        out += ',';
        out += format_double(row.mean_fitness);
        out += '\n';
    }
    return out;
}

std::string latent_text(const Eigen::VectorXd& latent) {
    std::string out;
    for (Eigen::Index i = 0; i < latent.size(); ++i) {
        out += format_double(latent(i));
        out += '\n';
    }
    return out;
}

} // namespace

World build_world(const RunConfig& cfg) {
    World world;
    world.generator = generator_new(cfg.generator_seed, cfg.latent_dim, cfg.hidden_dim,
                                    cfg.height, cfg.width);
    world.embedder = embedder_new(cfg.embedder_seed, cfg.embed_dim, cfg.height, cfg.width);
    return world;
}

std::vector<Eigen::VectorXd> sample_dataset_latents(const RunConfig& cfg) {
    RandomStream stream(derive_stream_seed(cfg.seed, "dataset"));
    std::vector<Eigen::VectorXd> latents;
    latents.reserve(cfg.dataset_size);
    for (int i = 0; i < cfg.dataset_size; ++i) {
        Eigen::VectorXd z(cfg.latent_dim);
        for (int j = 0; j < cfg.latent_dim; ++j) {
            z(j) = stream.next_normal();
        }
        latents.push_back(std::move(z));
    }
    return latents;
}

Eigen::MatrixXd dataset_embeddings(const RunConfig& cfg, const World& world) {
    const auto latents = sample_dataset_latents(cfg);
    Eigen::MatrixXd embeddings(cfg.dataset_size, cfg.embed_dim);
    for (int i = 0; i < cfg.dataset_size; ++i) {
        embeddings.row(i) = embed_latent(world.generator, world.embedder, latents[i]).transpose();
    }
    return embeddings;
}

StyleModel fit_style_model(const RunConfig& cfg, const Eigen::MatrixXd& embeddings) {
    StyleModel model;
    model.scaler = scaler_fit(embeddings);
    const Eigen::MatrixXd centered = scaler_apply_rows(model.scaler, embeddings);
    model.pca = pca_fit(centered, cfg.pca_target_ratio);

    Eigen::MatrixXd reduced(embeddings.rows(), model.pca.dim_out());
    for (Eigen::Index i = 0; i < centered.rows(); ++i) {
        reduced.row(i) = (model.pca.components * centered.row(i).transpose()).transpose();
    }
    GmmConfig gmm_cfg = cfg.gmm;
    gmm_cfg.seed = derive_stream_seed(cfg.seed, "gmm");
    model.gmm = gmm_fit(reduced, gmm_cfg);
    return model;
}

std::vector<int> cluster_sizes(const StyleModel& model, const Eigen::MatrixXd& embeddings) {
    std::vector<int> sizes(model.component_count(), 0);
    for (Eigen::Index i = 0; i < embeddings.rows(); ++i) {
        const Eigen::VectorXd posterior = style_posterior(model, embeddings.row(i).transpose());
        int argmax = 0;
        for (int k = 1; k < model.component_count(); ++k) {
            if (posterior(k) > posterior(argmax)) {
                argmax = k;
            }
        }
        ++sizes[argmax];
    }
    return sizes;
}

std::vector<int> resolve_targets(const RunConfig& cfg, const std::vector<int>& sizes) {
    if (cfg.targets.mode == TargetSelection::Mode::Explicit) {
        for (const int t : cfg.targets.indices) {
            if (t < 0 || t >= static_cast<int>(sizes.size())) {
                throw ValidationError("target index " + std::to_string(t) +
                                      " out of range [0, " + std::to_string(sizes.size()) + ")");
            }
        }
        return cfg.targets.indices;
    }
    std::vector<int> order(sizes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sizes[a] > sizes[b]; });
    const int k = std::min<int>(cfg.targets.top_k, static_cast<int>(order.size()));
    order.resize(k);
    return order;
}

FitnessFn make_fitness(const StyleModel& model, const World& world, int target) {
    require_target(model, target);
    return [model, world, target](const Eigen::VectorXd& z) {
        return fitness(model, world.generator, world.embedder, z, target);
    };
}

FitArtifacts run_fit(const RunConfig& cfg, const fs::path& out_dir) {
    ensure_dir(out_dir);
    const World world = build_world(cfg);
    const Eigen::MatrixXd embeddings = dataset_embeddings(cfg, world);

    FitArtifacts artifacts;
    artifacts.model = fit_style_model(cfg, embeddings);
    artifacts.sizes = cluster_sizes(artifacts.model, embeddings);

    artifacts.model_path = out_dir / "style_model.txt";
    save_style_model(artifacts.model, artifacts.model_path);

    std::string sizes_csv = "component,size\n";
    for (std::size_t k = 0; k < artifacts.sizes.size(); ++k) {
        sizes_csv += std::to_string(k) + "," + std::to_string(artifacts.sizes[k]) + "\n";
    }
    artifacts.sizes_path = out_dir / "cluster_sizes.csv";
    write_text_file(artifacts.sizes_path, sizes_csv);
    return artifacts;
}

EvolveArtifacts run_evolve(const RunConfig& cfg, const fs::path& model_path, int target,
                           const fs::path& out_dir) {
    ensure_dir(out_dir);
    const StyleModel model = load_model_checked(cfg, model_path);
    require_target(model, target);
    const World world = build_world(cfg);

    EvolutionConfig evo = cfg.evolution;
    evo.latent_dim = cfg.latent_dim;
    evo.target = target;
    evo.seed = mix_seed(derive_stream_seed(cfg.seed, "evolve"), static_cast<std::uint64_t>(target));

    const EvolutionResult result = evolve(evo, make_fitness(model, world, target));

    const std::string tag = "t" + std::to_string(target);
    EvolveArtifacts artifacts;
    artifacts.best_fitness = result.best_fitness;
    artifacts.stats_path = out_dir / ("evolve_stats_" + tag + ".csv");
    write_text_file(artifacts.stats_path, stats_csv(result.stats));

    artifacts.pgm_path = out_dir / ("evolve_best_" + tag + ".pgm");
    export_pgm(generate(world.generator, result.best_latent), artifacts.pgm_path);

    artifacts.latent_path = out_dir / ("evolve_latent_" + tag + ".txt");
    write_text_file(artifacts.latent_path, latent_text(result.best_latent));
    return artifacts;
}

SweepArtifacts run_sweep(const RunConfig& cfg, const fs::path& out_dir) {
    ensure_dir(out_dir);
    const World world = build_world(cfg);
    const Eigen::MatrixXd embeddings = dataset_embeddings(cfg, world);
    const StyleModel model = fit_style_model(cfg, embeddings);
    const std::vector<int> styles = resolve_targets(cfg, cluster_sizes(model, embeddings));

    std::string detail = "p_cx,p_mut,n_pop,n_ts,style,run,best_fitness\n";
    std::string aggregate = "p_cx,p_mut,n_pop,n_ts,avg_best_fitness\n";
    int detail_rows = 0;
    int aggregate_rows = 0;

    const std::uint64_t sweep_seed = derive_stream_seed(cfg.seed, "sweep");
    int cell_index = 0;
    for (const double p_cx : cfg.sweep_p_cx) {
        for (const double p_mut : cfg.sweep_p_mut) {
            for (const int n_pop : cfg.sweep_n_pop) {
                for (const int n_ts : cfg.sweep_n_ts) {
                    double cell_sum = 0.0;
                    int cell_count = 0;
                    for (const int style : styles) {
                        for (int run = 0; run < cfg.sweep_runs; ++run) {
                            EvolutionConfig evo = cfg.evolution;
                            evo.latent_dim = cfg.latent_dim;
                            evo.crossover_rate = p_cx;
                            evo.mutation_rate = p_mut;
                            evo.population_size = n_pop;
                            evo.tournament_size = n_ts;
                            evo.target = style;
                            evo.seed = mix_seed(
                                mix_seed(mix_seed(sweep_seed,
                                                  static_cast<std::uint64_t>(cell_index)),
                                         static_cast<std::uint64_t>(style)),
                                static_cast<std::uint64_t>(run));
                            const EvolutionResult result =
                                evolve(evo, make_fitness(model, world, style));
                            detail += format_double(p_cx) + "," + format_double(p_mut) + "," +
                                      std::to_string(n_pop) + "," + std::to_string(n_ts) + "," +
                                      std::to_string(style) + "," + std::to_string(run) + "," +
                                      format_double(result.best_fitness) + "\n";
                            ++detail_rows;
                            cell_sum += result.best_fitness;
                            ++cell_count;
                        }
                    }
                    aggregate += format_double(p_cx) + "," + format_double(p_mut) + "," +
                                 std::to_string(n_pop) + "," + std::to_string(n_ts) + "," +
                                 format_double(cell_sum / cell_count) + "\n";
                    ++aggregate_rows;
                    ++cell_index;
                }
            }
        }
    }

    SweepArtifacts artifacts;
    artifacts.detail_path = out_dir / "sweep_detail.csv";
    artifacts.aggregate_path = out_dir / "sweep_aggregate.csv";
    artifacts.detail_rows = detail_rows;
    artifacts.aggregate_rows = aggregate_rows;
    write_text_file(artifacts.detail_path, detail);
    write_text_file(artifacts.aggregate_path, aggregate);
    return artifacts;
}

BaselineArtifacts run_baseline(const RunConfig& cfg, const fs::path& model_path, int target,
                               const fs::path& out_dir) {
    ensure_dir(out_dir);
    const StyleModel model = load_model_checked(cfg, model_path);
    require_target(model, target);
    const World world = build_world(cfg);

    EvolutionConfig evo = cfg.evolution;
    evo.latent_dim = cfg.latent_dim;
    evo.target = target;
    evo.seed =
        mix_seed(derive_stream_seed(cfg.seed, "baseline"), static_cast<std::uint64_t>(target));

    const BaselineResult result = random_baseline(evo, make_fitness(model, world, target));
    const long budget = static_cast<long>(evo.population_size) * evo.generations;

    const std::string tag = "t" + std::to_string(target);
    BaselineArtifacts artifacts;
    artifacts.best_fitness = result.best_fitness;
    artifacts.csv_path = out_dir / ("baseline_" + tag + ".csv");
    write_text_file(artifacts.csv_path, "budget,best_fitness\n" + std::to_string(budget) + "," +
                                            format_double(result.best_fitness) + "\n");
    artifacts.pgm_path = out_dir / ("baseline_best_" + tag + ".pgm");
    export_pgm(generate(world.generator, result.best_latent), artifacts.pgm_path);
    return artifacts;
}

ExportArtifacts run_export(const RunConfig& cfg, const fs::path& model_path, int target,
                           int count, const fs::path& out_dir) {
    ensure_dir(out_dir);
    const StyleModel model = load_model_checked(cfg, model_path);
    require_target(model, target);
    if (count < 1 || count > cfg.dataset_size) {
        throw ValidationError("export count " + std::to_string(count) +
                              " must lie in [1, dataset_size=" +
                              std::to_string(cfg.dataset_size) + "]");
    }
    const World world = build_world(cfg);
    const auto latents = sample_dataset_latents(cfg);

    std::vector<double> posteriors(latents.size());
    for (std::size_t i = 0; i < latents.size(); ++i) {
        const Eigen::VectorXd embedding =
            embed_latent(world.generator, world.embedder, latents[i]);
        posteriors[i] = style_posterior(model, embedding)(target);
    }
    std::vector<int> order(latents.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return posteriors[a] > posteriors[b]; });

    ExportArtifacts artifacts;
    char name[64];
    for (int rank = 0; rank < count; ++rank) {
        const int sample = order[rank];
        std::snprintf(name, sizeof(name), "export_t%d_r%02d.pgm", target, rank + 1);
        const fs::path path = out_dir / name;
        export_pgm(generate(world.generator, latents[sample]), path);
        artifacts.pgm_paths.push_back(path);
        artifacts.posteriors.push_back(posteriors[sample]);
    }
    return artifacts;
}

} // namespace stylesearch
