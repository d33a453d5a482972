#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rng.hpp"

namespace stylesearch {

struct EvolutionConfig {
    int population_size = 50;        // N_pop
    int generations = 100;           // N_gen
    int elite_count = 1;             // N_elite, preserved unmodified
    int immigrant_count = 10;        // N_new fresh random vectors per generation
    int tournament_size = 3;         // N_ts
    double crossover_rate = 0.9;     // p_cx, drawn once per consecutive pair
    double mutation_rate = 0.2;      // p_mut, gates whole-individual mutation
    double per_gene_mutation_prob = 0.5;
    int latent_dim = 16;
    std::uint64_t seed = 0;
    int target = 0;  // style component the fitness closure points at
};

struct GenerationStats {
    int generation = 0;
    double max_fitness = 0.0;
    double mean_fitness = 0.0;
    int best_index = 0;
};

struct EvolutionResult {
    std::vector<GenerationStats> stats;  // one entry per generation
    Eigen::VectorXd best_latent;         // best individual ever evaluated
    double best_fitness = 0.0;
    std::vector<Eigen::VectorXd> final_population;
};

struct BaselineResult {
    Eigen::VectorXd best_latent;
    double best_fitness = 0.0;
};

using FitnessFn = std::function<double(const Eigen::VectorXd&)>;

void validate_evolution_config(const EvolutionConfig& cfg);

// N_pop vectors of i.i.d. standard normals drawn from `rng`.
std::vector<Eigen::VectorXd> init_population(const EvolutionConfig& cfg, RandomStream& rng);

// Each winner is the fittest of tournament_size indices drawn uniformly with
// replacement; fitness ties go to the lower population index.
std::vector<Eigen::VectorXd> tournament_select(const std::vector<Eigen::VectorXd>& population,
                                               const std::vector<double>& fitnesses,
                                               int count, int tournament_size,
                                               RandomStream& rng);

// Per-gene coin flip swaps genes between the parents; children are
// complementary, so {a'_i, b'_i} == {a_i, b_i} at every position.
std::pair<Eigen::VectorXd, Eigen::VectorXd> uniform_crossover(const Eigen::VectorXd& a,
                                                              const Eigen::VectorXd& b,
                                                              RandomStream& rng);

// Adds standard-normal noise to each gene independently with probability
// per_gene_prob.
Eigen::VectorXd nonuniform_mutate(const Eigen::VectorXd& latent, double per_gene_prob,
                                  RandomStream& rng);

/// Generational GA: evaluate, record stats, set the elite aside, fill the
/// breeding pool by tournaments, cross consecutive pairs, inject immigrants,
/// mutate everything non-elite, re-append the elite. Population size is
/// restored exactly every generation.
EvolutionResult evolve(const EvolutionConfig& cfg, const FitnessFn& fitness_fn);

// Budget-matched random search: best of N_pop * N_gen fresh samples.
BaselineResult random_baseline(const EvolutionConfig& cfg, const FitnessFn& fitness_fn);

} // namespace stylesearch
