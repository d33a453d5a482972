#include "evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "errors.hpp"

namespace stylesearch {

namespace {

Eigen::VectorXd random_latent(int latent_dim, RandomStream& rng) {
    Eigen::VectorXd z(latent_dim);
    for (int i = 0; i < latent_dim; ++i) {
        z(i) = rng.next_normal();
    }
    return z;
}

double checked_fitness(const FitnessFn& fitness_fn, const Eigen::VectorXd& z) {
    const double f = fitness_fn(z);
    if (!(f >= 0.0 && f <= 1.0)) {
        throw std::runtime_error("evolve: fitness function returned " + std::to_string(f) +
                                 ", outside [0, 1]");
    }
    return f;
}

// Indices sorted by fitness descending, ties by lower index.
std::vector<int> fitness_order(const std::vector<double>& fitnesses) {
    std::vector<int> order(fitnesses.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fitnesses[a] > fitnesses[b]; });
    return order;
}

} // namespace

void validate_evolution_config(const EvolutionConfig& cfg) {
    if (cfg.population_size < 1 || cfg.generations < 1 || cfg.latent_dim < 1 ||
        cfg.tournament_size < 1) {
        throw ValidationError(
            "evolution config: population_size, generations, latent_dim and "
            "tournament_size must all be >= 1");
    }
    // The monotone max-fitness guarantee rests on at least one elite copy.
    if (cfg.elite_count < 1 || cfg.immigrant_count < 0) {
        throw ValidationError(
            "evolution config: elite_count must be >= 1 and immigrant_count >= 0");
    }
    if (cfg.elite_count + cfg.immigrant_count >= cfg.population_size) {
        throw ValidationError("evolution config: elite_count + immigrant_count (" +
                              std::to_string(cfg.elite_count + cfg.immigrant_count) +
                              ") must be smaller than population_size (" +
                              std::to_string(cfg.population_size) + ")");
    }
    const bool rates_ok = cfg.crossover_rate >= 0.0 && cfg.crossover_rate <= 1.0 &&
                          cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0 &&
                          cfg.per_gene_mutation_prob >= 0.0 &&
                          cfg.per_gene_mutation_prob <= 1.0;
    if (!rates_ok) {
        throw ValidationError("evolution config: rates must lie in [0, 1]");
    }
}

std::vector<Eigen::VectorXd> init_population(const EvolutionConfig& cfg, RandomStream& rng) {
    std::vector<Eigen::VectorXd> population;
    population.reserve(cfg.population_size);
    for (int i = 0; i < cfg.population_size; ++i) {
        population.push_back(random_latent(cfg.latent_dim, rng));
    }
    return population;
}

std::vector<Eigen::VectorXd> tournament_select(const std::vector<Eigen::VectorXd>& population,
                                               const std::vector<double>& fitnesses,
                                               int count, int tournament_size,
                                               RandomStream& rng) {
    if (population.empty()) {
        throw ValidationError("tournament_select: population is empty");
    }
    if (population.size() != fitnesses.size()) {
        throw DimensionError("tournament_select: population and fitness sizes differ");
    }
    if (count < 0 || tournament_size < 1) {
        throw ValidationError("tournament_select: count must be >= 0 and tournament_size >= 1");
    }
    const auto n = population.size();
    std::vector<Eigen::VectorXd> winners;
    winners.reserve(count);
    for (int t = 0; t < count; ++t) {
        std::size_t best = rng.next_index(n);
        for (int d = 1; d < tournament_size; ++d) {
            const std::size_t contender = rng.next_index(n);
            if (fitnesses[contender] > fitnesses[best] ||
                (fitnesses[contender] == fitnesses[best] && contender < best)) {
                best = contender;
            }
        }
        winners.push_back(population[best]);
    }
    return winners;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> uniform_crossover(const Eigen::VectorXd& a,
                                                              const Eigen::VectorXd& b,
                                                              RandomStream& rng) {
    if (a.size() != b.size()) {
        throw DimensionError("uniform_crossover: parent lengths differ (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    Eigen::VectorXd child_a = a;
    Eigen::VectorXd child_b = b;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (!rng.next_bernoulli(0.5)) {
            child_a(i) = b(i);
            child_b(i) = a(i);
        }
    }
    return {std::move(child_a), std::move(child_b)};
}

Eigen::VectorXd nonuniform_mutate(const Eigen::VectorXd& latent, double per_gene_prob,
                                  RandomStream& rng) {
    if (!(per_gene_prob >= 0.0 && per_gene_prob <= 1.0)) {
        throw ValidationError("nonuniform_mutate: per_gene_prob must lie in [0, 1]");
    }
    Eigen::VectorXd mutated = latent;
    for (Eigen::Index i = 0; i < mutated.size(); ++i) {
        if (rng.next_bernoulli(per_gene_prob)) {
            mutated(i) += rng.next_normal();
        }
    }
    return mutated;
}

EvolutionResult evolve(const EvolutionConfig& cfg, const FitnessFn& fitness_fn) {
    validate_evolution_config(cfg);

    // Named streams keep variation randomness independent of evaluation order.
    RandomStream init_stream(derive_stream_seed(cfg.seed, "init"));
    RandomStream selection_stream(derive_stream_seed(cfg.seed, "selection"));
    RandomStream crossover_stream(derive_stream_seed(cfg.seed, "crossover"));
    RandomStream mutation_stream(derive_stream_seed(cfg.seed, "mutation"));
    RandomStream immigrant_stream(derive_stream_seed(cfg.seed, "immigrants"));

    std::vector<Eigen::VectorXd> population = init_population(cfg, init_stream);

    EvolutionResult result;
    result.stats.reserve(cfg.generations);
    result.best_fitness = -1.0;

    std::vector<double> fitnesses(cfg.population_size);
    for (int gen = 0; gen < cfg.generations; ++gen) {
        double sum = 0.0;
        int best_index = 0;
        for (int i = 0; i < cfg.population_size; ++i) {
            fitnesses[i] = checked_fitness(fitness_fn, population[i]);
            sum += fitnesses[i];
            if (fitnesses[i] > fitnesses[best_index]) {
                best_index = i;
            }
        }
        result.stats.push_back({gen, fitnesses[best_index],
                                sum / cfg.population_size, best_index});
        if (fitnesses[best_index] > result.best_fitness) {
            result.best_fitness = fitnesses[best_index];
            result.best_latent = population[best_index];
        }

        if (gen + 1 == cfg.generations) {
            break;  // the varied offspring would never be evaluated
        }

        const std::vector<int> order = fitness_order(fitnesses);
        std::vector<Eigen::VectorXd> elites;
        elites.reserve(cfg.elite_count);
        for (int e = 0; e < cfg.elite_count; ++e) {
            elites.push_back(population[order[e]]);
        }

        const int breed_count =
            cfg.population_size - cfg.elite_count - cfg.immigrant_count;
        std::vector<Eigen::VectorXd> next = tournament_select(
            population, fitnesses, breed_count, cfg.tournament_size, selection_stream);

        // One crossover draw per consecutive pair; an odd trailing individual
        // passes through untouched.
        for (int i = 0; i + 1 < breed_count; i += 2) {
            if (crossover_stream.next_bernoulli(cfg.crossover_rate)) {
                auto children = uniform_crossover(next[i], next[i + 1], crossover_stream);
                next[i] = std::move(children.first);
                next[i + 1] = std::move(children.second);
            }
        }

        for (int i = 0; i < cfg.immigrant_count; ++i) {
            next.push_back(random_latent(cfg.latent_dim, immigrant_stream));
        }

        for (auto& individual : next) {
            if (mutation_stream.next_bernoulli(cfg.mutation_rate)) {
                individual = nonuniform_mutate(individual, cfg.per_gene_mutation_prob,
                                               mutation_stream);
            }
        }

        for (auto& elite : elites) {
            next.push_back(std::move(elite));
        }
        population = std::move(next);
    }

    result.final_population = std::move(population);
    return result;
}

BaselineResult random_baseline(const EvolutionConfig& cfg, const FitnessFn& fitness_fn) {
    // Only the sampling budget matters here; elite/variation fields may hold
    // values evolve() would reject (e.g. a budget of a single sample).
    if (cfg.population_size < 1 || cfg.generations < 1 || cfg.latent_dim < 1) {
        throw ValidationError(
            "random_baseline: population_size, generations and latent_dim must be >= 1");
    }
    RandomStream stream(derive_stream_seed(cfg.seed, "baseline"));
    const long budget =
        static_cast<long>(cfg.population_size) * static_cast<long>(cfg.generations);

    BaselineResult best;
    best.best_fitness = -1.0;
    for (long i = 0; i < budget; ++i) {
        Eigen::VectorXd z = random_latent(cfg.latent_dim, stream);
        const double f = checked_fitness(fitness_fn, z);
        if (f > best.best_fitness) {
            best.best_fitness = f;
            best.best_latent = std::move(z);
        }
    }
    return best;
}

} // namespace stylesearch
