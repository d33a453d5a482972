#include "run_config.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "errors.hpp"
#include "textio.hpp"

namespace stylesearch {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(trim(text.substr(start)));
            break;
        }
        parts.push_back(trim(text.substr(start, pos - start)));
        start = pos + 1;
    }
    return parts;
}

std::vector<double> parse_double_list(std::string_view value, const std::string& context) {
    std::vector<double> out;
    for (const auto part : split(value, ',')) {
        out.push_back(parse_double(part, context));
    }
    return out;
}

std::vector<int> parse_int_list(std::string_view value, const std::string& context) {
    std::vector<int> out;
    for (const auto part : split(value, ',')) {
        out.push_back(static_cast<int>(parse_int(part, context)));
    }
    return out;
}

TargetSelection parse_targets(std::string_view value, const std::string& context) {
    TargetSelection sel;
    if (value.rfind("top:", 0) == 0) {
        sel.mode = TargetSelection::Mode::TopK;
        sel.top_k = static_cast<int>(parse_int(value.substr(4), context));
        if (sel.top_k < 1) {
            throw ValidationError(context + ": top-k target count must be >= 1");
        }
        return sel;
    }
    sel.mode = TargetSelection::Mode::Explicit;
    sel.indices = parse_int_list(value, context);
    if (sel.indices.empty()) {
        throw ValidationError(context + ": explicit target list is empty");
    }
    return sel;
}

} // namespace

RunConfig parse_run_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;

    using Setter = std::function<void(std::string_view, const std::string&)>;
    const std::map<std::string, Setter, std::less<>> setters = {
        {"generator_seed", [&](auto v, const auto& c) { cfg.generator_seed = parse_u64(v, c); }},
        {"embedder_seed", [&](auto v, const auto& c) { cfg.embedder_seed = parse_u64(v, c); }},
        {"latent_dim", [&](auto v, const auto& c) { cfg.latent_dim = (int)parse_int(v, c); }},
        {"hidden_dim", [&](auto v, const auto& c) { cfg.hidden_dim = (int)parse_int(v, c); }},
        {"height", [&](auto v, const auto& c) { cfg.height = (int)parse_int(v, c); }},
        {"width", [&](auto v, const auto& c) { cfg.width = (int)parse_int(v, c); }},
        {"embed_dim", [&](auto v, const auto& c) { cfg.embed_dim = (int)parse_int(v, c); }},
        {"dataset_size", [&](auto v, const auto& c) { cfg.dataset_size = (int)parse_int(v, c); }},
        {"pca_target_ratio",
         [&](auto v, const auto& c) { cfg.pca_target_ratio = parse_double(v, c); }},
        {"gmm_components",
         [&](auto v, const auto& c) { cfg.gmm.components = (int)parse_int(v, c); }},
        {"gmm_max_iters",
         [&](auto v, const auto& c) { cfg.gmm.max_iters = (int)parse_int(v, c); }},
        {"gmm_tol", [&](auto v, const auto& c) { cfg.gmm.tol = parse_double(v, c); }},
        {"gmm_reg_covar",
         [&](auto v, const auto& c) { cfg.gmm.reg_covar = parse_double(v, c); }},
        {"gmm_n_init", [&](auto v, const auto& c) { cfg.gmm.n_init = (int)parse_int(v, c); }},
        {"n_pop",
         [&](auto v, const auto& c) { cfg.evolution.population_size = (int)parse_int(v, c); }},
        {"n_gen",
         [&](auto v, const auto& c) { cfg.evolution.generations = (int)parse_int(v, c); }},
        {"n_elite",
         [&](auto v, const auto& c) { cfg.evolution.elite_count = (int)parse_int(v, c); }},
        {"n_new",
         [&](auto v, const auto& c) { cfg.evolution.immigrant_count = (int)parse_int(v, c); }},
        {"n_ts",
         [&](auto v, const auto& c) { cfg.evolution.tournament_size = (int)parse_int(v, c); }},
        {"p_cx", [&](auto v, const auto& c) { cfg.evolution.crossover_rate = parse_double(v, c); }},
        {"p_mut", [&](auto v, const auto& c) { cfg.evolution.mutation_rate = parse_double(v, c); }},
        {"per_gene_mut_prob",
         [&](auto v, const auto& c) { cfg.evolution.per_gene_mutation_prob = parse_double(v, c); }},
        {"seed", [&](auto v, const auto& c) { cfg.seed = parse_u64(v, c); }},
        {"targets", [&](auto v, const auto& c) { cfg.targets = parse_targets(v, c); }},
        {"out_dir", [&](auto v, const auto&) { cfg.out_dir = std::string(v); }},
        {"export_count",
         [&](auto v, const auto& c) { cfg.export_count = (int)parse_int(v, c); }},
        {"sweep_p_cx", [&](auto v, const auto& c) { cfg.sweep_p_cx = parse_double_list(v, c); }},
        {"sweep_p_mut", [&](auto v, const auto& c) { cfg.sweep_p_mut = parse_double_list(v, c); }},
        {"sweep_n_pop", [&](auto v, const auto& c) { cfg.sweep_n_pop = parse_int_list(v, c); }},
        {"sweep_n_ts", [&](auto v, const auto& c) { cfg.sweep_n_ts = parse_int_list(v, c); }},
        {"sweep_runs", [&](auto v, const auto& c) { cfg.sweep_runs = (int)parse_int(v, c); }},
    };

    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        std::string_view content = trim(std::string_view(line).substr(0, hash));
        if (content.empty()) {
            continue;
        }
        const std::string context = origin + ":" + std::to_string(line_no);
        const auto eq = content.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError(context + ": expected 'key = value', got '" +
                                  std::string(content) + "'");
        }
        const auto key = trim(content.substr(0, eq));
        const auto value = trim(content.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ValidationError(context + ": unknown key '" + std::string(key) + "'");
        }
        it->second(value, context + " (" + std::string(key) + ")");
    }

    cfg.evolution.latent_dim = cfg.latent_dim;
    validate_run_config(cfg);
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_text_file(path), path.string());
}

void validate_run_config(const RunConfig& cfg) {
    if (cfg.latent_dim < 1 || cfg.hidden_dim < 1 || cfg.height < 1 || cfg.width < 1 ||
        cfg.embed_dim < 1) {
        throw ValidationError("config: all world dimensions must be >= 1");
    }
    if (cfg.dataset_size < 2) {
        throw ValidationError("config: dataset_size must be >= 2");
    }
    if (cfg.dataset_size < cfg.gmm.components) {
        throw ValidationError("config: dataset_size (" + std::to_string(cfg.dataset_size) +
                              ") must be >= gmm_components (" +
                              std::to_string(cfg.gmm.components) + ")");
    }
    if (!(cfg.pca_target_ratio > 0.0 && cfg.pca_target_ratio <= 1.0)) {
        throw ValidationError("config: pca_target_ratio must lie in (0, 1]");
    }
    if (cfg.export_count < 1) {
        throw ValidationError("config: export_count must be >= 1");
    }
    if (cfg.export_count > cfg.dataset_size) {
        throw ValidationError("config: export_count cannot exceed dataset_size");
    }
    if (cfg.sweep_p_cx.empty() || cfg.sweep_p_mut.empty() || cfg.sweep_n_pop.empty() ||
        cfg.sweep_n_ts.empty() || cfg.sweep_runs < 1) {
        throw ValidationError("config: sweep value lists must be non-empty, sweep_runs >= 1");
    }
    for (const int t : cfg.targets.indices) {
        if (t < 0 || t >= cfg.gmm.components) {
            throw ValidationError("config: target index " + std::to_string(t) +
                                  " out of range [0, " + std::to_string(cfg.gmm.components) +
                                  ")");
        }
    }
    validate_evolution_config(cfg.evolution);
}

} // namespace stylesearch
