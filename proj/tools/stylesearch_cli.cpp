// Command-line front end for the stylesearch shared library. Exit codes:
// 0 success, 2 config/validation error, 1 runtime error.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "stylesearch.h"

namespace {

int exit_code_for(ss_status status) {
    switch (status) {
        case SS_OK:
            return 0;
        case SS_ERR_INVALID_ARGUMENT:
        case SS_ERR_DIMENSION_MISMATCH:
            return 2;
        case SS_ERR_IO:
        case SS_ERR_RUNTIME:
            return 1;
    }
    return 1;
}

int report(ss_status status, const char* command) {
    if (status != SS_OK) {
        std::fprintf(stderr, "stylesearch %s: %s: %s\n", command, ss_status_name(status),
                     ss_last_error());
    }
    return exit_code_for(status);
}

struct ConfigDeleter {
    void operator()(ss_config* config) const { ss_config_free(config); }
};
using ConfigPtr = std::unique_ptr<ss_config, ConfigDeleter>;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary search for style-coherent designs in a generative latent space"};
    app.require_subcommand(1);
    app.fallthrough();  // common flags may follow the subcommand name

    std::string config_path;
    std::string model_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int target = 0;

    app.add_option("--config", config_path, "Path to the run configuration file")
        ->required()
        ->group("Common");
    app.add_option("--out", out_dir, "Output directory (overrides the config's out_dir)")
        ->group("Common");
    auto* seed_opt =
        app.add_option("--seed", seed, "Master seed override (overrides the config's seed)")
            ->group("Common");

    auto* fit = app.add_subcommand("fit", "Build the synthetic dataset and fit the style model");
    auto* evolve = app.add_subcommand("evolve", "Evolve latent vectors toward a target style");
    auto* sweep = app.add_subcommand("sweep", "Run the full GA parameter grid");
    auto* baseline =
        app.add_subcommand("baseline", "Budget-matched random sampling for comparison");
    auto* exp = app.add_subcommand("export", "Export the training designs closest to a style");

    for (CLI::App* sub : {evolve, baseline, exp}) {
        sub->add_option("--model", model_path, "Path to a fitted style-model file")->required();
        sub->add_option("--target", target, "Style component index")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems are validation errors
    }
    seed_set = seed_opt->count() > 0;

    ss_config* raw_config = nullptr;
    if (ss_status s = ss_config_load(config_path.c_str(), &raw_config); s != SS_OK) {
        return report(s, "config");
    }
    ConfigPtr config(raw_config);
    if (seed_set) {
        ss_config_set_seed(config.get(), seed);
    }
    const char* out = out_dir.empty() ? nullptr : out_dir.c_str();

    if (fit->parsed()) {
        const ss_status s = ss_cmd_fit(config.get(), out);
        if (s == SS_OK) {
            std::printf("model %s/style_model.txt\n",
                        out ? out : ss_config_out_dir(config.get()));
        }
        return report(s, "fit");
    }
    if (evolve->parsed()) {
        double best = 0.0;
        const ss_status s = ss_cmd_evolve(config.get(), model_path.c_str(), target, out, &best);
        if (s == SS_OK) {
            std::printf("best_fitness %.17g\n", best);
        }
        return report(s, "evolve");
    }
    if (sweep->parsed()) {
        return report(ss_cmd_sweep(config.get(), out), "sweep");
    }
    if (baseline->parsed()) {
        double best = 0.0;
        const ss_status s = ss_cmd_baseline(config.get(), model_path.c_str(), target, out, &best);
        if (s == SS_OK) {
            std::printf("best_fitness %.17g\n", best);
        }
        return report(s, "baseline");
    }
    if (exp->parsed()) {
        const int count = ss_config_export_count(config.get());
        return report(ss_cmd_export(config.get(), model_path.c_str(), target, count, out),
                      "export");
    }
    return 2;
}
