// Exit-code and flag behavior of the command-line tool. Takes the CLI binary
// path as argv[1].

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::fprintf(stderr, "FAIL: %s\n", what.c_str());
    }
}

int run(const std::string& command) {
    const int status = std::system(command.c_str());
    return (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
        return 1;
    }
    const std::string cli = argv[1];
    const fs::path base = fs::temp_directory_path() / "stylesearch_cli_test";
    fs::remove_all(base);
    fs::create_directories(base);
    const std::string quiet = " > /dev/null 2>&1";

    const fs::path cfg = base / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "latent_dim = 6\nhidden_dim = 8\nheight = 6\nwidth = 6\nembed_dim = 12\n"
               "dataset_size = 120\ngmm_components = 3\nn_pop = 12\nn_gen = 5\nn_new = 2\n"
               "seed = 3\ntargets = top:2\n";
    }

    expect(run(cli + " --help" + quiet) == 0, "--help exits 0");
    expect(run(cli + " fit" + quiet) == 2, "missing --config exits 2");
    expect(run(cli + " nonsense --config " + cfg.string() + quiet) == 2,
           "unknown subcommand exits 2");
    expect(run(cli + " fit --config " + (base / "missing.cfg").string() + quiet) == 1,
           "unreadable config exits 1");

    const fs::path bad_cfg = base / "bad.cfg";
    {
        std::ofstream out(bad_cfg);
        out << "latent_dim = frog\n";
    }
    expect(run(cli + " fit --config " + bad_cfg.string() + quiet) == 2,
           "malformed config exits 2");

    const fs::path out_a = base / "a";
    expect(run(cli + " fit --config " + cfg.string() + " --out " + out_a.string() + quiet) == 0,
           "fit exits 0");
    const fs::path model = out_a / "style_model.txt";
    expect(fs::exists(model), "fit writes style_model.txt");

    expect(run(cli + " evolve --config " + cfg.string() + " --model " + model.string() +
               " --target 0 --out " + out_a.string() + quiet) == 0,
           "evolve exits 0");
    expect(run(cli + " evolve --config " + cfg.string() + " --model " + model.string() +
               " --target 99 --out " + out_a.string() + quiet) == 2,
           "out-of-range target exits 2");
    expect(run(cli + " evolve --config " + cfg.string() + " --model " +
               (base / "no_model.txt").string() + " --target 0" + quiet) == 1,
           "missing model file exits 1");

    // --seed overrides the config's master seed: models from different seeds differ
    const fs::path out_b = base / "b";
    const fs::path out_c = base / "c";
    expect(run(cli + " fit --config " + cfg.string() + " --seed 1001 --out " +
               out_b.string() + quiet) == 0,
           "fit with --seed exits 0");
    expect(run(cli + " fit --config " + cfg.string() + " --seed 1002 --out " +
               out_c.string() + quiet) == 0,
           "fit with another --seed exits 0");
    expect(slurp(out_b / "style_model.txt") != slurp(out_c / "style_model.txt"),
           "--seed changes the fitted model");
    expect(slurp(out_a / "style_model.txt") != slurp(out_b / "style_model.txt"),
           "--seed overrides the config seed");

    if (failures == 0) {
        std::printf("test_cli: all checks passed\n");
        return 0;
    }
    std::fprintf(stderr, "test_cli: %d check(s) failed\n", failures);
    return 1;
}
