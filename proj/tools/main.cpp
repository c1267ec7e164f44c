#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "degenlab/config.hpp"
#include "degenlab/errors.hpp"
#include "degenlab/runner.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration (JSON)")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: from the config)");
    cmd->add_option("--seed", args.seed, "override the config seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--threads", args.threads, "worker threads for independent trials");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degenlab: a desk-scale laboratory for degenerate reaction-diffusion problems"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {"classify",        "verify-inequalities",
                                            "validate-f",      "operator-checks",
                                            "solve",           "strong-limit",
                                            "stability",       "converge"};
    const std::vector<std::string> blurbs = {
        "degeneracy classification of the diffusion coefficient",
        "interpolation/embedding inequality sweeps and adversarial searches",
        "growth and monotonicity bounds of the nonlinearity",
        "self-adjointness and dissipativity of the assembled operator",
        "strict solve by implicit Euler with a Picard fixed point",
        "strong solution by regularized approximation with certificates",
        "stability gaps against the exponential datum bound",
        "convergence orders against known solutions"};

    std::vector<CommonArgs> args(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        attach_common(app.add_subcommand(names[i], blurbs[i]), args[i]);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!app.got_subcommand(names[i])) continue;
        try {
            degenlab::RunConfig cfg = degenlab::RunConfig::from_file(args[i].config_path);
            if (args[i].seed_set) cfg.seed = args[i].seed;
            degenlab::RunOptions opts;
            opts.out_dir = args[i].out_dir.empty() ? cfg.output_dir : args[i].out_dir;
            opts.threads = args[i].threads;
            return degenlab::run_subcommand(names[i], cfg, opts);
        } catch (const degenlab::ConfigError& e) {
            std::cerr << "configuration error: " << e.what() << "\n";
            return 2;
        } catch (const degenlab::IndeterminateError& e) {
            std::cerr << "numerical error: " << e.what() << "\n  sequence:";
            for (double v : e.sequence()) std::cerr << ' ' << v;
            std::cerr << "\n";
            return 3;
        } catch (const degenlab::ConvergenceError& e) {
            std::cerr << "numerical error: " << e.what() << "\n";
            return 3;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 1;
}
