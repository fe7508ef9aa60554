#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "stowave/errors.hpp"
#include "stowave/runner.hpp"

namespace {

void print_error(const char* kind, const std::string& message) {
    nlohmann::json diag{{"error", kind}, {"message", message}};
    std::cerr << diag.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathwise solver and estimate checker for a damped stochastic wave model"};
    app.require_subcommand(1);

    const std::pair<const char*, const char*> commands[] = {
        {"validate", "check parameter admissibility and report sigma / epsilon_max"},
        {"simulate", "forward trajectory with the pathwise energy bound"},
        {"pullback", "pullback convergence gaps over an ensemble"},
        {"absorb", "absorbing-ball entry experiment"},
        {"tails", "uniform tail-smallness survey"},
        {"attractor", "pullback attractor surrogate and invariance defects"},
        {"vitali", "convergence-criterion verdicts on lattice families"},
    };
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 1;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "experiment configuration (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "artifact directory (overrides output.directory)");
        sub->add_option("--seed", seed, "master seed (overrides noise.seed)");
        sub->add_option("--threads", threads, "worker threads; never changes results")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_override;
    std::optional<int> threads_override;
    if (sub->count("--seed") > 0) seed_override = seed;
    if (sub->count("--out") > 0) out_override = out_dir;
    if (sub->count("--threads") > 0) threads_override = threads;

    try {
        const stowave::RunConfig cfg =
            stowave::load_config(config_path, seed_override, out_override, threads_override);
        const nlohmann::json summary = stowave::run_subcommand(sub->get_name(), cfg);
        std::cout << summary.dump(2) << "\n";
        return 0;
    } catch (const stowave::ConfigError& e) {
        print_error("config", e.what());
        return 2;
    } catch (const stowave::CheckFailure& e) {
        print_error("check", e.what());
        return 4;
    } catch (const std::exception& e) {
        print_error("runtime", e.what());
        return 3;
    }
}
