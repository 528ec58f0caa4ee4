#include "sprd/errors.hpp"
#include "sprd/run.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"solver and regularity-verification toolkit for the fourth-order "
                 "singularly perturbed reaction-diffusion two-point boundary value problem"};
    app.require_subcommand(1);

    struct SubArgs {
        std::string config_path;
        std::string out_dir;
        int jobs = 0;
        long long seed = -1;
    };
    SubArgs args;
    const std::pair<const char*, const char*> commands[] = {
        {"solve", "high-accuracy reference solve, writes solution CSVs"},
        {"expand", "build the two-scale expansion, writes decomposition dumps"},
        {"verify", "run the regularity checks, writes report and check CSVs"},
        {"sweep", "verify over the eps list plus convergence table and SVG plots"},
        {"oracle-check", "print the layer/quadrature agreement table"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", args.config_path, "configuration file")->required();
        sub->add_option("--out", args.out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--jobs", args.jobs, "worker threads for eps sweeps");
        sub->add_option("--seed", args.seed,
                        "seed for the random sample points of the property checks");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        sprd::RunConfig config = sprd::load_config(args.config_path);
        if (!args.out_dir.empty()) config.output_dir = args.out_dir;
        if (args.jobs > 0) config.tolerances.jobs = args.jobs;
        if (args.seed >= 0) config.tolerances.seed = static_cast<std::uint64_t>(args.seed);
        const auto command = sprd::command_from_name(app.get_subcommands().front()->get_name());
        return sprd::run_command(*command, config, std::cout);
    } catch (const sprd::ParseError& error) {
        std::cerr << "parse error: " << error.what() << '\n';
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
}
