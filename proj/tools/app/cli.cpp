#include "cli.hpp"

#include "commands.hpp"

#include "affrigid/affrigid.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <thread>

namespace affrigid::app {

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectra of the quantized affinely-rigid body"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    const char* env_dir = std::getenv("AFFRIGID_OUTPUT_DIR");
    std::string output_dir = env_dir && *env_dir ? env_dir : ".";
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::uint64_t seed = 0;
    std::string config_path;
    std::string suite = "all";

    app.add_option("-o,--output-dir", output_dir, "Directory for result files (default $AFFRIGID_OUTPUT_DIR or .)");
    app.add_option("-j,--jobs", jobs, "Channels solved in parallel")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "Overrides the configured seed");

    auto with_config = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("-c,--config", config_path, "Config file or run manifest")->required();
        return sub;
    };
    auto* run = with_config("run", "Solve every configured channel and write the spectrum table");
    auto* scan = with_config("scan-threshold", "Ground energies and threshold classification of planar channels");
    auto* conv = with_config("convergence", "Refinement study with observed orders");
    auto* verify = app.add_subcommand("verify", "Run the built-in property suites");
    verify->fallthrough();
    verify->add_option("suite", suite, "Suite name")->check(CLI::IsMember(verify_suites()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Context ctx;
    ctx.output_dir = output_dir;
    ctx.jobs = jobs;
    ctx.argv.assign(argv, argv + argc);
    ctx.out = &out;
    ctx.err = &err;

    try {
        if (verify->parsed())
            return command_verify(suite, *seed_opt ? seed : RunConfig{}.seed, ctx);
        RunConfig config = load_config(config_path);
        if (*seed_opt)
            config.seed = seed;
        if (run->parsed())
            return command_run(config, ctx);
        if (scan->parsed())
            return command_scan(config, ctx);
        if (conv->parsed())
            return command_convergence(config, ctx);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kPartial;
    }
    return kUsage;
}

} // namespace affrigid::app
