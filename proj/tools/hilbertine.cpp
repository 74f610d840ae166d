// hilbertine <subcommand> --config <path> [--out <dir>] [--seed <int>] [--tol <float>]
//
// Exit status: 0 success, 2 configuration error, 3 numerical non-convergence,
// 4 input rejected by the library (degenerate or incompatible geometry), 1 other.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr int kOk = 0, kOther = 1, kConfig = 2, kNumerical = 3, kInput = 4;

}  // namespace

int main(int argc, char** argv) {
    using namespace hilbertine::cli;
    CLI::App app{"Hilbert geometry experiments on convex domains of the projective plane"};
    app.require_subcommand(1);

    std::string config;
    std::string out = ".";
    std::uint64_t seed = 1;
    double tol = 0.0;

    using Handler = void (*)(Fields, const Options&);
    const std::pair<const char*, Handler> commands[] = {
        {"distance", cmd_distance},   {"classify", cmd_classify}, {"volume", cmd_volume}, {"tile", cmd_tile},
        {"dual", cmd_dual},           {"limit-set", cmd_limit_set}, {"run", cmd_run},
    };
    const char* help[] = {"Hilbert distance between two points",
                          "Dynamical family of a projective transformation",
                          "Busemann volume of a region or truncation profile of a pic",
                          "Dirichlet-Lee domain of a group with bisectors and translates",
                          "Dual domain",
                          "Limit-set point cloud of a group",
                          "Run an experiment (ideal-triangle-scan, cusp-profile, dirichlet-tiling)"};
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        CLI::App* s = app.add_subcommand(commands[i].first, help[i]);
        s->add_option("--config", config, "JSON config file")->required();
        s->add_option("--out", out, "Output directory");
        s->add_option("--seed", seed, "Random seed for sampled diagnostics");
        s->add_option("--tol", tol, "Tolerance override");
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    Options opt;
    opt.out = out;
    opt.seed = seed;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        if (subs[i]->count("--tol")) opt.tol = tol;
        try {
            const Json j = load_json(config);
            commands[i].second(Fields(j, "config"), opt);
            return kOk;
        } catch (const hilbertine::Error& e) {
            std::cerr << "error [" << hilbertine::to_string(e.code()) << "]: " << e.what() << "\n";
            switch (e.code()) {
            case hilbertine::ErrorCode::ConfigError: return kConfig;
            case hilbertine::ErrorCode::NonConvergent: return kNumerical;
            default: return kInput;
            }
        } catch (const Json::exception& e) {
            std::cerr << "error [ConfigError]: " << e.what() << "\n";
            return kConfig;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kOther;
        }
    }
    return kOther;
}
