#include "lgsim/run.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <string>

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

void add_grid_options(CLI::App* cmd, lgsim::RunSpec& spec, bool& degrees) {
    cmd->add_option("--theta-min", spec.theta_min,
                    "start of the theta grid (radians)");
    cmd->add_option("--theta-max", spec.theta_max,
                    "end of the theta grid, inclusive (radians)");
    cmd->add_option("--points", spec.points, "number of grid points (>= 2)");
    cmd->add_flag("--degrees", degrees,
                  "interpret the theta options as degrees");
}

void add_format_option(CLI::App* cmd, lgsim::RunSpec& spec) {
    static const std::map<std::string, lgsim::OutputFormat> formats{
        {"csv", lgsim::OutputFormat::csv},
        {"svg", lgsim::OutputFormat::svg},
        {"both", lgsim::OutputFormat::both}};
    cmd->add_option("--format", spec.format, "output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Leggett-Garg inequality simulator: exact density-matrix sweeps of "
        "the separate-run, single-run (simultaneous) and ideal-negative-"
        "result protocols, classical telegraph baselines, and thermal "
        "ensemble reports.\n"
        "Relative output paths honour the LGSIM_OUTPUT_DIR environment "
        "variable. Angles are radians unless --degrees is given."};
    app.require_subcommand(1);

    lgsim::RunSpec spec;
    bool degrees = false;
    std::uint64_t seed_value = 0;

    static const std::map<std::string, lgsim::CliEngine> engines{
        {"separate", lgsim::CliEngine::separate},
        {"simultaneous", lgsim::CliEngine::simultaneous},
        {"inrm", lgsim::CliEngine::inrm},
        {"classical", lgsim::CliEngine::classical}};

    CLI::App* sweep = app.add_subcommand(
        "sweep", "K(theta) for one engine over a theta grid");
    sweep->add_option("--engine", spec.engine, "correlator engine")
        ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case));
    add_grid_options(sweep, spec, degrees);
    add_format_option(sweep, spec);
    sweep->add_option("--output", spec.output_path,
                      "output file (default sweep.csv)");
    sweep->add_option("--shots", spec.shots,
                      "Monte Carlo shots per correlator (0 = exact)");
    CLI::Option* seed_opt =
        sweep->add_option("--seed", seed_value, "RNG seed for --shots");

    CLI::App* compare = app.add_subcommand(
        "compare",
        "separate-run and single-run K(theta) side by side on one grid");
    add_grid_options(compare, spec, degrees);
    add_format_option(compare, spec);
    compare->add_option("--output", spec.output_path,
                        "output file (default compare.csv)");

    CLI::App* invasiveness = app.add_subcommand(
        "invasiveness",
        "Bloch displacement of |0>, |1> and I/2 after one measurement "
        "interaction, relative to free evolution");
    invasiveness->add_option("--theta", spec.theta,
                             "evolution angle (radians)");
    invasiveness->add_flag("--degrees", degrees,
                           "interpret --theta as degrees");
    invasiveness->add_option("--output", spec.output_path,
                             "output file (default invasiveness.csv)");

    CLI::App* coin = app.add_subcommand(
        "coin",
        "blindfolded-coin demo: the face toggles, the observer state never "
        "changes");
    coin->add_option("--steps", spec.coin_steps, "number of flips (>= 1)");
    coin->add_option("--output", spec.output_path,
                     "output file (default coin.csv)");

    CLI::App* ensemble = app.add_subcommand(
        "ensemble",
        "thermal pseudo-pure polarization and fair-sampling report");
    double moment = spec.thermal.magnetic_moment;
    double field = spec.thermal.field;
    double temperature = spec.thermal.temperature;
    ensemble->add_option("--moment", moment,
                         "magnetic moment in J/T (default: proton)");
    ensemble->add_option("--field", field, "magnetic field in tesla");
    ensemble->add_option("--temperature", temperature,
                         "temperature in kelvin");
    ensemble->add_option("--output", spec.output_path,
                         "output file (default ensemble.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return lgsim::kExitBadSpec;
    }

    if (sweep->parsed()) spec.command = lgsim::Command::sweep;
    if (compare->parsed()) spec.command = lgsim::Command::compare;
    if (invasiveness->parsed()) spec.command = lgsim::Command::invasiveness;
    if (coin->parsed()) spec.command = lgsim::Command::coin;
    if (ensemble->parsed()) {
        spec.command = lgsim::Command::ensemble;
        try {
            spec.thermal = lgsim::ThermalParams(moment, field, temperature);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return lgsim::kExitBadSpec;
        }
    }
    if (seed_opt->count() > 0) spec.seed = seed_value;
    if (degrees) {
        spec.theta_min *= kDegToRad;
        spec.theta_max *= kDegToRad;
        spec.theta *= kDegToRad;
    }

    return lgsim::run(spec);
}
