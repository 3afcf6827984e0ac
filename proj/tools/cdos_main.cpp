
/* cdos_main.cpp */

#include "cdos/harness.hpp"
#include "cdos/mission.hpp"
#include "cdos/render.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

using namespace cdos;

namespace {

constexpr double DegToRad = std::numbers::pi / 180.0;

struct SingleRunOptions
{
    std::string map;
    std::string config;
    std::string method = "cdos";
    std::optional<double> alphaDeg;
    std::optional<double> betaDeg;
    std::uint64_t seed = 1;
    std::string render;
    std::string out = "out";
};

ExperimentConfig BaseConfig(const std::string& path)
{
    return path.empty() ? ExperimentConfig() : LoadExperimentConfig(path);
}

/* Loads the map and, if it has no target, draws one uniformly from the
 * free cells other than the start */
GridWorld LoadWorldWithTarget(const std::string& path, std::uint64_t seed)
{
    GridWorld world = LoadMapFile(path);
    if (world.Target())
        return world;

    Zone freeCells;
    for (std::size_t i = 0; i < world.CellCount(); ++i) {
        const Cell c = world.CellAt(i);
        if (world.At(c) == Terrain::Free && !(c == world.Start()))
            freeCells.cells.push_back(c);
    }
    if (freeCells.cells.empty())
        throw ConfigError("map has no free cell to place the target on");
    world.SetTarget(SampleZonePoints(freeCells, 1, seed).front());
    return world;
}

void ApplyFov(ExperimentConfig& cfg, const SingleRunOptions& o)
{
    if (o.alphaDeg)
        cfg.alphas = { *o.alphaDeg * DegToRad };
    if (o.betaDeg)
        cfg.betas = { *o.betaDeg * DegToRad };
    cfg.Validate();
}

std::string Join(const std::string& dir, const std::string& name)
{
    return dir.empty() ? name : dir + "/" + name;
}

int RunExplore(const SingleRunOptions& o)
{
    ExperimentConfig cfg = BaseConfig(o.config);
    ApplyFov(cfg, o);
    std::optional<RenderFormat> format;
    if (!o.render.empty())
        format = ParseRenderFormat(o.render);
    const Method method = ParseMethod(o.method);

    const GridWorld world = LoadWorldWithTarget(o.map, o.seed);
    const ExplorationResult r =
        Explore(world, MakeExplorerConfig(cfg, cfg.Alpha(), cfg.Beta()), method);

    const std::string log = StepLogJsonLines(r, method);
    fmt::print("{}", log);
    if (format) {
        const RenderedMaps maps = RenderMaps(r, *format);
        const char* ext = RenderExtension(*format);
        WriteTextFile(Join(o.out, fmt::format("occupancy.{}", ext)), maps.occupancy);
        WriteTextFile(Join(o.out, fmt::format("objects.{}", ext)), maps.objects);
        WriteTextFile(Join(o.out, fmt::format("combined.{}", ext)), maps.combined);
        WriteTextFile(Join(o.out, "steps.jsonl"), log);
    }
    return 0;
}

int RunMissionCommand(const SingleRunOptions& o)
{
    ExperimentConfig cfg = BaseConfig(o.config);
    ApplyFov(cfg, o);
    const GridWorld world = LoadWorldWithTarget(o.map, o.seed);
    const MissionTrace trace =
        RunMission(world, MakeMissionConfig(cfg, ParseMethod(o.method)));
    fmt::print("{}", MissionTraceJsonLines(trace));
    return 0;
}

void PrintAggregates(const std::vector<ZoneAggregate>& rows)
{
    fmt::print("{:<8} {:>4} {:<9} {:>6} {:>6} {:>10} {:>10}\n", "map", "zone",
               "method", "trials", "found", "mean_dt", "std_dt");
    for (const ZoneAggregate& a : rows)
        fmt::print("{:<8} {:>4} {:<9} {:>6} {:>6} {:>10.3f} {:>10.3f}\n", a.map,
                   a.zone, MethodName(a.method), a.trials, a.found, a.mean, a.stddev);
}

int RunZones(const std::string& config, const std::string& out,
             std::optional<int> threads)
{
    ExperimentConfig cfg = LoadExperimentConfig(config);
    if (threads)
        cfg.threads = *threads;
    const ZoneExperiment z = RunZoneExperiment(cfg);
    WriteTextFile(Join(out, "trials.csv"), TrialsCsv(z.trials));
    WriteTextFile(Join(out, "aggregate.csv"), AggregateCsv(z.aggregates));
    PrintAggregates(z.aggregates);
    return 0;
}

int RunSweep(const std::string& config, const std::string& vary,
             const std::vector<double>& valuesDeg, const std::string& out,
             std::optional<int> threads)
{
    ExperimentConfig cfg = LoadExperimentConfig(config);
    if (threads)
        cfg.threads = *threads;
    const SweepAxis axis = ParseSweepAxis(vary);
    if (!valuesDeg.empty()) {
        std::vector<double>& list = axis == SweepAxis::Alpha ? cfg.alphas : cfg.betas;
        /* Keep the held value of the other axis, replace the swept list */
        list.clear();
        for (const double v : valuesDeg)
            list.push_back(v * DegToRad);
        cfg.Validate();
    }
    const SweepResult s = RunFovSweep(cfg, axis);
    WriteTextFile(Join(out, "sweep.csv"), SweepCsv(s));
    WriteTextFile(Join(out, "sweep_trials.csv"), TrialsCsv(s.trials));

    fmt::print("{:<8} {:>8} {:>8} {:<9} {:>6} {:>10}\n", "map", "alpha", "beta",
               "method", "found", "mean_dt");
    for (const SweepRow& r : s.rows)
        fmt::print("{:<8} {:>8.1f} {:>8.1f} {:<9} {:>6} {:>10.3f}\n", r.map,
                   r.alpha / DegToRad, r.beta / DegToRad, MethodName(r.method),
                   r.found, r.mean);
    return 0;
}

void AddSingleRunOptions(CLI::App* cmd, SingleRunOptions& o)
{
    cmd->add_option("--map", o.map, "Map file")->required();
    cmd->add_option("--config", o.config, "Experiment config for the parameters");
    cmd->add_option("--method", o.method, "cdos or baseline");
    cmd->add_option("--alpha", o.alphaDeg, "Camera fov in degrees");
    cmd->add_option("--beta", o.betaDeg, "IR fov in degrees");
    cmd->add_option("--seed", o.seed, "Seed for the target placement when the map has none");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app { "Curiosity-driven object search simulator" };
    app.require_subcommand(1);

    SingleRunOptions exploreOpts;
    CLI::App* explore = app.add_subcommand("explore", "Run one search");
    AddSingleRunOptions(explore, exploreOpts);
    explore->add_option("--render", exploreOpts.render, "Write maps as ascii or pgm");
    explore->add_option("--out", exploreOpts.out, "Directory for rendered maps");

    SingleRunOptions missionOpts;
    CLI::App* mission = app.add_subcommand("mission", "Run a full mission trace");
    AddSingleRunOptions(mission, missionOpts);

    std::string config;
    std::string out = "out";
    std::optional<int> threads;
    CLI::App* zones = app.add_subcommand("zones", "Run the zone experiment");
    zones->add_option("--config", config, "Experiment config")->required();
    zones->add_option("--out", out, "Output directory");
    zones->add_option("--threads", threads, "Worker threads");

    std::string vary;
    std::vector<double> values;
    CLI::App* sweep = app.add_subcommand("sweep", "Sweep one field of view");
    sweep->add_option("--config", config, "Experiment config")->required();
    sweep->add_option("--vary", vary, "alpha or beta")->required();
    sweep->add_option("--values", values, "Field of view values in degrees");
    sweep->add_option("--out", out, "Output directory");
    sweep->add_option("--threads", threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*explore)
            return RunExplore(exploreOpts);
        if (*mission)
            return RunMissionCommand(missionOpts);
        if (*zones)
            return RunZones(config, out, threads);
        if (*sweep)
            return RunSweep(config, vary, values, out, threads);
    } catch (const InvariantViolation& e) {
        fmt::print(stderr, "invariant violation: {}\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 1;
}
