
/* harness.cpp */

#include "cdos/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <fmt/format.h>

namespace cdos {

namespace {

constexpr double DegToRad = std::numbers::pi / 180.0;

std::string_view Trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double ParseDouble(std::string_view text, const std::string& key)
{
    text = Trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError(fmt::format("'{}': '{}' is not a number", key, text));
    return v;
}

std::uint64_t ParseUnsigned(std::string_view text, const std::string& key)
{
    text = Trim(text);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size())
        throw ConfigError(fmt::format("'{}': '{}' is not a non-negative integer",
                                      key, text));
    return v;
}

int ParseCount(std::string_view text, const std::string& key)
{
    const std::uint64_t v = ParseUnsigned(text, key);
    if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw ConfigError(fmt::format("'{}' is too large", key));
    return static_cast<int>(v);
}

std::vector<double> ParseList(std::string_view text, const std::string& key,
                              double scale)
{
    std::vector<double> values;
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = text.find(',', begin);
        const std::string_view item = text.substr(
            begin, comma == std::string_view::npos ? std::string_view::npos
                                                   : comma - begin);
        values.push_back(ParseDouble(item, key) * scale);
        if (comma == std::string_view::npos)
            break;
        begin = comma + 1;
    }
    return values;
}

std::string JoinList(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? ", " : "") + fmt::format("{}", values[i]);
    return out;
}

std::string Num(double v)
{
    return std::isnan(v) ? std::string() : fmt::format("{}", v);
}

/* Fixed index per map name so seeds do not shift when a map is left out */
struct MapEntry
{
    std::string id;
    int index = 0;
    GridWorld world;
    std::vector<Zone> zones;
};

std::vector<MapEntry> LoadMaps(const ExperimentConfig& cfg)
{
    std::vector<MapEntry> maps;
    const std::pair<const char*, const std::string*> named[] = {
        { "sparse", &cfg.sparseMap }, { "dense", &cfg.denseMap } };
    for (int i = 0; i < 2; ++i) {
        if (named[i].second->empty())
            continue;
        GridWorld world = LoadMapFile(cfg.Resolve(*named[i].second));
        std::vector<Zone> zones = LoadZonesFile(cfg.Resolve(cfg.zones), world);
        maps.push_back({ named[i].first, i, std::move(world), std::move(zones) });
    }
    return maps;
}

/* Runs job(i) for i in [0, count) on up to `threads` workers. The first
 * exception thrown by any job is rethrown once all workers stop. */
void ParallelFor(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& job)
{
    const std::size_t workers =
        std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            job(i);
        return;
    }

    std::atomic<std::size_t> next { 0 };
    std::atomic<bool> failed { false };
    std::exception_ptr error;
    std::mutex errorLock;

    const auto worker = [&]() {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errorLock);
                if (!error)
                    error = std::current_exception();
                failed = true;
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);
}

const Method Methods[] = { Method::Cdos, Method::RapidFrontier };

std::vector<TrialRecord> RunTrials(const ExperimentConfig& cfg,
                                   const std::vector<MapEntry>& maps,
                                   double alpha, double beta)
{
    const ExplorerConfig explorer = MakeExplorerConfig(cfg, alpha, beta);

    struct Job
    {
        const MapEntry* map;
        int zone;
        int sample;
        Cell placement;
        Method method;
    };
    std::vector<Job> jobs;
    for (const MapEntry& m : maps) {
        for (const Zone& z : m.zones) {
            if (z.cells.empty())
                throw ConfigError(fmt::format("zone {} has no free cell on map '{}'",
                                              z.id, m.id));
            const std::vector<Cell> points = SampleZonePoints(
                z, cfg.samplesPerZone, PlacementSeed(cfg.seed, m.index, z.id));
            for (int s = 0; s < cfg.samplesPerZone; ++s)
                for (const Method method : Methods)
                    jobs.push_back({ &m, z.id, s, points[s], method });
        }
    }

    std::vector<TrialRecord> records(jobs.size());
    ParallelFor(jobs.size(), cfg.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        if (job.map->world.At(job.placement) != Terrain::Free)
            throw ConfigError("zone placement on an occupied cell");
        GridWorld world = job.map->world;
        world.SetTarget(job.placement);
        const ExplorationResult r = Explore(world, explorer, job.method);

        TrialRecord& rec = records[i];
        rec.map = job.map->id;
        rec.zone = job.zone;
        rec.sample = job.sample;
        rec.placement = job.placement;
        rec.method = job.method;
        rec.alpha = alpha;
        rec.beta = beta;
        rec.seed = cfg.seed;
        rec.deltaT = r.deltaT;
        rec.found = r.found;
        rec.termination = r.termination;
        rec.steps = static_cast<int>(r.steps.size());
        rec.pathLength = r.pathLength;
    });

    std::sort(records.begin(), records.end(), TrialLess);
    return records;
}

int MapOrder(const std::string& id)
{
    return id == "sparse" ? 0 : id == "dense" ? 1 : 2;
}

} // namespace

ExperimentConfig::ExperimentConfig() :
    alphas { 60.0 * DegToRad },
    betas { 30.0 * DegToRad }
{
}

std::string ExperimentConfig::Resolve(const std::string& path) const
{
    const std::filesystem::path p(path);
    if (p.is_absolute())
        return path;
    return (std::filesystem::path(baseDir) / p).lexically_normal().string();
}

void ExperimentConfig::Validate() const
{
    if (sparseMap.empty() && denseMap.empty())
        throw ConfigError("no map configured");
    if (zones.empty())
        throw ConfigError("no zone file configured");
    if (samplesPerZone < 1)
        throw ConfigError("samples_per_zone must be at least 1");
    if (alphas.empty() || betas.empty())
        throw ConfigError("alpha and beta lists must not be empty");
    if (threads < 1)
        throw ConfigError("threads must be at least 1");
    try {
        for (const double a : alphas)
            for (const double b : betas)
                MakeExplorerConfig(*this, a, b).Validate();
        MakeMissionConfig(*this, Method::Cdos).Validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       const std::string& baseDir)
{
    ExperimentConfig cfg;
    cfg.baseDir = baseDir;

    using Setter = std::function<void(ExperimentConfig&, std::string_view,
                                      const std::string&)>;
    const auto real = [](double ExperimentConfig::*field) -> Setter {
        return [field](ExperimentConfig& c, std::string_view v, const std::string& k) {
            c.*field = ParseDouble(v, k);
        };
    };
    const auto text_ = [](std::string ExperimentConfig::*field) -> Setter {
        return [field](ExperimentConfig& c, std::string_view v, const std::string&) {
            c.*field = std::string(v);
        };
    };
    const auto list = [](std::vector<double> ExperimentConfig::*field,
                         double scale) -> Setter {
        return [field, scale](ExperimentConfig& c, std::string_view v,
                              const std::string& k) {
            c.*field = ParseList(v, k, scale);
        };
    };

    const std::map<std::string, Setter> setters = {
        { "sparse_map", text_(&ExperimentConfig::sparseMap) },
        { "dense_map", text_(&ExperimentConfig::denseMap) },
        { "zones", text_(&ExperimentConfig::zones) },
        { "samples_per_zone", [](ExperimentConfig& c, std::string_view v,
                                 const std::string& k) {
              c.samplesPerZone = ParseCount(v, k); } },
        { "seed", [](ExperimentConfig& c, std::string_view v, const std::string& k) {
              c.seed = ParseUnsigned(v, k); } },
        { "threads", [](ExperimentConfig& c, std::string_view v, const std::string& k) {
              c.threads = ParseCount(v, k); } },
        { "alpha", list(&ExperimentConfig::alphas, 1.0) },
        { "beta", list(&ExperimentConfig::betas, 1.0) },
        { "alpha_deg", list(&ExperimentConfig::alphas, DegToRad) },
        { "beta_deg", list(&ExperimentConfig::betas, DegToRad) },
        { "d_ir", real(&ExperimentConfig::dIr) },
        { "d_cam", real(&ExperimentConfig::dCam) },
        { "eta", real(&ExperimentConfig::eta) },
        { "lambda1", real(&ExperimentConfig::lambda1) },
        { "lambda2", real(&ExperimentConfig::lambda2) },
        { "curiosity_a", real(&ExperimentConfig::curiosityA) },
        { "curiosity_b", real(&ExperimentConfig::curiosityB) },
        { "curiosity_kappa", real(&ExperimentConfig::curiosityKappa) },
        { "p_hit", real(&ExperimentConfig::pHit) },
        { "p_miss", real(&ExperimentConfig::pMiss) },
        { "p_miss_cam", real(&ExperimentConfig::pMissCam) },
        { "max_velocity", real(&ExperimentConfig::maxVelocity) },
        { "rotation_penalty", real(&ExperimentConfig::rotationPenalty) },
        { "budget", real(&ExperimentConfig::budget) },
        { "detection_threshold", real(&ExperimentConfig::detectionThreshold) },
        { "d_min", real(&ExperimentConfig::dMin) },
        { "tether_length", real(&ExperimentConfig::tetherLength) },
        { "tether_l0", real(&ExperimentConfig::tetherL0) },
        { "uav_height", real(&ExperimentConfig::uavHeight) },
        { "tether_speed", real(&ExperimentConfig::tetherSpeed) },
    };

    std::map<std::string, int> seen;
    int lineNo = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(begin, end - begin);
        begin = end + 1;
        ++lineNo;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = Trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(fmt::format("line {}: expected 'key = value'", lineNo));
        const std::string key(Trim(line.substr(0, eq)));
        const std::string_view value = Trim(line.substr(eq + 1));

        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError(fmt::format("line {}: unknown key '{}'", lineNo, key));
        /* alpha and alpha_deg name the same field */
        std::string field = key;
        if (field.ends_with("_deg"))
            field.resize(field.size() - 4);
        if (seen[field]++)
            throw ConfigError(fmt::format("line {}: '{}' given twice", lineNo, field));
        it->second(cfg, value, key);
    }

    cfg.Validate();
    return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::string& path)
{
    std::string text;
    try {
        text = ReadTextFile(path);
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }
    const std::filesystem::path dir = std::filesystem::path(path).parent_path();
    return ParseExperimentConfig(text, dir.empty() ? "." : dir.string());
}

std::string FormatExperimentConfig(const ExperimentConfig& c)
{
    std::string out;
    const auto put = [&out](const char* key, const std::string& value) {
        out += fmt::format("{} = {}\n", key, value);
    };
    put("sparse_map", c.sparseMap);
    put("dense_map", c.denseMap);
    put("zones", c.zones);
    put("samples_per_zone", fmt::format("{}", c.samplesPerZone));
    put("seed", fmt::format("{}", c.seed));
    put("threads", fmt::format("{}", c.threads));
    put("alpha", JoinList(c.alphas));
    put("beta", JoinList(c.betas));
    put("d_ir", Num(c.dIr));
    put("d_cam", Num(c.dCam));
    put("eta", Num(c.eta));
    put("lambda1", Num(c.lambda1));
    put("lambda2", Num(c.lambda2));
    put("curiosity_a", Num(c.curiosityA));
    put("curiosity_b", Num(c.curiosityB));
    put("curiosity_kappa", Num(c.curiosityKappa));
    put("p_hit", Num(c.pHit));
    put("p_miss", Num(c.pMiss));
    put("p_miss_cam", Num(c.pMissCam));
    put("max_velocity", Num(c.maxVelocity));
    put("rotation_penalty", Num(c.rotationPenalty));
    put("budget", Num(c.budget));
    put("detection_threshold", Num(c.detectionThreshold));
    put("d_min", Num(c.dMin));
    put("tether_length", Num(c.tetherLength));
    put("tether_l0", Num(c.tetherL0));
    put("uav_height", Num(c.uavHeight));
    put("tether_speed", Num(c.tetherSpeed));
    return out;
}

ExplorerConfig MakeExplorerConfig(const ExperimentConfig& c, double alpha, double beta)
{
    ExplorerConfig e;
    e.ir = { beta, c.dIr, DefaultRayCount(beta) };
    e.camera.fov = alpha;
    e.camera.maxRange = c.dCam;
    e.camera.eta = c.eta;
    e.camera.rayCount = DefaultRayCount(alpha);
    e.occupancy.pHit = c.pHit;
    e.occupancy.pMiss = c.pMiss;
    e.object.lambda1 = c.lambda1;
    e.object.lambda2 = c.lambda2;
    e.object.pMissCam = c.pMissCam;
    e.curiosity = { c.curiosityA, c.curiosityB, c.curiosityKappa };
    e.motion.maxVelocity = c.maxVelocity;
    e.motion.rotationPenalty = c.rotationPenalty;
    e.budget = c.budget;
    e.detectionThreshold = c.detectionThreshold;
    return e;
}

MissionConfig MakeMissionConfig(const ExperimentConfig& c, Method method)
{
    MissionConfig m;
    m.explorer = MakeExplorerConfig(c, c.Alpha(), c.Beta());
    m.method = method;
    m.tether = { c.tetherLength, c.tetherL0, 0.0, c.uavHeight };
    m.tetherSpeed = c.tetherSpeed;
    m.dMin = c.dMin;
    return m;
}

bool TrialLess(const TrialRecord& a, const TrialRecord& b)
{
    const auto key = [](const TrialRecord& r) {
        return std::make_tuple(MapOrder(r.map), r.map, r.zone, r.sample,
                               static_cast<int>(r.method));
    };
    return key(a) < key(b);
}

MeanStd FoundStats(const std::vector<const TrialRecord*>& trials)
{
    MeanStd s;
    double sum = 0.0;
    for (const TrialRecord* t : trials) {
        if (t->found) {
            sum += t->deltaT;
            ++s.count;
        }
    }
    if (s.count == 0) {
        s.mean = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    s.mean = sum / s.count;
    if (s.count > 1) {
        double sq = 0.0;
        for (const TrialRecord* t : trials)
            if (t->found)
                sq += (t->deltaT - s.mean) * (t->deltaT - s.mean);
        s.stddev = std::sqrt(sq / (s.count - 1));
    }
    return s;
}

std::uint64_t PlacementSeed(std::uint64_t seed, int mapIndex, int zoneId)
{
    /* splitmix64 finalizer over a packed key */
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull *
        (1 + static_cast<std::uint64_t>(mapIndex) * 1024 + static_cast<std::uint64_t>(zoneId));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

const ZoneAggregate& ZoneExperiment::Find(const std::string& map, int zone,
                                          Method m) const
{
    for (const ZoneAggregate& a : aggregates)
        if (a.map == map && a.zone == zone && a.method == m)
            return a;
    throw std::out_of_range(fmt::format("no aggregate for map '{}' zone {}", map, zone));
}

ZoneExperiment RunZoneExperiment(const ExperimentConfig& cfg)
{
    return RunZoneExperiment(cfg, cfg.Alpha(), cfg.Beta());
}

ZoneExperiment RunZoneExperiment(const ExperimentConfig& cfg, double alpha, double beta)
{
    cfg.Validate();
    const std::vector<MapEntry> maps = LoadMaps(cfg);

    ZoneExperiment out;
    out.trials = RunTrials(cfg, maps, alpha, beta);

    std::map<std::tuple<int, std::string, int, int>, std::vector<const TrialRecord*>> groups;
    for (const TrialRecord& t : out.trials)
        groups[{ MapOrder(t.map), t.map, t.zone, static_cast<int>(t.method) }]
            .push_back(&t);

    for (const auto& [key, members] : groups) {
        const MeanStd s = FoundStats(members);
        ZoneAggregate a;
        a.map = std::get<1>(key);
        a.zone = std::get<2>(key);
        a.method = static_cast<Method>(std::get<3>(key));
        a.trials = static_cast<int>(members.size());
        a.found = s.count;
        a.mean = s.mean;
        a.stddev = s.stddev;
        out.aggregates.push_back(a);
    }
    return out;
}

SweepAxis ParseSweepAxis(const std::string& name)
{
    if (name == "alpha")
        return SweepAxis::Alpha;
    if (name == "beta")
        return SweepAxis::Beta;
    throw ConfigError("sweep axis must be 'alpha' or 'beta', got '" + name + "'");
}

const char* SweepAxisName(SweepAxis a)
{
    return a == SweepAxis::Alpha ? "alpha" : "beta";
}

const SweepRow& SweepResult::Find(const std::string& map, double value, Method m) const
{
    for (const SweepRow& r : rows) {
        const double v = axis == SweepAxis::Alpha ? r.alpha : r.beta;
        if (r.map == map && r.method == m && std::abs(v - value) < 1e-9)
            return r;
    }
    throw std::out_of_range(fmt::format("no sweep row for map '{}' at {}", map, value));
}

SweepResult RunFovSweep(const ExperimentConfig& cfg, SweepAxis axis)
{
    cfg.Validate();
    const std::vector<double>& values = axis == SweepAxis::Alpha ? cfg.alphas : cfg.betas;
    if (values.size() < 2)
        throw ConfigError(fmt::format("a {} sweep needs at least two values",
                                      SweepAxisName(axis)));
    const std::vector<MapEntry> maps = LoadMaps(cfg);

    SweepResult out;
    out.axis = axis;
    for (const double v : values) {
        const double alpha = axis == SweepAxis::Alpha ? v : cfg.Alpha();
        const double beta = axis == SweepAxis::Beta ? v : cfg.Beta();
        const std::vector<TrialRecord> trials = RunTrials(cfg, maps, alpha, beta);

        for (const MapEntry& m : maps) {
            for (const Method method : Methods) {
                std::vector<const TrialRecord*> members;
                for (const TrialRecord& t : trials)
                    if (t.map == m.id && t.method == method)
                        members.push_back(&t);
                const MeanStd s = FoundStats(members);
                out.rows.push_back({ m.id, alpha, beta, method,
                                     static_cast<int>(members.size()),
                                     s.count, s.mean, s.stddev });
            }
        }
        out.trials.insert(out.trials.end(), trials.begin(), trials.end());
    }
    return out;
}

std::string CsvField(std::string_view text)
{
    if (text.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(text);
    std::string out = "\"";
    for (const char ch : text) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string TrialsCsv(const std::vector<TrialRecord>& trials)
{
    std::string out = "map,zone,sample,placement_col,placement_row,method,alpha,beta,"
                      "seed,delta_t,found,termination,steps,path_length\n";
    for (const TrialRecord& t : trials) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                           CsvField(t.map), t.zone, t.sample, t.placement.col,
                           t.placement.row, MethodName(t.method), Num(t.alpha),
                           Num(t.beta), t.seed, Num(t.deltaT), t.found ? 1 : 0,
                           TerminationName(t.termination), t.steps,
                           Num(t.pathLength));
    }
    return out;
}

std::string AggregateCsv(const std::vector<ZoneAggregate>& rows)
{
    std::string out = "map,zone,method,trials,found,not_found,mean_delta_t,stddev_delta_t\n";
    for (const ZoneAggregate& a : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", CsvField(a.map), a.zone,
                           MethodName(a.method), a.trials, a.found,
                           a.trials - a.found, Num(a.mean), Num(a.stddev));
    }
    return out;
}

std::string SweepCsv(const SweepResult& sweep)
{
    std::string out = "vary,map,alpha,beta,method,trials,found,not_found,"
                      "mean_delta_t,stddev_delta_t\n";
    for (const SweepRow& r : sweep.rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", SweepAxisName(sweep.axis),
                           CsvField(r.map), Num(r.alpha), Num(r.beta),
                           MethodName(r.method), r.trials, r.found,
                           r.trials - r.found, Num(r.mean), Num(r.stddev));
    }
    return out;
}

std::string ReadTextFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(fmt::format("cannot open '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void WriteTextFile(const std::string& path, std::string_view data)
{
    const std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigError(fmt::format("cannot write '{}'", path));
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out)
        throw ConfigError(fmt::format("failed writing '{}'", path));
}

} // namespace cdos
