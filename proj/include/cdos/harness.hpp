
/* harness.hpp */

#ifndef CDOS_HARNESS_HPP
#define CDOS_HARNESS_HPP

#include "cdos/explorer.hpp"
#include "cdos/mission.hpp"
#include "cdos/world.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdos {

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig
{
    /* Paths are resolved against baseDir when relative. An empty map
     * path leaves that map out of the experiment. */
    std::string baseDir = ".";
    std::string sparseMap = "sparse.map";
    std::string denseMap = "dense.map";
    std::string zones = "zones.txt";

    int samplesPerZone = 20;
    std::uint64_t seed = 1;
    /* Radians */
    std::vector<double> alphas;
    std::vector<double> betas;

    double dIr = 3.0;
    double dCam = 3.0;
    /* conf = eta / d beyond eta */
    double eta = 1.425;

    double lambda1 = 0.10;
    double lambda2 = 0.95;
    double curiosityA = -0.5;
    double curiosityB = 0.1;
    double curiosityKappa = 0.62;
    double pHit = 0.7;
    double pMiss = 0.35;
    double pMissCam = 0.3;

    double maxVelocity = 2.0;
    double rotationPenalty = 0.0;
    double budget = 600.0;
    double detectionThreshold = 0.95;

    /* Mission only */
    double dMin = 0.2;
    double tetherLength = 5.0;
    double tetherL0 = 2.1;
    double uavHeight = 2.0;
    double tetherSpeed = 0.5;

    int threads = 1;

    ExperimentConfig();
    void Validate() const;

    double Alpha() const { return alphas.front(); }
    double Beta() const { return betas.front(); }
    std::string Resolve(const std::string& path) const;
};

/* Key-value text, one `key = value` per line, '#' starts a comment.
 * Lists are comma separated. Angles go in `alpha`/`beta` (radians) or
 * `alpha_deg`/`beta_deg`. Unknown keys are errors. */
ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       const std::string& baseDir = ".");
ExperimentConfig LoadExperimentConfig(const std::string& path);
/* Canonical text form accepted by ParseExperimentConfig */
std::string FormatExperimentConfig(const ExperimentConfig& cfg);

ExplorerConfig MakeExplorerConfig(const ExperimentConfig& cfg,
                                  double alpha, double beta);
MissionConfig MakeMissionConfig(const ExperimentConfig& cfg, Method method);

struct TrialRecord
{
    std::string map;
    int zone = 0;
    int sample = 0;
    Cell placement;
    Method method = Method::Cdos;
    double alpha = 0.0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    double deltaT = 0.0;
    bool found = false;
    Termination termination = Termination::FrontiersExhausted;
    int steps = 0;
    double pathLength = 0.0;
};

/* Orders by map, zone, sample, method */
bool TrialLess(const TrialRecord& a, const TrialRecord& b);

struct ZoneAggregate
{
    std::string map;
    int zone = 0;
    Method method = Method::Cdos;
    int trials = 0;
    int found = 0;
    /* Over found trials only; NaN when none was found */
    double mean = 0.0;
    /* Sample standard deviation; 0 for fewer than two found trials */
    double stddev = 0.0;
};

struct ZoneExperiment
{
    std::vector<TrialRecord> trials;
    std::vector<ZoneAggregate> aggregates;

    const ZoneAggregate& Find(const std::string& map, int zone, Method m) const;
};

struct MeanStd
{
    int count = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

/* Mean and sample standard deviation of the found trials' delta t */
MeanStd FoundStats(const std::vector<const TrialRecord*>& trials);

/* Placement seed for one (map, zone) pair, shared by every method and
 * field of view so all runs see the same placements */
std::uint64_t PlacementSeed(std::uint64_t seed, int mapIndex, int zoneId);

/* Runs every (map, zone, placement, method) trial at the first alpha and
 * beta of the config */
ZoneExperiment RunZoneExperiment(const ExperimentConfig& cfg);
ZoneExperiment RunZoneExperiment(const ExperimentConfig& cfg,
                                 double alpha, double beta);

enum class SweepAxis { Alpha, Beta };

SweepAxis ParseSweepAxis(const std::string& name);
const char* SweepAxisName(SweepAxis a);

struct SweepRow
{
    std::string map;
    double alpha = 0.0;
    double beta = 0.0;
    Method method = Method::Cdos;
    int trials = 0;
    int found = 0;
    /* Pooled over every zone */
    double mean = 0.0;
    double stddev = 0.0;
};

struct SweepResult
{
    SweepAxis axis = SweepAxis::Alpha;
    std::vector<SweepRow> rows;
    std::vector<TrialRecord> trials;

    const SweepRow& Find(const std::string& map, double value, Method m) const;
};

/* Varies one field of view over its config list while the other stays
 * at its first value. Needs at least two values. */
SweepResult RunFovSweep(const ExperimentConfig& cfg, SweepAxis axis);

/* RFC 4180 field: quoted when it holds a comma, quote or line break */
std::string CsvField(std::string_view text);

std::string TrialsCsv(const std::vector<TrialRecord>& trials);
std::string AggregateCsv(const std::vector<ZoneAggregate>& rows);
std::string SweepCsv(const SweepResult& sweep);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view data);

} // namespace cdos

#endif // CDOS_HARNESS_HPP
