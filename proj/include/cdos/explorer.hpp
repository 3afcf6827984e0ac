
/* explorer.hpp */

#ifndef CDOS_EXPLORER_HPP
#define CDOS_EXPLORER_HPP

#include "cdos/curiosity.hpp"
#include "cdos/mapping.hpp"
#include "cdos/planner.hpp"
#include "cdos/sensor.hpp"
#include "cdos/world.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cdos {

/* Raised when a run breaks one of the simulator's guarantees */
class InvariantViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

struct MotionConfig
{
    /* m/s */
    double maxVelocity = 2.0;
    /* Seconds charged per full in-place rotation */
    double rotationPenalty = 0.0;

    void Validate() const;
};

struct FrontierSet
{
    /* Global frontiers, row-major */
    std::vector<Cell> global;
    /* Subset inside the IR wedge */
    std::vector<Cell> local;
};

/* Free cells with at least one unknown 4-neighbor, row-major */
std::vector<Cell> DetectFrontiers(const OccupancyMap& map);

/* Frontiers whose center lies within the IR range and angular wedge of
 * the pose; occlusion is not considered */
std::vector<Cell> LocalFrontiers(const std::vector<Cell>& global,
                                 const OccupancyMap& map,
                                 const Pose& pose, const IrConfig& ir);

enum class Method { Cdos, RapidFrontier };

const char* MethodName(Method m);
Method ParseMethod(const std::string& name);

struct ExplorerConfig
{
    IrConfig ir;
    CameraConfig camera;
    OccupancyParams occupancy;
    ObjectParams object;
    CuriosityParams curiosity;
    MotionConfig motion;
    /* Simulated seconds */
    double budget = 600.0;
    double detectionThreshold = 0.95;

    void Validate() const;
};

/* Defaults for a given pair of fields of view and a shared sensor range */
ExplorerConfig DefaultExplorerConfig(double alpha, double beta, double range);

enum class StepKind { Local, Global };

struct StepRecord
{
    int step = 0;
    Pose pose;
    Cell frontier;
    StepKind kind = StepKind::Local;
    /* Expected curiosity loss of the chosen frontier (0 for global moves
     * and for the baseline) */
    double loss = 0.0;
    double totalCuriosity = 0.0;
    /* Mission time when the decision was taken */
    double elapsed = 0.0;
    /* Planned path length to the chosen frontier */
    double pathLength = 0.0;
    std::size_t globalCount = 0;
    std::size_t localCount = 0;
};

enum class Termination { Found, FrontiersExhausted, BudgetExhausted };

const char* TerminationName(Termination t);

struct ExplorationResult
{
    ExplorationResult(OccupancyMap g, ObjectMap o) :
        occupancy(std::move(g)), objects(std::move(o)) {}

    OccupancyMap occupancy;
    ObjectMap objects;
    double deltaT = 0.0;
    bool found = false;
    std::optional<Cell> targetEstimate;
    double detectionConfidence = 0.0;
    Termination termination = Termination::FrontiersExhausted;
    std::vector<Pose> trajectory;
    std::vector<StepRecord> steps;
    double pathLength = 0.0;
};

/* Runs one search from the world's start pose. CDOS picks local
 * frontiers by expected curiosity loss; the rapid-frontier baseline
 * picks the local frontier needing the least heading change. Both fall
 * back to the nearest global frontier by path cost. Throws
 * InvariantViolation if the trajectory enters an occupied cell. */
ExplorationResult Explore(const GridWorld& world, const ExplorerConfig& cfg,
                          Method method);

inline ExplorationResult ExploreCdos(const GridWorld& world,
                                     const ExplorerConfig& cfg)
{
    return Explore(world, cfg, Method::Cdos);
}

inline ExplorationResult ExploreRapidFrontier(const GridWorld& world,
                                              const ExplorerConfig& cfg)
{
    return Explore(world, cfg, Method::RapidFrontier);
}

/* One JSON object per line: steps, then trajectory summary */
std::string StepLogJsonLines(const ExplorationResult& result, Method method);

} // namespace cdos

#endif // CDOS_EXPLORER_HPP
