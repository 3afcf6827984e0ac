
/* curiosity.hpp */

#ifndef CDOS_CURIOSITY_HPP
#define CDOS_CURIOSITY_HPP

#include "cdos/mapping.hpp"
#include "cdos/sensor.hpp"
#include "cdos/world.hpp"

#include <span>
#include <vector>

namespace cdos {

/* Inverted-U curiosity c(p) = -(p + a)^2 / (4b) + kappa */
struct CuriosityParams
{
    double a = -0.5;
    /* Stiffness */
    double b = 0.1;
    /* Peak value */
    double kappa = 0.62;

    void Validate() const;
};

/* Curiosity of a cell with object probability p, floored at 0.
 * Throws std::domain_error for p outside [0, 1]. */
double CellCuriosity(double p, const CuriosityParams& params);

/* Sum of cell curiosities over the classified object map */
double TotalCuriosity(const ObjectMap& objects, const CuriosityParams& params);

/* Observation expected from a pose at distance dNext given the current
 * value p observed at distance dNow: min(1, p * dNow / dNext).
 * Throws std::domain_error on non-positive distances. */
double PredictObservation(double p, double dNow, double dNext);

/* Distances below this fraction of a cell are raised to it before the
 * distance ratio is formed, so a candidate standing on a cell does not
 * divide by zero */
inline constexpr double MinPredictionDistanceCells = 0.5;

/* Belief cells the camera would sweep from a pose; rays stop at cells the
 * occupancy map labels occupied. Row-major, unique. */
std::vector<Cell> PredictedCameraCells(const OccupancyMap& occupancy,
                                       const Pose& pose,
                                       const CameraConfig& cam);

/* Pose the robot would hold on arrival at a candidate cell: the cell
 * center, facing along the straight line from the current pose */
Pose CandidatePose(const OccupancyMap& occupancy, const Pose& current,
                   const Cell& candidate);

/* Expected drop in total curiosity if the robot moves to the candidate.
 * Each previously swept cell in the predicted camera wedge that still
 * carries curiosity gets a predicted observation scaled from its raw
 * posterior, which is fused into a scratch copy of its log-odds,
 * re-classified and re-scored. */
double ExpectedCuriosityLoss(const ObjectMap& objects,
                             const OccupancyMap& occupancy,
                             const Pose& current,
                             const Cell& candidate,
                             const CameraConfig& cam,
                             const CuriosityParams& params);

struct FrontierChoice
{
    std::size_t index = 0;
    Cell frontier;
    double loss = 0.0;
    /* Loss of every candidate, parallel to the input list */
    std::vector<double> losses;
};

/* True if a and b are equal up to a relative 1e-9 */
bool LossesTie(double a, double b);

/* Index of the best candidate: largest loss, then smaller distance, then
 * row-major cell order. Losses within LossesTie count as equal. */
std::size_t ArgmaxLoss(std::span<const double> losses,
                       std::span<const double> distances,
                       std::span<const Cell> cells);

/* Picks the local frontier with the largest expected curiosity loss.
 * Throws std::invalid_argument when the list is empty. */
FrontierChoice SelectFrontier(std::span<const Cell> localFrontiers,
                              const ObjectMap& objects,
                              const OccupancyMap& occupancy,
                              const Pose& current,
                              const CameraConfig& cam,
                              const CuriosityParams& params);

} // namespace cdos

#endif // CDOS_CURIOSITY_HPP
