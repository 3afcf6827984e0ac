
/* sensor.hpp */

#ifndef CDOS_SENSOR_HPP
#define CDOS_SENSOR_HPP

#include "cdos/world.hpp"

#include <optional>
#include <vector>

namespace cdos {

/* One ray per degree of field of view, endpoints inclusive */
int DefaultRayCount(double fov);

/* IR range finder */
struct IrConfig
{
    /* Total angular width (radians) */
    double fov = 0.0;
    /* Maximum sensing range (meters) */
    double maxRange = 0.0;
    int rayCount = 2;

    void Validate() const;
};

/* Monocular camera modeled as a 2D range finder with distance-driven
 * detection confidence conf = min(1, eta / d) */
struct CameraConfig
{
    double fov = 0.0;
    double maxRange = 0.0;
    /* Confidence proportionality constant (meters) */
    double eta = 0.0;
    int rayCount = 2;

    /* Constants of the pixel-per-meter distance model d = k / ppm used
     * with real cameras; the simulator measures d geometrically. */
    double intrinsicK = 0.0;
    double pixelsPerMeter = 0.0;

    void Validate() const;
};

/* Evenly spaced beam angles across [heading - fov/2, heading + fov/2] */
std::vector<double> BeamAngles(double heading, double fov, int rayCount);

struct IrBeam
{
    double angle = 0.0;
    double range = 0.0;
    bool hit = false;
    /* Free cells crossed before the end of the beam */
    std::vector<Cell> freeCells;
    /* Cell that stopped the beam, when it lies inside the map */
    std::optional<Cell> hitCell;
};

struct IrScan
{
    Pose origin;
    std::vector<IrBeam> beams;
};

enum class CellRelation { SeenFree, SeenBlocked };

struct SweptCell
{
    Cell cell;
    CellRelation relation = CellRelation::SeenFree;
};

struct Detection
{
    Cell cell;
    double distance = 0.0;
    double confidence = 0.0;
};

struct CameraObservation
{
    Pose origin;
    /* Unique cells, sorted row-major */
    std::vector<SweptCell> swept;
    std::optional<Detection> detection;
};

/* Clamped confidence min(1, eta / d); d <= 0 yields 1 */
double DetectionConfidence(double eta, double distance);

IrScan ScanIr(const GridWorld& world, const Pose& pose, const IrConfig& cfg);

CameraObservation ObserveCamera(const GridWorld& world, const Pose& pose,
                                const CameraConfig& cfg);

/* True if the target cell center lies in the camera wedge, within range,
 * and the ray through the center reaches it unoccluded */
bool TargetVisible(const GridWorld& world, const Pose& pose,
                   const CameraConfig& cfg, const Cell& target,
                   double& distance);

} // namespace cdos

#endif // CDOS_SENSOR_HPP
