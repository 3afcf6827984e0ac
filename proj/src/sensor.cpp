
/* sensor.cpp */

#include "cdos/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace cdos {

namespace {

constexpr double TwoPi = 2.0 * std::numbers::pi;
/* Slack for wedge membership tests on beam endpoints */
constexpr double AngleSlack = 1e-12;

void ValidateWedge(double fov, double maxRange, int rayCount)
{
    if (!(fov > 0.0) || fov > TwoPi + AngleSlack)
        throw std::invalid_argument("field of view must be in (0, 2pi]");
    if (!(maxRange > 0.0))
        throw std::invalid_argument("max range must be positive");
    if (rayCount < 2)
        throw std::invalid_argument("ray count must be at least 2");
}

} // namespace

int DefaultRayCount(double fov)
{
    const double degrees = fov * 180.0 / std::numbers::pi;
    return std::max(2, static_cast<int>(std::ceil(degrees - 1e-9)) + 1);
}

void IrConfig::Validate() const
{
    ValidateWedge(fov, maxRange, rayCount);
}

void CameraConfig::Validate() const
{
    ValidateWedge(fov, maxRange, rayCount);
    if (!(eta > 0.0))
        throw std::invalid_argument("eta must be positive");
}

std::vector<double> BeamAngles(double heading, double fov, int rayCount)
{
    std::vector<double> angles(rayCount);
    const double first = heading - 0.5 * fov;
    const double step = fov / (rayCount - 1);
    for (int i = 0; i < rayCount; ++i)
        angles[i] = first + step * i;
    return angles;
}

double DetectionConfidence(double eta, double distance)
{
    if (distance <= eta)
        return 1.0;
    return eta / distance;
}

IrScan ScanIr(const GridWorld& world, const Pose& pose, const IrConfig& cfg)
{
    cfg.Validate();

    IrScan scan;
    scan.origin = pose;
    scan.beams.reserve(cfg.rayCount);

    for (const double angle : BeamAngles(pose.heading, cfg.fov, cfg.rayCount)) {
        RayTrace trace = TraceRay(world, pose.x, pose.y, angle, cfg.maxRange);
        IrBeam beam;
        beam.angle = angle;
        beam.hit = trace.result.hit;
        beam.range = trace.result.hit ? trace.result.distance : cfg.maxRange;
        beam.freeCells = std::move(trace.traversed);
        if (trace.result.hit && world.Contains(trace.result.cell))
            beam.hitCell = trace.result.cell;
        scan.beams.push_back(std::move(beam));
    }

    return scan;
}

bool TargetVisible(const GridWorld& world, const Pose& pose,
                   const CameraConfig& cfg, const Cell& target,
                   double& distance)
{
    const double dx = world.CenterX(target) - pose.x;
    const double dy = world.CenterY(target) - pose.y;
    distance = std::hypot(dx, dy);

    if (distance > cfg.maxRange)
        return false;
    if (distance == 0.0)
        return true;

    const double bearing = std::atan2(dy, dx);
    if (std::abs(WrapPi(bearing - pose.heading)) > 0.5 * cfg.fov + AngleSlack)
        return false;

    const RayHit hit = RayCast(world, pose, bearing, distance);
    return !hit.hit;
}

CameraObservation ObserveCamera(const GridWorld& world, const Pose& pose,
                                const CameraConfig& cfg)
{
    cfg.Validate();

    CameraObservation obs;
    obs.origin = pose;

    std::map<Cell, CellRelation> swept;
    for (const double angle : BeamAngles(pose.heading, cfg.fov, cfg.rayCount)) {
        const RayTrace trace = TraceRay(world, pose.x, pose.y, angle, cfg.maxRange);
        for (const Cell& c : trace.traversed)
            swept.emplace(c, CellRelation::SeenFree);
        if (trace.result.hit && world.Contains(trace.result.cell))
            swept[trace.result.cell] = CellRelation::SeenBlocked;
    }

    obs.swept.reserve(swept.size());
    for (const auto& [cell, relation] : swept)
        obs.swept.push_back({ cell, relation });

    if (const auto& target = world.Target()) {
        double distance = 0.0;
        if (TargetVisible(world, pose, cfg, *target, distance))
            obs.detection = Detection {
                *target, distance, DetectionConfidence(cfg.eta, distance) };
    }

    return obs;
}

} // namespace cdos
