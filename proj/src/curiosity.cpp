
/* curiosity.cpp */

#include "cdos/curiosity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdos {

void CuriosityParams::Validate() const
{
    if (!(b > 0.0))
        throw std::invalid_argument("curiosity stiffness b must be positive");
}

double CellCuriosity(double p, const CuriosityParams& params)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("probability outside [0, 1]");
    const double shifted = p + params.a;
    return std::max(0.0, -(shifted * shifted) / (4.0 * params.b) + params.kappa);
}

double TotalCuriosity(const ObjectMap& objects, const CuriosityParams& params)
{
    double total = 0.0;
    for (std::size_t i = 0; i < objects.CellCount(); ++i)
        total += CellCuriosity(objects.Classified(i), params);
    return total;
}

double PredictObservation(double p, double dNow, double dNext)
{
    if (!(dNow > 0.0) || !(dNext > 0.0))
        throw std::domain_error("distances must be positive");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("probability outside [0, 1]");
    return std::min(1.0, p * dNow / dNext);
}

Pose CandidatePose(const OccupancyMap& occupancy, const Pose& current,
                   const Cell& candidate)
{
    const double cs = occupancy.CellSize();
    const double x = (candidate.col + 0.5) * cs;
    const double y = (candidate.row + 0.5) * cs;
    const double dx = x - current.x;
    const double dy = y - current.y;
    const double heading = (dx == 0.0 && dy == 0.0)
        ? current.heading : WrapTwoPi(std::atan2(dy, dx));
    return { x, y, heading };
}

std::vector<Cell> PredictedCameraCells(const OccupancyMap& occupancy,
                                       const Pose& pose,
                                       const CameraConfig& cam)
{
    std::vector<char> seen(occupancy.CellCount(), 0);
    std::vector<Cell> cells;
    const auto blocked = [&occupancy](const Cell& c) {
        return occupancy.IsOccupied(c); };

    for (const double angle : BeamAngles(pose.heading, cam.fov, cam.rayCount)) {
        const RayTrace trace = TraceRayWith(
            occupancy.Width(), occupancy.Height(), occupancy.CellSize(),
            pose.x, pose.y, angle, cam.maxRange, blocked);
        for (const Cell& c : trace.traversed) {
            char& flag = seen[occupancy.Index(c)];
            if (!flag) {
                flag = 1;
                cells.push_back(c);
            }
        }
    }

    std::sort(cells.begin(), cells.end());
    return cells;
}

double ExpectedCuriosityLoss(const ObjectMap& objects,
                             const OccupancyMap& occupancy,
                             const Pose& current,
                             const Cell& candidate,
                             const CameraConfig& cam,
                             const CuriosityParams& params)
{
    const Pose next = CandidatePose(occupancy, current, candidate);
    const double cs = occupancy.CellSize();
    const double floor = MinPredictionDistanceCells * cs;
    const double lambda1 = objects.Params().lambda1;
    const double lambda2 = objects.Params().lambda2;

    double loss = 0.0;
    for (const Cell& c : PredictedCameraCells(occupancy, next, cam)) {
        const std::size_t i = objects.Index(c);
        /* A cell the camera never swept has no measurement to extrapolate */
        if (!objects.Observed(i))
            continue;
        const double pNow = objects.Classified(i);
        const double before = CellCuriosity(pNow, params);
        if (before <= 0.0)
            continue;

        const double cx = (c.col + 0.5) * cs;
        const double cy = (c.row + 0.5) * cs;
        const double dNow = std::max(floor, std::hypot(cx - current.x, cy - current.y));
        const double dNext = std::max(floor, std::hypot(cx - next.x, cy - next.y));

        /* The prediction scales the posterior itself; the snapped value
         * would turn every unknown cell into a 0.5 reading */
        const double predicted = PredictObservation(
            objects.RawProbability(i), dNow, dNext);
        const double fused = std::clamp(
            objects.LogOdds(i) + EvidenceLogOdds(predicted),
            -LogOddsLimit, LogOddsLimit);
        const double after = CellCuriosity(
            ClassifyObjectProbability(LogOddsToProbability(fused), lambda1, lambda2),
            params);
        loss += before - after;
    }
    return loss;
}

bool LossesTie(double a, double b)
{
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

std::size_t ArgmaxLoss(std::span<const double> losses,
                       std::span<const double> distances,
                       std::span<const Cell> cells)
{
    if (losses.empty())
        throw std::invalid_argument("no candidates");

    double best = losses[0];
    for (const double l : losses)
        best = std::max(best, l);

    std::size_t chosen = losses.size();
    for (std::size_t i = 0; i < losses.size(); ++i) {
        if (!LossesTie(losses[i], best))
            continue;
        if (chosen == losses.size() ||
            distances[i] < distances[chosen] ||
            (distances[i] == distances[chosen] && cells[i] < cells[chosen]))
            chosen = i;
    }
    return chosen;
}

FrontierChoice SelectFrontier(std::span<const Cell> localFrontiers,
                              const ObjectMap& objects,
                              const OccupancyMap& occupancy,
                              const Pose& current,
                              const CameraConfig& cam,
                              const CuriosityParams& params)
{
    if (localFrontiers.empty())
        throw std::invalid_argument("empty local frontier set");

    const double cs = occupancy.CellSize();
    FrontierChoice choice;
    std::vector<double> distances;
    choice.losses.reserve(localFrontiers.size());
    distances.reserve(localFrontiers.size());

    for (const Cell& f : localFrontiers) {
        choice.losses.push_back(
            ExpectedCuriosityLoss(objects, occupancy, current, f, cam, params));
        distances.push_back(std::hypot((f.col + 0.5) * cs - current.x,
                                       (f.row + 0.5) * cs - current.y));
    }

    choice.index = ArgmaxLoss(choice.losses, distances, localFrontiers);
    choice.frontier = localFrontiers[choice.index];
    choice.loss = choice.losses[choice.index];
    return choice;
}

} // namespace cdos
