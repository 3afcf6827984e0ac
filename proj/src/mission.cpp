
/* mission.cpp */

#include "cdos/mission.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include <json.hpp>

namespace cdos {

void TetherState::Validate() const
{
    if (!(zW > 0.0))
        throw std::invalid_argument("UAV height must be positive");
    if (!(L > 0.0) || !(l0 > 0.0) || l0 > L)
        throw std::invalid_argument("require 0 < l0 <= L");
}

const char* TetherModeName(TetherMode m)
{
    switch (m) {
    case TetherMode::Aerial:
        return "aerial";
    case TetherMode::Landing:
        return "landing";
    case TetherMode::Ground:
        return "ground";
    }
    return "unknown";
}

TetherMode ModeFromTether(const TetherState& t)
{
    if (t.lt < 0.0 || t.lt > t.L)
        throw std::out_of_range("released tether length outside [0, L]");
    if (t.lt == 0.0)
        return TetherMode::Aerial;
    if (t.lt <= t.zW || t.lt < t.l0)
        return TetherMode::Landing;
    return TetherMode::Ground;
}

const char* MissionPhaseName(MissionPhase p)
{
    switch (p) {
    case MissionPhase::AerialExploration:
        return "aerial_exploration";
    case MissionPhase::Landing:
        return "landing";
    case MissionPhase::HiddenExploration:
        return "hidden_exploration";
    case MissionPhase::ObjectTracking:
        return "object_tracking";
    case MissionPhase::Grabbing:
        return "grabbing";
    case MissionPhase::Retracting:
        return "retracting";
    case MissionPhase::AerialContinue:
        return "aerial_continue";
    case MissionPhase::Complete:
        return "complete";
    }
    return "unknown";
}

const char* MissionEventName(MissionEventKind k)
{
    switch (k) {
    case MissionEventKind::HiddenSpaceFound:
        return "hidden_space_found";
    case MissionEventKind::Touchdown:
        return "touchdown";
    case MissionEventKind::Detection:
        return "detection";
    case MissionEventKind::FrontiersExhausted:
        return "frontiers_exhausted";
    case MissionEventKind::WithinDMin:
        return "within_d_min";
    case MissionEventKind::GrabComplete:
        return "grab_complete";
    case MissionEventKind::RetractComplete:
        return "retract_complete";
    case MissionEventKind::ResumeSearch:
        return "resume_search";
    }
    return "unknown";
}

RejectedTransition::RejectedTransition(MissionPhase phase,
                                       const MissionEvent& event) :
    std::logic_error(fmt::format("event '{}' is not accepted in phase '{}'",
                                 MissionEventName(event.kind),
                                 MissionPhaseName(phase))),
    mPhase(phase),
    mEvent(event.kind)
{
}

MissionPhase StepMission(MissionPhase phase, const MissionEvent& event,
                         double detectionThreshold)
{
    using P = MissionPhase;
    using E = MissionEventKind;

    switch (phase) {
    case P::AerialExploration:
        if (event.kind == E::HiddenSpaceFound)
            return P::Landing;
        break;
    case P::Landing:
        if (event.kind == E::Touchdown)
            return P::HiddenExploration;
        break;
    case P::HiddenExploration:
        if (event.kind == E::Detection && event.confidence > detectionThreshold)
            return P::ObjectTracking;
        if (event.kind == E::FrontiersExhausted)
            return P::Retracting;
        break;
    case P::ObjectTracking:
        if (event.kind == E::WithinDMin)
            return P::Grabbing;
        break;
    case P::Grabbing:
        if (event.kind == E::GrabComplete)
            return P::Retracting;
        break;
    case P::Retracting:
        if (event.kind == E::RetractComplete)
            return event.objectAboard ? P::Complete : P::AerialContinue;
        break;
    case P::AerialContinue:
        if (event.kind == E::ResumeSearch)
            return P::AerialExploration;
        break;
    case P::Complete:
        break;
    }
    throw RejectedTransition(phase, event);
}

GrabResult GrabManeuver(const Pose& pose, const Cell& target, double cellSize,
                        const MotionConfig& motion, double dMin)
{
    motion.Validate();
    const double tx = (target.col + 0.5) * cellSize;
    const double ty = (target.row + 0.5) * cellSize;
    const double dist = std::hypot(tx - pose.x, ty - pose.y);
    if (dist > dMin + 1e-12)
        throw std::invalid_argument(
            fmt::format("target is {:.3f} m away, grab needs at most {:.3f} m",
                        dist, dMin));

    /* Face away from the object so the rear gripper leads */
    const double facing = dist > 0.0 ? std::atan2(ty - pose.y, tx - pose.x)
                                     : pose.heading;
    GrabResult out;
    out.pose = { tx, ty, WrapTwoPi(facing + std::numbers::pi) };
    out.time = motion.rotationPenalty + dist / motion.maxVelocity;
    return out;
}

void MissionConfig::Validate() const
{
    explorer.Validate();
    tether.Validate();
    if (!(tetherSpeed > 0.0))
        throw std::invalid_argument("tether speed must be positive");
    if (!(dMin > 0.0))
        throw std::invalid_argument("d_min must be positive");
}

namespace {

class MissionRun
{
public:
    MissionRun(const GridWorld& world, const MissionConfig& cfg) :
        mWorld(world),
        mCfg(cfg),
        mPose(world.StartPose())
    {
        mTrace.records.push_back(Record(""));
    }

    void Fire(const MissionEvent& event)
    {
        mPhase = StepMission(mPhase, event, mCfg.explorer.detectionThreshold);
        mTrace.records.push_back(Record(MissionEventName(event.kind)));
    }

    MissionTrace Run();

private:
    MissionRecord Record(const char* event) const
    {
        TetherState t = mCfg.tether;
        t.lt = mTether;
        return { mTime, mPhase, event, mTether, ModeFromTether(t), mPose };
    }

    /* Drives home over the belief map, widened by every cell the robot
     * is known to have crossed */
    void DriveHome(const ExplorationResult& result,
                   const std::vector<Cell>& extraFree);

    const GridWorld& mWorld;
    const MissionConfig& mCfg;
    MissionTrace mTrace;
    MissionPhase mPhase = MissionPhase::AerialExploration;
    double mTime = 0.0;
    double mTether = 0.0;
    Pose mPose;
};

void MissionRun::DriveHome(const ExplorationResult& result,
                           const std::vector<Cell>& extraFree)
{
    OccupancyMap known = result.occupancy;
    const auto markFree = [&known](const Cell& c) {
        if (!known.IsFree(c))
            known.Update(c, 1e-3);
    };
    for (const Pose& p : result.trajectory)
        markFree(mWorld.CellOf(p.x, p.y));
    for (const Cell& c : extraFree)
        markFree(c);

    const Cell here = mWorld.CellOf(mPose.x, mPose.y);
    const std::optional<GridPath> path = PlanPath(known, mWorld.Start(), here);
    if (!path)
        throw InvariantViolation("no known route back to the start cell");
    for (const Cell& c : path->cells)
        if (mWorld.IsOccupied(c))
            throw InvariantViolation("return route crosses an occupied cell");

    mTime += path->cost / mCfg.explorer.motion.maxVelocity;
    mPose = mWorld.StartPose();
}

MissionTrace MissionRun::Run()
{
    const double v = mCfg.explorer.motion.maxVelocity;

    Fire({ MissionEventKind::HiddenSpaceFound });
    mTime += mCfg.tether.l0 / mCfg.tetherSpeed;
    mTether = mCfg.tether.l0;
    Fire({ MissionEventKind::Touchdown });

    const ExplorationResult result =
        Explore(mWorld, mCfg.explorer, mCfg.method);
    mTime += result.deltaT;
    mTrace.searchTime = result.deltaT;
    mPose = result.trajectory.back();

    if (result.found) {
        Fire({ MissionEventKind::Detection, result.detectionConfidence });

        /* Straight approach along the detection ray, stopping at dMin */
        const Cell target = *result.targetEstimate;
        const double tx = mWorld.CenterX(target);
        const double ty = mWorld.CenterY(target);
        const double dist = std::hypot(tx - mPose.x, ty - mPose.y);
        const double bearing = std::atan2(ty - mPose.y, tx - mPose.x);
        std::vector<Cell> crossed;
        if (dist > mCfg.dMin) {
            const double travel = dist - mCfg.dMin;
            const RayTrace ray = TraceRay(mWorld, mPose.x, mPose.y, bearing, travel);
            if (ray.result.hit)
                throw InvariantViolation("object approach blocked");
            crossed = ray.traversed;
            mPose = { mPose.x + travel * std::cos(bearing),
                      mPose.y + travel * std::sin(bearing),
                      WrapTwoPi(bearing) };
            mTime += travel / v;
        }
        Fire({ MissionEventKind::WithinDMin });

        const GrabResult grab = GrabManeuver(mPose, target, mWorld.CellSize(),
                                             mCfg.explorer.motion, mCfg.dMin);
        mTime += grab.time;
        mPose = grab.pose;
        crossed.push_back(target);
        Fire({ MissionEventKind::GrabComplete });

        DriveHome(result, crossed);
        mTime += mTether / mCfg.tetherSpeed;
        mTether = 0.0;
        Fire({ MissionEventKind::RetractComplete, 0.0, true });
        mTrace.objectRetrieved = true;
    } else {
        Fire({ MissionEventKind::FrontiersExhausted });
        DriveHome(result, {});
        mTime += mTether / mCfg.tetherSpeed;
        mTether = 0.0;
        Fire({ MissionEventKind::RetractComplete, 0.0, false });
        Fire({ MissionEventKind::ResumeSearch });
    }

    mTrace.totalTime = mTime;
    return std::move(mTrace);
}

} // namespace

MissionTrace RunMission(const GridWorld& world, const MissionConfig& cfg)
{
    cfg.Validate();
    return MissionRun(world, cfg).Run();
}

std::string MissionTraceJsonLines(const MissionTrace& trace)
{
    using nlohmann::json;
    std::string out;
    for (const MissionRecord& r : trace.records) {
        json line {
            { "time", r.time },
            { "phase", MissionPhaseName(r.phase) },
            { "event", r.event },
            { "tether_length", r.tetherLength },
            { "tether_mode", TetherModeName(r.mode) },
            { "pose", { r.pose.x, r.pose.y, r.pose.heading } },
        };
        out += line.dump();
        out += '\n';
    }
    return out;
}

} // namespace cdos
