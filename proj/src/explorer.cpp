
/* explorer.cpp */

#include "cdos/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

namespace cdos {

namespace {

constexpr double TwoPi = 2.0 * std::numbers::pi;

double Bearing(const Pose& from, double x, double y)
{
    return std::atan2(y - from.y, x - from.x);
}

class ExplorationRun
{
public:
    ExplorationRun(const GridWorld& world, const ExplorerConfig& cfg,
                   Method method) :
        mWorld(world),
        mCfg(cfg),
        mMethod(method),
        mResult(OccupancyMap(world, cfg.occupancy),
                ObjectMap(world, cfg.object)),
        mBlacklist(world.CellCount(), 0)
    {
    }

    ExplorationResult Run();

private:
    /* Returns true once a detection clears the threshold */
    bool Sense();
    void CheckPose() const;
    void Turn(double heading);
    /* Moves along the path; returns false if the run must stop */
    bool Traverse(const GridPath& path);
    bool BudgetLeft() const { return mResult.deltaT < mCfg.budget; }
    Cell RobotCell() const { return mWorld.CellOf(mPose.x, mPose.y); }
    std::size_t PickLocal(const std::vector<Cell>& local, double& loss) const;
    std::vector<Cell> UnknownNeighbors(const Cell& c) const;

    const GridWorld& mWorld;
    const ExplorerConfig& mCfg;
    Method mMethod;
    ExplorationResult mResult;
    std::vector<char> mBlacklist;
    Pose mPose;
};

bool ExplorationRun::Sense()
{
    mResult.occupancy.Integrate(ScanIr(mWorld, mPose, mCfg.ir));
    const CameraObservation obs = ObserveCamera(mWorld, mPose, mCfg.camera);
    mResult.objects.Integrate(obs);

    if (obs.detection && obs.detection->confidence > mCfg.detectionThreshold) {
        mResult.found = true;
        mResult.targetEstimate = obs.detection->cell;
        mResult.detectionConfidence = obs.detection->confidence;
        mResult.termination = Termination::Found;
        return true;
    }
    return false;
}

void ExplorationRun::CheckPose() const
{
    const Cell c = RobotCell();
    if (mWorld.At(c) != Terrain::Free)
        throw InvariantViolation("trajectory entered an occupied cell");
}

void ExplorationRun::Turn(double heading)
{
    heading = WrapTwoPi(heading);
    const double delta = std::abs(WrapPi(heading - mPose.heading));
    mResult.deltaT += mCfg.motion.rotationPenalty * delta / TwoPi;
    mPose.heading = heading;
}

bool ExplorationRun::Traverse(const GridPath& path)
{
    const double cs = mWorld.CellSize();

    for (std::size_t k = 1; k < path.cells.size(); ++k) {
        const Cell& next = path.cells[k];
        const double x = mWorld.CenterX(next);
        const double y = mWorld.CenterY(next);
        const double length = std::hypot(x - mPose.x, y - mPose.y);

        Turn(Bearing(mPose, x, y));
        mPose.x = x;
        mPose.y = y;
        mResult.deltaT += length / mCfg.motion.maxVelocity;
        mResult.pathLength += length;
        mResult.trajectory.push_back(mPose);
        CheckPose();

        if (Sense())
            return false;
        if (!BudgetLeft()) {
            mResult.termination = Termination::BudgetExhausted;
            return false;
        }

        /* Replan only when the remaining path crosses a new obstacle */
        for (std::size_t j = k + 1; j < path.cells.size(); ++j)
            if (mResult.occupancy.IsOccupied(path.cells[j]))
                return true;
    }

    const Cell goal = path.cells.back();
    mBlacklist[mWorld.Index(goal)] = 1;

    /* Face the unknown space the frontier borders and look again */
    const std::vector<Cell> unknown = UnknownNeighbors(goal);
    if (!unknown.empty()) {
        double sx = 0.0;
        double sy = 0.0;
        for (const Cell& u : unknown) {
            sx += u.col - goal.col;
            sy += u.row - goal.row;
        }
        if (sx != 0.0 || sy != 0.0) {
            Turn(std::atan2(sy * cs, sx * cs));
            mResult.trajectory.push_back(mPose);
            if (Sense())
                return false;
            if (!BudgetLeft()) {
                mResult.termination = Termination::BudgetExhausted;
                return false;
            }
        }
    }
    return true;
}

std::vector<Cell> ExplorationRun::UnknownNeighbors(const Cell& c) const
{
    std::vector<Cell> unknown;
    const Cell around[4] = { { c.col, c.row - 1 }, { c.col - 1, c.row },
                             { c.col + 1, c.row }, { c.col, c.row + 1 } };
    for (const Cell& n : around)
        if (mResult.occupancy.Contains(n) && mResult.occupancy.IsUnknown(n))
            unknown.push_back(n);
    return unknown;
}

std::size_t ExplorationRun::PickLocal(const std::vector<Cell>& local,
                                      double& loss) const
{
    if (mMethod == Method::Cdos) {
        const FrontierChoice choice = SelectFrontier(
            local, mResult.objects, mResult.occupancy, mPose,
            mCfg.camera, mCfg.curiosity);
        loss = choice.loss;
        return choice.index;
    }

    /* Rapid frontier: least heading change, then distance, then index */
    loss = 0.0;
    std::size_t best = 0;
    double bestTurn = std::numeric_limits<double>::infinity();
    double bestDist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < local.size(); ++i) {
        const double x = mWorld.CenterX(local[i]);
        const double y = mWorld.CenterY(local[i]);
        const double turn = std::abs(WrapPi(Bearing(mPose, x, y) - mPose.heading));
        const double dist = std::hypot(x - mPose.x, y - mPose.y);
        if (turn < bestTurn || (turn == bestTurn && dist < bestDist)) {
            best = i;
            bestTurn = turn;
            bestDist = dist;
        }
    }
    return best;
}

ExplorationResult ExplorationRun::Run()
{
    mPose = mWorld.StartPose();
    mResult.trajectory.push_back(mPose);
    CheckPose();

    if (Sense())
        return std::move(mResult);

    for (int step = 0;; ++step) {
        if (!BudgetLeft()) {
            mResult.termination = Termination::BudgetExhausted;
            break;
        }

        const Cell here = RobotCell();
        std::vector<Cell> global;
        for (const Cell& f : DetectFrontiers(mResult.occupancy))
            if (!mBlacklist[mWorld.Index(f)] && !(f == here))
                global.push_back(f);

        const std::vector<Cell> local =
            LocalFrontiers(global, mResult.occupancy, mPose, mCfg.ir);
        for (const Cell& f : local)
            if (!std::binary_search(global.begin(), global.end(), f))
                throw InvariantViolation("local frontier outside the global set");

        const ShortestPathTree tree(mResult.occupancy, here);

        std::vector<Cell> reachableLocal;
        for (const Cell& f : local)
            if (tree.Reachable(f))
                reachableLocal.push_back(f);

        StepRecord record;
        record.step = step;
        record.pose = mPose;
        record.elapsed = mResult.deltaT;
        record.totalCuriosity = TotalCuriosity(mResult.objects, mCfg.curiosity);
        record.globalCount = global.size();
        record.localCount = local.size();

        if (!reachableLocal.empty()) {
            record.kind = StepKind::Local;
            record.frontier = reachableLocal[PickLocal(reachableLocal, record.loss)];
        } else {
            /* Nearest reachable global frontier by path cost */
            double bestCost = std::numeric_limits<double>::infinity();
            for (const Cell& f : global) {
                const double cost = tree.Cost(f);
                if (cost < bestCost) {
                    bestCost = cost;
                    record.frontier = f;
                }
            }
            if (!(bestCost < std::numeric_limits<double>::infinity())) {
                mResult.termination = Termination::FrontiersExhausted;
                break;
            }
            record.kind = StepKind::Global;
        }

        const std::optional<GridPath> path = tree.PathTo(record.frontier);
        record.pathLength = path->cost;
        mResult.steps.push_back(record);

        if (!Traverse(*path))
            break;
    }

    return std::move(mResult);
}

} // namespace

void MotionConfig::Validate() const
{
    if (!(maxVelocity > 0.0))
        throw std::invalid_argument("max velocity must be positive");
    if (rotationPenalty < 0.0)
        throw std::invalid_argument("rotation penalty must be non-negative");
}

void ExplorerConfig::Validate() const
{
    ir.Validate();
    camera.Validate();
    occupancy.Validate();
    object.Validate();
    curiosity.Validate();
    motion.Validate();
    if (!(budget > 0.0))
        throw std::invalid_argument("budget must be positive");
    if (!(detectionThreshold > 0.0 && detectionThreshold < 1.0))
        throw std::invalid_argument("detection threshold must be in (0, 1)");
}

ExplorerConfig DefaultExplorerConfig(double alpha, double beta, double range)
{
    ExplorerConfig cfg;
    cfg.ir = { beta, range, DefaultRayCount(beta) };
    cfg.camera.fov = alpha;
    cfg.camera.maxRange = range;
    cfg.camera.rayCount = DefaultRayCount(alpha);
    /* conf reaches 0.95 at half the camera range */
    cfg.camera.eta = 0.95 * 0.5 * range;
    return cfg;
}

std::vector<Cell> DetectFrontiers(const OccupancyMap& map)
{
    std::vector<Cell> frontiers;
    for (std::size_t i = 0; i < map.CellCount(); ++i) {
        const Cell c = map.CellAt(i);
        if (!map.IsFree(c))
            continue;
        const Cell around[4] = { { c.col, c.row - 1 }, { c.col - 1, c.row },
                                 { c.col + 1, c.row }, { c.col, c.row + 1 } };
        for (const Cell& n : around) {
            if (map.Contains(n) && map.IsUnknown(n)) {
                frontiers.push_back(c);
                break;
            }
        }
    }
    return frontiers;
}

std::vector<Cell> LocalFrontiers(const std::vector<Cell>& global,
                                 const OccupancyMap& map,
                                 const Pose& pose, const IrConfig& ir)
{
    const double cs = map.CellSize();
    std::vector<Cell> local;
    for (const Cell& f : global) {
        const double x = (f.col + 0.5) * cs;
        const double y = (f.row + 0.5) * cs;
        const double dist = std::hypot(x - pose.x, y - pose.y);
        if (dist > ir.maxRange)
            continue;
        if (dist > 0.0 &&
            std::abs(WrapPi(Bearing(pose, x, y) - pose.heading)) > 0.5 * ir.fov + 1e-12)
            continue;
        local.push_back(f);
    }
    return local;
}

const char* MethodName(Method m)
{
    return m == Method::Cdos ? "cdos" : "baseline";
}

Method ParseMethod(const std::string& name)
{
    if (name == "cdos")
        return Method::Cdos;
    if (name == "baseline" || name == "rapid" || name == "rapid-frontier")
        return Method::RapidFrontier;
    throw std::invalid_argument("unknown method '" + name + "'");
}

const char* TerminationName(Termination t)
{
    switch (t) {
    case Termination::Found:
        return "found";
    case Termination::FrontiersExhausted:
        return "frontiers_exhausted";
    case Termination::BudgetExhausted:
        return "budget_exhausted";
    }
    return "unknown";
}

ExplorationResult Explore(const GridWorld& world, const ExplorerConfig& cfg,
                          Method method)
{
    cfg.Validate();
    return ExplorationRun(world, cfg, method).Run();
}

std::string StepLogJsonLines(const ExplorationResult& result, Method method)
{
    using nlohmann::json;
    std::string out;

    for (const StepRecord& s : result.steps) {
        json line {
            { "step", s.step },
            { "method", MethodName(method) },
            { "pose", { s.pose.x, s.pose.y, s.pose.heading } },
            { "frontier", { s.frontier.col, s.frontier.row } },
            { "kind", s.kind == StepKind::Local ? "local" : "global" },
            { "loss", s.loss },
            { "total_curiosity", s.totalCuriosity },
            { "elapsed", s.elapsed },
            { "path_length", s.pathLength },
            { "global_frontiers", s.globalCount },
            { "local_frontiers", s.localCount },
        };
        out += line.dump();
        out += '\n';
    }

    json summary {
        { "summary", true },
        { "method", MethodName(method) },
        { "found", result.found },
        { "termination", TerminationName(result.termination) },
        { "delta_t", result.deltaT },
        { "path_length", result.pathLength },
        { "steps", result.steps.size() },
        { "waypoints", result.trajectory.size() },
    };
    if (result.targetEstimate)
        summary["target_estimate"] = { result.targetEstimate->col,
                                       result.targetEstimate->row };
    out += summary.dump();
    out += '\n';
    return out;
}

} // namespace cdos
