
/* mapping.cpp */

#include "cdos/mapping.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdos {

namespace {

bool IsOpenProbability(double p)
{
    return p > 0.0 && p < 1.0;
}

} // namespace

double EvidenceLogOdds(double p)
{
    if (p <= 0.0)
        return -LogOddsLimit;
    if (p >= 1.0)
        return LogOddsLimit;
    return std::clamp(ProbabilityToLogOdds(p), -LogOddsLimit, LogOddsLimit);
}

void OccupancyParams::Validate() const
{
    if (!IsOpenProbability(pHit) || !IsOpenProbability(pMiss))
        throw std::invalid_argument("inverse model probabilities must be in (0, 1)");
    if (pHit <= 0.5 || pMiss >= 0.5)
        throw std::invalid_argument("pHit must exceed 0.5 and pMiss must be below 0.5");
    if (!(pFreeMax < 0.5 && pOccMin > 0.5 && pFreeMax > 0.0 && pOccMin < 1.0))
        throw std::invalid_argument("label thresholds must straddle 0.5");
}

OccupancyMap::OccupancyMap(int width, int height, double cellSize,
                           const OccupancyParams& params) :
    mWidth(width),
    mHeight(height),
    mCellSize(cellSize),
    mParams(params),
    mFreeLogOdds(ProbabilityToLogOdds(params.pFreeMax)),
    mOccLogOdds(ProbabilityToLogOdds(params.pOccMin)),
    mLogOdds(static_cast<std::size_t>(width) * height, 0.0)
{
    if (width < 1 || height < 1)
        throw std::invalid_argument("map dimensions must be at least 1x1");
    params.Validate();
}

OccupancyMap::OccupancyMap(const GridWorld& world, const OccupancyParams& params) :
    OccupancyMap(world.Width(), world.Height(), world.CellSize(), params)
{
}

void OccupancyMap::Update(const Cell& c, double p)
{
    double& l = mLogOdds[Index(c)];
    l = std::clamp(l + EvidenceLogOdds(p), -LogOddsLimit, LogOddsLimit);
}

void OccupancyMap::Integrate(const IrScan& scan)
{
    for (const IrBeam& beam : scan.beams) {
        for (const Cell& c : beam.freeCells)
            if (Contains(c))
                Update(c, mParams.pMiss);
        if (beam.hitCell && Contains(*beam.hitCell))
            Update(*beam.hitCell, mParams.pHit);
    }
}

OccupancyLabel OccupancyMap::Label(const Cell& c) const
{
    const double l = LogOdds(c);
    if (l < mFreeLogOdds)
        return OccupancyLabel::Free;
    if (l > mOccLogOdds)
        return OccupancyLabel::Occupied;
    return OccupancyLabel::Unknown;
}

OccupancyPartition ClassifyOccupancy(const OccupancyMap& map)
{
    OccupancyPartition part;
    for (std::size_t i = 0; i < map.CellCount(); ++i) {
        const Cell c = map.CellAt(i);
        switch (map.Label(c)) {
        case OccupancyLabel::Free:
            part.free.push_back(c);
            break;
        case OccupancyLabel::Occupied:
            part.occupied.push_back(c);
            break;
        case OccupancyLabel::Unknown:
            part.unknown.push_back(c);
            break;
        }
    }
    return part;
}

void ObjectParams::Validate() const
{
    if (!(lambda1 > 0.0 && lambda1 < lambda2 && lambda2 < 1.0))
        throw std::invalid_argument("require 0 < lambda1 < lambda2 < 1");
    if (!IsOpenProbability(pMissCam) || pMissCam >= 0.5)
        throw std::invalid_argument("camera miss probability must be in (0, 0.5)");
}

double ClassifyObjectProbability(double p, double lambda1, double lambda2)
{
    if (p < lambda1)
        return 0.0;
    if (p <= lambda2)
        return 0.5;
    return p;
}

ObjectLabel ObjectLabelOf(double classified, double lambda2)
{
    if (classified == 0.0)
        return ObjectLabel::Free;
    if (classified > lambda2)
        return ObjectLabel::Occupied;
    return ObjectLabel::Unknown;
}

ObjectMap::ObjectMap(int width, int height, const ObjectParams& params) :
    mWidth(width),
    mHeight(height),
    mParams(params),
    mLogOdds(static_cast<std::size_t>(width) * height, 0.0),
    mObserved(mLogOdds.size(), 0)
{
    if (width < 1 || height < 1)
        throw std::invalid_argument("map dimensions must be at least 1x1");
    params.Validate();
}

ObjectMap::ObjectMap(const GridWorld& world, const ObjectParams& params) :
    ObjectMap(world.Width(), world.Height(), params)
{
}

std::vector<double> ObjectMap::ClassifiedView() const
{
    std::vector<double> view(mLogOdds.size());
    for (std::size_t i = 0; i < view.size(); ++i)
        view[i] = Classified(i);
    return view;
}

void ObjectMap::Update(std::size_t index, double p)
{
    double& l = mLogOdds[index];
    l = std::clamp(l + EvidenceLogOdds(p), -LogOddsLimit, LogOddsLimit);
    mObserved[index] = 1;
}

void ObjectMap::Integrate(const CameraObservation& obs)
{
    for (const SweptCell& s : obs.swept) {
        if (s.relation != CellRelation::SeenFree || !Contains(s.cell))
            continue;
        if (obs.detection && obs.detection->cell == s.cell)
            continue;
        Update(s.cell, mParams.pMissCam);
    }
    if (obs.detection && Contains(obs.detection->cell))
        Update(obs.detection->cell, obs.detection->confidence);
}

} // namespace cdos
