
/* planner.cpp */

#include "cdos/planner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <utility>

namespace cdos {

namespace {

constexpr double Inf = std::numeric_limits<double>::infinity();

struct Step
{
    int dc;
    int dr;
};

/* Expansion order is fixed; it only matters for exactly equal costs */
constexpr Step Neighbors[8] = {
    { 0, -1 }, { -1, 0 }, { 1, 0 }, { 0, 1 },
    { -1, -1 }, { 1, -1 }, { -1, 1 }, { 1, 1 },
};

} // namespace

ShortestPathTree::ShortestPathTree(const OccupancyMap& map, const Cell& source,
                                   std::optional<Cell> extraTarget) :
    mWidth(map.Width()),
    mHeight(map.Height()),
    mSource(source),
    mCost(map.CellCount(), Inf),
    mParent(map.CellCount(), -1)
{
    if (!map.Contains(source))
        throw OutOfBounds("path source outside map");

    const double cs = map.CellSize();
    const double diagonal = std::numbers::sqrt2 * cs;

    const auto passable = [&map](const Cell& c) {
        return map.Contains(c) && map.IsFree(c);
    };

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;

    const std::size_t src = map.Index(source);
    mCost[src] = 0.0;
    open.push({ 0.0, src });

    while (!open.empty()) {
        const auto [cost, index] = open.top();
        open.pop();
        if (cost > mCost[index])
            continue;

        const Cell cell = map.CellAt(index);
        /* Only the source and free cells are expanded */
        if (index != src && !passable(cell))
            continue;

        for (const Step& s : Neighbors) {
            const Cell next { cell.col + s.dc, cell.row + s.dr };
            if (!map.Contains(next))
                continue;
            const bool isExtra = extraTarget && next == *extraTarget;
            if (!passable(next) && !isExtra)
                continue;

            const bool isDiagonal = s.dc != 0 && s.dr != 0;
            if (isDiagonal &&
                (!passable({ cell.col + s.dc, cell.row }) ||
                 !passable({ cell.col, cell.row + s.dr })))
                continue;

            const double nextCost = cost + (isDiagonal ? diagonal : cs);
            const std::size_t ni = map.Index(next);
            if (nextCost < mCost[ni]) {
                mCost[ni] = nextCost;
                mParent[ni] = static_cast<std::int64_t>(index);
                open.push({ nextCost, ni });
            }
        }
    }
}

bool ShortestPathTree::Reachable(const Cell& c) const
{
    return Cost(c) < Inf;
}

double ShortestPathTree::Cost(const Cell& c) const
{
    if (c.col < 0 || c.row < 0 || c.col >= mWidth || c.row >= mHeight)
        return Inf;
    return mCost[static_cast<std::size_t>(c.row) * mWidth + c.col];
}

std::optional<GridPath> ShortestPathTree::PathTo(const Cell& c) const
{
    if (!Reachable(c))
        return std::nullopt;

    GridPath path;
    path.cost = Cost(c);
    std::int64_t index = static_cast<std::int64_t>(c.row) * mWidth + c.col;
    while (index >= 0) {
        path.cells.push_back({ static_cast<int>(index % mWidth),
                               static_cast<int>(index / mWidth) });
        index = mParent[static_cast<std::size_t>(index)];
    }
    std::reverse(path.cells.begin(), path.cells.end());
    return path;
}

std::optional<GridPath> PlanPath(const OccupancyMap& map,
                                 const Cell& from, const Cell& to)
{
    if (!map.Contains(from) || !map.Contains(to))
        throw OutOfBounds("path endpoint outside map");
    if (!map.IsFree(from))
        throw std::invalid_argument("path must start on a free cell");

    return ShortestPathTree(map, from, to).PathTo(to);
}

} // namespace cdos
