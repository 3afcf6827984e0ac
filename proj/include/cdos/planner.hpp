
/* planner.hpp */

#ifndef CDOS_PLANNER_HPP
#define CDOS_PLANNER_HPP

#include "cdos/mapping.hpp"
#include "cdos/world.hpp"

#include <optional>
#include <vector>

namespace cdos {

struct GridPath
{
    /* Source first, destination last */
    std::vector<Cell> cells;
    /* Metric length */
    double cost = 0.0;
};

/* Single-source shortest paths over the 8-connected free space of an
 * occupancy map. Step cost is the Euclidean distance between cell
 * centers; diagonal steps may not cut the corner of a non-free cell.
 * The queue orders by (cost, row-major index), so equal-cost paths are
 * resolved the same way on every run. */
class ShortestPathTree
{
public:
    /* extraTarget, when given, may be entered even if it is not free
     * (it is never expanded) */
    ShortestPathTree(const OccupancyMap& map, const Cell& source,
                     std::optional<Cell> extraTarget = std::nullopt);

    const Cell& Source() const { return mSource; }
    bool Reachable(const Cell& c) const;
    /* Infinity when unreachable */
    double Cost(const Cell& c) const;
    std::optional<GridPath> PathTo(const Cell& c) const;

private:
    int mWidth;
    int mHeight;
    Cell mSource;
    std::vector<double> mCost;
    std::vector<std::int64_t> mParent;
};

/* Shortest path from a free cell to any cell; nullopt when unreachable.
 * Throws std::invalid_argument if `from` is not free. */
std::optional<GridPath> PlanPath(const OccupancyMap& map,
                                 const Cell& from, const Cell& to);

} // namespace cdos

#endif // CDOS_PLANNER_HPP
