
/* world.hpp */

#ifndef CDOS_WORLD_HPP
#define CDOS_WORLD_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdos {

/* Raised for malformed map or zone files */
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/* Raised when a query leaves the world bounds */
class OutOfBounds : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

/* Integer cell coordinate, col grows right, row grows down the map text */
struct Cell
{
    int col = 0;
    int row = 0;

    friend constexpr bool operator==(const Cell&, const Cell&) = default;
    /* Row-major ordering */
    friend constexpr bool operator<(const Cell& a, const Cell& b)
    {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    }
};

/* Metric pose in the world frame; x along columns, y along rows */
struct Pose
{
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;

    friend bool operator==(const Pose&, const Pose&) = default;
};

enum class Terrain : std::uint8_t { Free, Occupied };

/* Wrap an angle into [0, 2pi) */
double WrapTwoPi(double angle);
/* Wrap an angle into (-pi, pi] */
double WrapPi(double angle);

class GridWorld
{
public:
    GridWorld(int width, int height, double cellSize);

    int Width() const { return mWidth; }
    int Height() const { return mHeight; }
    double CellSize() const { return mCellSize; }
    std::size_t CellCount() const { return mCells.size(); }

    bool Contains(const Cell& c) const
    {
        return c.col >= 0 && c.row >= 0 && c.col < mWidth && c.row < mHeight;
    }
    bool Contains(double x, double y) const;

    std::size_t Index(const Cell& c) const
    {
        return static_cast<std::size_t>(c.row) * mWidth + c.col;
    }
    Cell CellAt(std::size_t index) const
    {
        return { static_cast<int>(index % mWidth),
                 static_cast<int>(index / mWidth) };
    }

    Terrain At(const Cell& c) const { return mCells[Index(c)]; }
    /* Cells outside the map are treated as occupied */
    bool IsOccupied(const Cell& c) const
    {
        return !Contains(c) || At(c) == Terrain::Occupied;
    }
    void Set(const Cell& c, Terrain t);

    /* Cell containing a metric point; throws OutOfBounds */
    Cell CellOf(double x, double y) const;
    /* Metric center of a cell */
    double CenterX(const Cell& c) const { return (c.col + 0.5) * mCellSize; }
    double CenterY(const Cell& c) const { return (c.row + 0.5) * mCellSize; }
    Pose CenterPose(const Cell& c, double heading = 0.0) const
    {
        return { CenterX(c), CenterY(c), heading };
    }

    const std::optional<Cell>& Target() const { return mTarget; }
    /* Places (or clears) the single target; it must sit on a free cell */
    void SetTarget(std::optional<Cell> target);

    const Cell& Start() const { return mStart; }
    double StartHeading() const { return mStartHeading; }
    void SetStart(const Cell& c, double heading);
    Pose StartPose() const { return CenterPose(mStart, mStartHeading); }

    const std::vector<Terrain>& Cells() const { return mCells; }

private:
    int mWidth;
    int mHeight;
    double mCellSize;
    std::vector<Terrain> mCells;
    std::optional<Cell> mTarget;
    Cell mStart;
    bool mHasStart = false;
    double mStartHeading = 0.0;
};

/* Parses the ASCII map format:
 *   cellsize=<float> heading=<float>
 *   rows of '#', '.', 'S', 'T'  (first row is the top map row) */
GridWorld LoadMap(std::string_view text);
GridWorld LoadMapFile(const std::string& path);
/* Canonical text form; LoadMap(SerializeMap(w)) reproduces w */
std::string SerializeMap(const GridWorld& world);

struct RayHit
{
    bool hit = false;
    /* Distance to the boundary of the first occupied cell, or the
     * queried max range when nothing was hit */
    double distance = 0.0;
    /* Occupied cell that stopped the ray (may lie outside the map) */
    Cell cell;
};

struct RayTrace
{
    RayHit result;
    /* In-bounds free cells traversed before the hit, in order */
    std::vector<Cell> traversed;
};

/* Exact grid traversal (Amanatides-Woo) from origin along angle. Map
 * border counts as occupied. The origin cell is always traversed first
 * unless it is itself occupied, in which case the ray hits at 0. */
RayTrace TraceRay(const GridWorld& world, double x, double y,
                  double angle, double maxRange);

/* Same traversal against an arbitrary blocking predicate over cells;
 * used to trace rays through belief maps. */
template <typename Blocked>
RayTrace TraceRayWith(int width, int height, double cellSize,
                      double x, double y, double angle, double maxRange,
                      Blocked&& blocked);

RayHit RayCast(const GridWorld& world, const Pose& origin,
               double angle, double maxRange);

struct Zone
{
    int id = 0;
    /* Sorted row-major, unique */
    std::vector<Cell> cells;
};

/* Parses `zone<i> = [x0,y0,x1,y1] [x0,y0,x1,y1] ...` lines (inclusive
 * rectangles in cell coordinates, '#' comments allowed). Occupied cells
 * inside rectangles are dropped. Overlapping zones are rejected. */
std::vector<Zone> LoadZones(std::string_view text, const GridWorld& world);
std::vector<Zone> LoadZonesFile(const std::string& path,
                                const GridWorld& world);

/* Uniform sampling with replacement, deterministic in seed */
std::vector<Cell> SampleZonePoints(const Zone& zone, int n,
                                   std::uint64_t seed);

/* Unbiased draw in [0, bound); the engine output is fully specified by
 * the standard, std::uniform_int_distribution is not. */
std::uint64_t UniformIndex(std::uint64_t bound, std::mt19937_64& rng);

} // namespace cdos

#include "cdos/world_inl.hpp"

#endif // CDOS_WORLD_HPP
