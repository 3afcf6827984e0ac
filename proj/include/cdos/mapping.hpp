
/* mapping.hpp */

#ifndef CDOS_MAPPING_HPP
#define CDOS_MAPPING_HPP

#include "cdos/sensor.hpp"
#include "cdos/world.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace cdos {

/* Log-odds values saturate at this magnitude so probabilities never
 * reach 0 or 1 */
inline constexpr double LogOddsLimit = 20.0;

inline double ProbabilityToLogOdds(double p)
{
    return std::log(p / (1.0 - p));
}

inline double LogOddsToProbability(double l)
{
    return 1.0 / (1.0 + std::exp(-l));
}

/* Log-odds of a single piece of evidence, saturated for p in {0, 1} */
double EvidenceLogOdds(double p);

enum class OccupancyLabel : std::uint8_t { Free, Occupied, Unknown };

struct OccupancyParams
{
    /* Inverse sensor model */
    double pHit = 0.7;
    double pMiss = 0.35;
    /* Label thresholds */
    double pFreeMax = 0.35;
    double pOccMin = 0.65;

    void Validate() const;
};

/* IR occupancy grid with a uniform 0.5 prior. Each observation adds
 * log(p / (1 - p)) to the cell, which is the recursive binary Bayes
 * filter written in odds form. */
class OccupancyMap
{
public:
    OccupancyMap(int width, int height, double cellSize,
                 const OccupancyParams& params = {});
    explicit OccupancyMap(const GridWorld& world,
                          const OccupancyParams& params = {});

    int Width() const { return mWidth; }
    int Height() const { return mHeight; }
    double CellSize() const { return mCellSize; }
    std::size_t CellCount() const { return mLogOdds.size(); }
    const OccupancyParams& Params() const { return mParams; }

    bool Contains(const Cell& c) const
    {
        return c.col >= 0 && c.row >= 0 && c.col < mWidth && c.row < mHeight;
    }
    std::size_t Index(const Cell& c) const
    {
        return static_cast<std::size_t>(c.row) * mWidth + c.col;
    }
    Cell CellAt(std::size_t index) const
    {
        return { static_cast<int>(index % mWidth),
                 static_cast<int>(index / mWidth) };
    }

    double LogOdds(const Cell& c) const { return mLogOdds[Index(c)]; }
    double Probability(const Cell& c) const
    {
        return LogOddsToProbability(LogOdds(c));
    }

    /* Fuse one observation with inverse-model probability p */
    void Update(const Cell& c, double p);
    /* Cells before each beam end get pMiss, the hit cell gets pHit */
    void Integrate(const IrScan& scan);

    OccupancyLabel Label(const Cell& c) const;
    bool IsFree(const Cell& c) const { return Label(c) == OccupancyLabel::Free; }
    bool IsOccupied(const Cell& c) const
    {
        return Label(c) == OccupancyLabel::Occupied;
    }
    bool IsUnknown(const Cell& c) const
    {
        return Label(c) == OccupancyLabel::Unknown;
    }

private:
    int mWidth;
    int mHeight;
    double mCellSize;
    OccupancyParams mParams;
    /* Thresholds in log-odds space so labels do not depend on the
     * rounding of the probability conversion */
    double mFreeLogOdds;
    double mOccLogOdds;
    std::vector<double> mLogOdds;
};

struct OccupancyPartition
{
    std::vector<Cell> free;
    std::vector<Cell> occupied;
    std::vector<Cell> unknown;
};

/* Splits the grid into free / occupied / unknown cells (row-major) */
OccupancyPartition ClassifyOccupancy(const OccupancyMap& map);

struct ObjectParams
{
    /* Classification bounds */
    double lambda1 = 0.10;
    double lambda2 = 0.95;
    /* Evidence applied to camera-swept cells without a detection */
    double pMissCam = 0.3;

    void Validate() const;
};

/* Three-way snap of an object probability:
 *   [0, lambda1)        -> 0   (free; 0 itself counts as free)
 *   [lambda1, lambda2]  -> 0.5 (unknown)
 *   (lambda2, 1]        -> p   (occupied by the object) */
double ClassifyObjectProbability(double p, double lambda1, double lambda2);

enum class ObjectLabel : std::uint8_t { Free, Unknown, Occupied };

ObjectLabel ObjectLabelOf(double classified, double lambda2);

/* Per-cell probability that the target object occupies the cell. The raw
 * Bayesian posterior is kept in log-odds; readers that need the snapped
 * value go through Classified(). */
class ObjectMap
{
public:
    ObjectMap(int width, int height, const ObjectParams& params = {});
    explicit ObjectMap(const GridWorld& world, const ObjectParams& params = {});

    int Width() const { return mWidth; }
    int Height() const { return mHeight; }
    std::size_t CellCount() const { return mLogOdds.size(); }
    const ObjectParams& Params() const { return mParams; }

    bool Contains(const Cell& c) const
    {
        return c.col >= 0 && c.row >= 0 && c.col < mWidth && c.row < mHeight;
    }
    std::size_t Index(const Cell& c) const
    {
        return static_cast<std::size_t>(c.row) * mWidth + c.col;
    }
    Cell CellAt(std::size_t index) const
    {
        return { static_cast<int>(index % mWidth),
                 static_cast<int>(index / mWidth) };
    }

    double LogOdds(std::size_t index) const { return mLogOdds[index]; }
    double RawProbability(std::size_t index) const
    {
        return LogOddsToProbability(mLogOdds[index]);
    }
    double RawProbability(const Cell& c) const { return RawProbability(Index(c)); }

    double Classified(std::size_t index) const
    {
        return ClassifyObjectProbability(
            RawProbability(index), mParams.lambda1, mParams.lambda2);
    }
    double Classified(const Cell& c) const { return Classified(Index(c)); }
    ObjectLabel Label(const Cell& c) const
    {
        return ObjectLabelOf(Classified(c), mParams.lambda2);
    }

    /* Snapped view of every cell, row-major */
    std::vector<double> ClassifiedView() const;

    /* True once the camera has swept the cell */
    bool Observed(std::size_t index) const { return mObserved[index] != 0; }
    bool Observed(const Cell& c) const { return Observed(Index(c)); }

    void Update(std::size_t index, double p);
    void Update(const Cell& c, double p) { Update(Index(c), p); }
    /* Fuses a detection's confidence into its cell and miss evidence into
     * every other swept free cell */
    void Integrate(const CameraObservation& obs);

private:
    int mWidth;
    int mHeight;
    ObjectParams mParams;
    std::vector<double> mLogOdds;
    std::vector<char> mObserved;
};

} // namespace cdos

#endif // CDOS_MAPPING_HPP
