
/* world_inl.hpp */

#ifndef CDOS_WORLD_INL_HPP
#define CDOS_WORLD_INL_HPP

#include <cmath>
#include <limits>

namespace cdos {

template <typename Blocked>
RayTrace TraceRayWith(int width, int height, double cellSize,
                      double x, double y, double angle, double maxRange,
                      Blocked&& blocked)
{
    const auto isBlocked = [&](const Cell& c) {
        if (c.col < 0 || c.row < 0 || c.col >= width || c.row >= height)
            return true;
        return static_cast<bool>(blocked(c));
    };

    RayTrace trace;
    Cell cell { static_cast<int>(std::floor(x / cellSize)),
                static_cast<int>(std::floor(y / cellSize)) };

    if (isBlocked(cell)) {
        trace.result = { true, 0.0, cell };
        return trace;
    }

    constexpr double inf = std::numeric_limits<double>::infinity();
    const double dx = std::cos(angle);
    const double dy = std::sin(angle);

    int stepX = 0;
    int stepY = 0;
    double tMaxX = inf;
    double tMaxY = inf;
    double tDeltaX = inf;
    double tDeltaY = inf;

    if (dx > 0.0) {
        stepX = 1;
        tMaxX = ((cell.col + 1) * cellSize - x) / dx;
        tDeltaX = cellSize / dx;
    } else if (dx < 0.0) {
        stepX = -1;
        tMaxX = (cell.col * cellSize - x) / dx;
        tDeltaX = -cellSize / dx;
    }
    if (dy > 0.0) {
        stepY = 1;
        tMaxY = ((cell.row + 1) * cellSize - y) / dy;
        tDeltaY = cellSize / dy;
    } else if (dy < 0.0) {
        stepY = -1;
        tMaxY = (cell.row * cellSize - y) / dy;
        tDeltaY = -cellSize / dy;
    }

    for (;;) {
        trace.traversed.push_back(cell);

        double t = 0.0;
        /* Ties step along x first */
        if (tMaxX <= tMaxY) {
            t = tMaxX;
            cell.col += stepX;
            tMaxX += tDeltaX;
        } else {
            t = tMaxY;
            cell.row += stepY;
            tMaxY += tDeltaY;
        }

        if (t > maxRange) {
            trace.result = { false, maxRange, cell };
            return trace;
        }
        if (isBlocked(cell)) {
            trace.result = { true, t, cell };
            return trace;
        }
    }
}

} // namespace cdos

#endif // CDOS_WORLD_INL_HPP
