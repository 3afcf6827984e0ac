
/* test_planner.cpp */

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace cdos;

namespace {

OccupancyMap AllFree(int w, int h, double cs)
{
    OccupancyMap g(w, h, cs);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            g.Update({ c, r }, 0.05);
    return g;
}

bool Adjacent(const Cell& a, const Cell& b)
{
    return std::abs(a.col - b.col) <= 1 && std::abs(a.row - b.row) <= 1 && !(a == b);
}

} // namespace

TEST_CASE("path to the source is the source")
{
    const OccupancyMap g = AllFree(5, 5, 0.25);
    const auto p = PlanPath(g, { 2, 2 }, { 2, 2 });
    REQUIRE(p);
    CHECK(p->cells == std::vector<Cell> { { 2, 2 } });
    CHECK(p->cost == 0.0);
}

TEST_CASE("straight corridor")
{
    OccupancyMap g(7, 3, 0.25);
    for (int c = 1; c <= 5; ++c)
        g.Update({ c, 1 }, 0.05);
    const auto p = PlanPath(g, { 1, 1 }, { 5, 1 });
    REQUIRE(p);
    CHECK(p->cost == doctest::Approx(4 * 0.25));
    CHECK(p->cells.size() == 5);
    CHECK(p->cells.front() == Cell { 1, 1 });
    CHECK(p->cells.back() == Cell { 5, 1 });
}

TEST_CASE("diagonals may not cut corners")
{
    /* Free L: (0,0) (1,0) (1,1); (0,1) unknown */
    OccupancyMap g(2, 2, 1.0);
    g.Update({ 0, 0 }, 0.05);
    g.Update({ 1, 0 }, 0.05);
    g.Update({ 1, 1 }, 0.05);
    const auto p = PlanPath(g, { 0, 0 }, { 1, 1 });
    REQUIRE(p);
    CHECK(p->cost == doctest::Approx(2.0));

    g.Update({ 0, 1 }, 0.05);
    CHECK(PlanPath(g, { 0, 0 }, { 1, 1 })->cost == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("unreachable and invalid requests")
{
    OccupancyMap g = AllFree(5, 5, 0.25);
    for (int r = 0; r < 5; ++r)
        g.Update({ 2, r }, 0.99);
    CHECK_FALSE(PlanPath(g, { 0, 0 }, { 4, 4 }));
    CHECK_THROWS_AS(PlanPath(g, { 2, 2 }, { 0, 0 }), std::invalid_argument);

    const ShortestPathTree tree(g, { 0, 0 });
    CHECK_FALSE(tree.Reachable({ 4, 4 }));
    CHECK(tree.Cost({ 4, 4 }) == std::numeric_limits<double>::infinity());
    CHECK_FALSE(tree.PathTo({ 4, 4 }));
    /* A wall cell is only entered when named as the extra target */
    CHECK_FALSE(tree.Reachable({ 2, 0 }));
    const ShortestPathTree into(g, { 0, 0 }, Cell { 2, 0 });
    CHECK(into.Cost({ 2, 0 }) == doctest::Approx(0.5));
}

TEST_CASE("path costs match Bellman-Ford on random maps")
{
    std::mt19937_64 rng(77);
    int reachable = 0;
    for (int k = 0; k < 30; ++k) {
        const OccupancyMap g = oracle::RandomBelief(rng, 20, 20, 0.65, 0.2);
        std::vector<Cell> free;
        for (std::size_t i = 0; i < g.CellCount(); ++i)
            if (g.IsFree(g.CellAt(i)))
                free.push_back(g.CellAt(i));
        const Cell from = free[UniformIndex(free.size(), rng)];
        const ShortestPathTree tree(g, from);
        for (int j = 0; j < 10; ++j) {
            const Cell to = free[UniformIndex(free.size(), rng)];
            const double want = oracle::ShortestCost(g, from, to);
            const auto p = PlanPath(g, from, to);
            REQUIRE(p.has_value() == std::isfinite(want));
            if (!p)
                continue;
            ++reachable;
            CHECK(p->cost == doctest::Approx(want).epsilon(1e-12));
            CHECK(tree.Cost(to) == doctest::Approx(want).epsilon(1e-12));

            /* The path is a chain of legal moves whose lengths add up */
            double sum = 0.0;
            for (std::size_t s = 1; s < p->cells.size(); ++s) {
                const Cell& a = p->cells[s - 1];
                const Cell& b = p->cells[s];
                CHECK(Adjacent(a, b));
                CHECK(g.IsFree(b));
                if (a.col != b.col && a.row != b.row) {
                    CHECK(g.IsFree({ b.col, a.row }));
                    CHECK(g.IsFree({ a.col, b.row }));
                }
                sum += std::hypot(a.col - b.col, a.row - b.row) * g.CellSize();
            }
            CHECK(sum == doctest::Approx(p->cost).epsilon(1e-12));
        }
    }
    CHECK(reachable > 100);
}

TEST_CASE("planning is deterministic")
{
    std::mt19937_64 rng(1);
    const OccupancyMap g = oracle::RandomBelief(rng, 25, 25, 0.8, 0.1);
    std::vector<Cell> free;
    for (std::size_t i = 0; i < g.CellCount(); ++i)
        if (g.IsFree(g.CellAt(i)))
            free.push_back(g.CellAt(i));
    for (int j = 0; j < 10; ++j) {
        const Cell a = free[UniformIndex(free.size(), rng)];
        const Cell b = free[UniformIndex(free.size(), rng)];
        const auto p = PlanPath(g, a, b);
        const auto q = PlanPath(g, a, b);
        REQUIRE(p.has_value() == q.has_value());
        if (p)
            CHECK(p->cells == q->cells);
    }
}
