
/* test_curiosity.cpp */

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cdos;

namespace {

constexpr double Pi = std::numbers::pi;

struct Belief
{
    GridWorld world;
    OccupancyMap occupancy;
    ObjectMap objects;
    Pose current;
};

CameraConfig Camera(double fov, double range)
{
    CameraConfig cam;
    cam.fov = fov;
    cam.maxRange = range;
    cam.eta = 0.7;
    cam.rayCount = DefaultRayCount(fov);
    return cam;
}

/* Senses from a handful of random free poses so both maps carry a mix of
 * evidence, then picks an off-center current pose */
Belief RandomBeliefState(std::mt19937_64& rng, int size, double scale = 1.0)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GridWorld world = oracle::RandomWorld(rng, size, size, 0.12, 0.25 * scale);
    std::vector<Cell> free;
    for (std::size_t i = 0; i < world.CellCount(); ++i)
        if (world.At(world.CellAt(i)) == Terrain::Free)
            free.push_back(world.CellAt(i));
    world.SetTarget(free[UniformIndex(free.size(), rng)]);

    Belief b { world, OccupancyMap(world), ObjectMap(world), {} };
    IrConfig ir;
    ir.fov = Pi / 2;
    ir.maxRange = 2.0 * scale;
    ir.rayCount = DefaultRayCount(ir.fov);
    CameraConfig cam = Camera(Pi / 3, 2.0 * scale);
    cam.eta *= scale;
    for (int k = 0; k < 6; ++k) {
        const Cell c = free[UniformIndex(free.size(), rng)];
        const Pose p = world.CenterPose(c, u(rng) * 2 * Pi);
        b.occupancy.Integrate(ScanIr(world, p, ir));
        b.objects.Integrate(ObserveCamera(world, p, cam));
    }
    const Cell c = free[UniformIndex(free.size(), rng)];
    const double cs = world.CellSize();
    b.current = { (c.col + 0.1 + 0.8 * u(rng)) * cs, (c.row + 0.1 + 0.8 * u(rng)) * cs,
                  u(rng) * 2 * Pi };
    return b;
}

} // namespace

TEST_CASE("curiosity values")
{
    const CuriosityParams k;
    CHECK(CellCuriosity(0.5, k) == doctest::Approx(0.62));
    CHECK(CellCuriosity(0.7, k) == doctest::Approx(0.52));
    CHECK(CellCuriosity(0.3, k) == doctest::Approx(0.52));
    /* -(0.5)^2 / 0.4 + 0.62 = -0.005 clamps to zero */
    CHECK(CellCuriosity(0.0, k) == 0.0);
    CHECK(CellCuriosity(1.0, k) == 0.0);
    CHECK_THROWS_AS(CellCuriosity(1.01, k), std::domain_error);
    CHECK_THROWS_AS(CellCuriosity(-0.01, k), std::domain_error);
    CHECK_THROWS_AS(CellCuriosity(std::nan(""), k), std::domain_error);

    CuriosityParams bad;
    bad.b = 0.0;
    CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);
}

TEST_CASE("curiosity shape")
{
    const CuriosityParams k;
    double prev = CellCuriosity(0.5, k);
    for (int i = 0; i <= 1000; ++i) {
        const double p = i / 1000.0;
        const double c = CellCuriosity(p, k);
        CHECK(c >= 0.0);
        CHECK(c <= 0.62 + 1e-15);
        CHECK(c == doctest::Approx(CellCuriosity(1.0 - p, k)));
        CHECK(c == doctest::Approx(oracle::Curiosity(p, k)));
        if (p > 0.5) {
            CHECK(c <= prev);
            prev = c;
        }
    }
}

TEST_CASE("total curiosity of a fresh map")
{
    const ObjectMap o(13, 7);
    CHECK(TotalCuriosity(o, {}) == doctest::Approx(13 * 7 * 0.62));

    ObjectMap seen(4, 4);
    for (int i = 0; i < 3; ++i)
        seen.Update(Cell { 0, 0 }, 0.3);
    seen.Update(Cell { 1, 0 }, 1.0);
    /* One free cell, one certain object cell, fourteen unknown */
    CHECK(TotalCuriosity(seen, {}) == doctest::Approx(14 * 0.62));
}

TEST_CASE("predicted observation")
{
    CHECK(PredictObservation(0.5, 2.0, 1.0) == 1.0);
    CHECK(PredictObservation(0.4, 1.0, 2.0) == doctest::Approx(0.2));
    CHECK(PredictObservation(0.3, 1.0, 1.0) == doctest::Approx(0.3));
    CHECK(PredictObservation(0.9, 1.5, 1.0) == 1.0);
    CHECK_THROWS_AS(PredictObservation(0.5, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(PredictObservation(0.5, 1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(PredictObservation(1.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("candidate pose faces along the move")
{
    const OccupancyMap g(10, 10, 0.5);
    const Pose p = CandidatePose(g, { 0.25, 0.25, 1.0 }, { 3, 0 });
    CHECK(p.x == 1.75);
    CHECK(p.y == 0.25);
    CHECK(p.heading == 0.0);
    CHECK(CandidatePose(g, { 1.75, 2.25, 1.0 }, { 3, 0 }).heading == doctest::Approx(1.5 * Pi));
    CHECK(CandidatePose(g, { 1.75, 0.25, 1.0 }, { 3, 0 }).heading == 1.0);
}

TEST_CASE("expected loss hand example")
{
    /* One swept cell two cells ahead with raw posterior 0.3; every other
     * cell is unobserved and contributes nothing */
    const OccupancyMap g(20, 20, 0.25);
    ObjectMap o(20, 20);
    o.Update(Cell { 7, 10 }, 0.3);
    const Pose current { 5.5 * 0.25, 10.5 * 0.25, 0.0 };
    const CameraConfig cam = Camera(2 * Pi, 1.5);
    const CuriosityParams k;

    /* Backing off to 1 m scales 0.3 to 0.15, fusing gives 0.0703 < lambda1 */
    CHECK(ExpectedCuriosityLoss(o, g, current, { 3, 10 }, cam, k) == doctest::Approx(0.62));
    CHECK(ExpectedCuriosityLoss(o, g, current, { 11, 10 }, cam, k) == doctest::Approx(0.62));
    /* Same distance: 0.3 fused again gives 0.155, still unknown */
    CHECK(ExpectedCuriosityLoss(o, g, current, { 9, 10 }, cam, k) == 0.0);
    /* Closer: the prediction rises to 0.6 */
    CHECK(ExpectedCuriosityLoss(o, g, current, { 6, 10 }, cam, k) == 0.0);
    /* Out of camera range */
    CHECK(ExpectedCuriosityLoss(o, g, current, { 7, 17 }, cam, k) == 0.0);

    for (const Cell& c : { Cell { 3, 10 }, Cell { 9, 10 }, Cell { 12, 4 } })
        CHECK(ExpectedCuriosityLoss(o, g, current, c, cam, k) ==
              doctest::Approx(oracle::ExpectedLoss(o, g, current, c, cam, k)));
}

TEST_CASE("an occupied belief cell hides the cells behind it")
{
    ObjectMap o(20, 20);
    o.Update(Cell { 7, 10 }, 0.3);
    const Pose current { 8.5 * 0.25, 10.5 * 0.25, 0.0 };
    const CameraConfig cam = Camera(2 * Pi, 2.0);

    OccupancyMap open(20, 20, 0.25);
    CHECK(ExpectedCuriosityLoss(o, open, current, { 11, 10 }, cam, {}) == doctest::Approx(0.62));

    OccupancyMap walled(20, 20, 0.25);
    for (int r = 9; r <= 11; ++r)
        walled.Update({ 9, r }, 0.9);
    CHECK(ExpectedCuriosityLoss(o, walled, current, { 11, 10 }, cam, {}) == 0.0);
    const auto cells = PredictedCameraCells(walled, { 11.5 * 0.25, 10.5 * 0.25, Pi }, cam);
    CHECK(std::find(cells.begin(), cells.end(), Cell { 9, 10 }) == cells.end());
    CHECK(std::find(cells.begin(), cells.end(), Cell { 7, 10 }) == cells.end());
    CHECK(std::find(cells.begin(), cells.end(), Cell { 10, 10 }) != cells.end());
}

TEST_CASE("predicted camera cells match the stepped oracle")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 25; ++k) {
        const OccupancyMap g = oracle::RandomBelief(rng, 20, 20, 0.5, 0.15);
        const Pose pose { (2 + 16 * u(rng)) * 0.25, (2 + 16 * u(rng)) * 0.25, u(rng) * 2 * Pi };
        const CameraConfig cam = Camera((20 + 100 * u(rng)) * Pi / 180, 0.5 + 2.5 * u(rng));

        std::set<Cell> expected;
        for (const double a : BeamAngles(pose.heading, cam.fov, cam.rayCount)) {
            const auto cells = oracle::SteppedRayCells(
                g.Width(), g.Height(), g.CellSize(), pose.x, pose.y, a, cam.maxRange,
                [&g](const Cell& c) { return g.IsOccupied(c); });
            expected.insert(cells.begin(), cells.end());
        }
        const auto got = PredictedCameraCells(g, pose, cam);
        CHECK(std::is_sorted(got.begin(), got.end()));
        CHECK(std::set<Cell>(got.begin(), got.end()) == expected);
        CHECK(got.size() == expected.size());
    }
}

TEST_CASE("expected loss agrees with the full-map oracle")
{
    std::mt19937_64 rng(44);
    const CuriosityParams k;
    int nonzero = 0;
    for (int t = 0; t < 20; ++t) {
        const Belief b = RandomBeliefState(rng, 18);
        const CameraConfig cam = Camera(Pi / 3, 2.0);
        for (int j = 0; j < 12; ++j) {
            const Cell c { int(UniformIndex(16, rng)) + 1, int(UniformIndex(16, rng)) + 1 };
            const double got = ExpectedCuriosityLoss(b.objects, b.occupancy, b.current, c, cam, k);
            const double want = oracle::ExpectedLoss(b.objects, b.occupancy, b.current, c, cam, k);
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
            nonzero += got != 0.0;
        }
    }
    CHECK(nonzero > 20);
}

TEST_CASE("expected loss is unchanged when the whole scene is scaled")
{
    const CuriosityParams k;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rngA(seed);
        std::mt19937_64 rngB(seed);
        const Belief a = RandomBeliefState(rngA, 16);
        const Belief b = RandomBeliefState(rngB, 16, 2.0);
        const CameraConfig camA = Camera(Pi / 3, 2.0);
        const CameraConfig camB = Camera(Pi / 3, 4.0);
        for (int j = 0; j < 8; ++j) {
            const Cell c { int(UniformIndex(14, rngA)) + 1, int(UniformIndex(14, rngA)) + 1 };
            CHECK(ExpectedCuriosityLoss(a.objects, a.occupancy, a.current, c, camA, k) ==
                  doctest::Approx(ExpectedCuriosityLoss(b.objects, b.occupancy, b.current, c, camB, k))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("argmax tie breaking")
{
    const std::vector<Cell> cells { { 3, 1 }, { 1, 2 }, { 2, 1 }, { 0, 0 } };
    CHECK(ArgmaxLoss(std::vector<double> { 1, 2, 3, 0 }, std::vector<double> { 1, 1, 1, 1 }, cells) == 2);
    /* Relative tie: smaller distance wins */
    CHECK(ArgmaxLoss(std::vector<double> { 5.0, 5.0 * (1 + 1e-12), 1, 1 },
                     std::vector<double> { 2, 1, 0, 0 }, cells) == 1);
    /* Full tie: row-major order */
    CHECK(ArgmaxLoss(std::vector<double> { 1, 1, 1, 0 }, std::vector<double> { 1, 1, 1, 1 }, cells) == 2);
    CHECK(ArgmaxLoss(std::vector<double> { 0, 0, 0, 0 }, std::vector<double> { 1, 1, 1, 1 }, cells) == 3);
    /* A real gap beats distance */
    CHECK(ArgmaxLoss(std::vector<double> { 5.0, 5.001, 1, 1 },
                     std::vector<double> { 1, 2, 0, 0 }, cells) == 1);
    CHECK_THROWS_AS(ArgmaxLoss({}, {}, {}), std::invalid_argument);
    CHECK(LossesTie(0.0, 0.0));
    CHECK_FALSE(LossesTie(0.0, 1e-300));
}

TEST_CASE("frontier selection agrees with the exhaustive oracle")
{
    std::mt19937_64 rng(12);
    const CuriosityParams k;
    for (int t = 0; t < 20; ++t) {
        const Belief b = RandomBeliefState(rng, 18);
        const CameraConfig cam = Camera(Pi / 3, 2.0);
        std::vector<Cell> fv;
        for (int j = 0; j < 10; ++j)
            fv.push_back({ int(UniformIndex(16, rng)) + 1, int(UniformIndex(16, rng)) + 1 });
        const FrontierChoice choice =
            SelectFrontier(fv, b.objects, b.occupancy, b.current, cam, k);
        CHECK(choice.frontier == oracle::SelectFrontier(fv, b.objects, b.occupancy, b.current, cam, k));
        CHECK(choice.losses.size() == fv.size());
        CHECK(choice.loss == choice.losses[choice.index]);
    }

    /* Nothing observed yet: every loss is zero and the nearest wins */
    const OccupancyMap g(10, 10, 0.25);
    const ObjectMap o(10, 10);
    const std::vector<Cell> fv { { 8, 8 }, { 6, 5 }, { 4, 5 }, { 1, 1 } };
    const Pose current { 5.5 * 0.25, 5.5 * 0.25, 0.0 };
    const FrontierChoice c = SelectFrontier(fv, o, g, current, Camera(Pi / 3, 2.0), k);
    CHECK(c.frontier == Cell { 4, 5 });
    CHECK(c.loss == 0.0);
    CHECK_THROWS_AS(SelectFrontier({}, o, g, current, Camera(Pi / 3, 2.0), k), std::invalid_argument);
}
