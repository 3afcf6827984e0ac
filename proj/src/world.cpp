
/* world.cpp */

#include "cdos/world.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

namespace cdos {

namespace {

std::string ReadFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(fmt::format("cannot open '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string_view> SplitLines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(begin, end - begin);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        begin = end + 1;
    }
    return lines;
}

std::string_view Trim(std::string_view s)
{
    const auto notSpace = [](char c) { return c != ' ' && c != '\t'; };
    while (!s.empty() && !notSpace(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && !notSpace(s.back()))
        s.remove_suffix(1);
    return s;
}

bool ParseDouble(std::string_view s, double& out)
{
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool ParseInt(std::string_view s, int& out)
{
    s = Trim(s);
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), last, out);
    return ec == std::errc() && ptr == last && !s.empty();
}

void ParseHeader(std::string_view line, double& cellSize, double& heading)
{
    bool haveCellSize = false;
    bool haveHeading = false;
    std::istringstream tokens { std::string(line) };
    std::string token;

    while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw ParseError(fmt::format("invalid header token '{}'", token));
        const std::string_view key = std::string_view(token).substr(0, eq);
        const std::string_view value = std::string_view(token).substr(eq + 1);

        double parsed = 0.0;
        if (!ParseDouble(value, parsed))
            throw ParseError(fmt::format("invalid header value '{}'", token));

        if (key == "cellsize") {
            cellSize = parsed;
            haveCellSize = true;
        } else if (key == "heading") {
            heading = parsed;
            haveHeading = true;
        } else {
            throw ParseError(fmt::format("unknown header key '{}'", key));
        }
    }

    if (!haveCellSize || !haveHeading)
        throw ParseError("invalid header: expected 'cellsize=<float> heading=<float>'");
    if (cellSize <= 0.0)
        throw ParseError("invalid header: cellsize must be positive");
}

} // namespace

double WrapTwoPi(double angle)
{
    constexpr double twoPi = 2.0 * std::numbers::pi;
    double wrapped = std::fmod(angle, twoPi);
    if (wrapped < 0.0)
        wrapped += twoPi;
    /* fmod of a tiny negative value can round up to exactly 2pi */
    return wrapped >= twoPi ? 0.0 : wrapped;
}

double WrapPi(double angle)
{
    constexpr double pi = std::numbers::pi;
    double wrapped = WrapTwoPi(angle);
    if (wrapped > pi)
        wrapped -= 2.0 * pi;
    return wrapped;
}

GridWorld::GridWorld(int width, int height, double cellSize) :
    mWidth(width),
    mHeight(height),
    mCellSize(cellSize)
{
    if (width < 1 || height < 1)
        throw std::invalid_argument("world dimensions must be at least 1x1");
    if (!(cellSize > 0.0))
        throw std::invalid_argument("cell size must be positive");
    mCells.assign(static_cast<std::size_t>(width) * height, Terrain::Free);
}

bool GridWorld::Contains(double x, double y) const
{
    return x >= 0.0 && y >= 0.0 &&
           x < mWidth * mCellSize && y < mHeight * mCellSize;
}

void GridWorld::Set(const Cell& c, Terrain t)
{
    if (!Contains(c))
        throw OutOfBounds("cell outside world");
    if (t == Terrain::Occupied &&
        ((mHasStart && c == mStart) || (mTarget && *mTarget == c)))
        throw std::invalid_argument("start and target cells must stay free");
    mCells[Index(c)] = t;
}

Cell GridWorld::CellOf(double x, double y) const
{
    if (!Contains(x, y))
        throw OutOfBounds(fmt::format("point ({}, {}) outside world", x, y));
    return { static_cast<int>(std::floor(x / mCellSize)),
             static_cast<int>(std::floor(y / mCellSize)) };
}

void GridWorld::SetTarget(std::optional<Cell> target)
{
    if (target) {
        if (!Contains(*target))
            throw OutOfBounds("target outside world");
        if (At(*target) != Terrain::Free)
            throw std::invalid_argument("target must lie on a free cell");
    }
    mTarget = target;
}

void GridWorld::SetStart(const Cell& c, double heading)
{
    if (!Contains(c))
        throw OutOfBounds("start outside world");
    if (At(c) != Terrain::Free)
        throw std::invalid_argument("start must lie on a free cell");
    mStart = c;
    mHasStart = true;
    mStartHeading = WrapTwoPi(heading);
}

GridWorld LoadMap(std::string_view text)
{
    if (text.empty())
        throw ParseError("empty map text");

    std::vector<std::string_view> lines = SplitLines(text);
    while (!lines.empty() && lines.back().empty())
        lines.pop_back();

    if (lines.empty() || Trim(lines.front()).empty())
        throw ParseError("missing header");

    double cellSize = 0.0;
    double heading = 0.0;
    ParseHeader(lines.front(), cellSize, heading);

    if (lines.size() < 2)
        throw ParseError("map has no rows");

    const std::size_t width = lines[1].size();
    const std::size_t height = lines.size() - 1;
    if (width == 0)
        throw ParseError("ragged rows");

    for (std::size_t r = 1; r < lines.size(); ++r)
        if (lines[r].size() != width)
            throw ParseError("ragged rows");

    GridWorld world(static_cast<int>(width), static_cast<int>(height), cellSize);
    std::optional<Cell> start;
    std::optional<Cell> target;

    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const Cell cell { static_cast<int>(c), static_cast<int>(r) };
            switch (lines[r + 1][c]) {
            case '#':
                world.Set(cell, Terrain::Occupied);
                break;
            case '.':
                break;
            case 'S':
                if (start)
                    throw ParseError("multiple starts");
                start = cell;
                break;
            case 'T':
                if (target)
                    throw ParseError("multiple targets");
                target = cell;
                break;
            default:
                throw ParseError(fmt::format(
                    "unknown character '{}' at row {}, column {}",
                    lines[r + 1][c], r, c));
            }
        }
    }

    if (!start)
        throw ParseError("missing start");

    world.SetStart(*start, heading);
    world.SetTarget(target);
    return world;
}

GridWorld LoadMapFile(const std::string& path)
{
    return LoadMap(ReadFile(path));
}

std::string SerializeMap(const GridWorld& world)
{
    std::string out = fmt::format("cellsize={} heading={}\n",
                                  world.CellSize(), world.StartHeading());
    out.reserve(out.size() + world.CellCount() + world.Height());

    for (int r = 0; r < world.Height(); ++r) {
        for (int c = 0; c < world.Width(); ++c) {
            const Cell cell { c, r };
            if (cell == world.Start())
                out.push_back('S');
            else if (world.Target() && *world.Target() == cell)
                out.push_back('T');
            else
                out.push_back(world.At(cell) == Terrain::Occupied ? '#' : '.');
        }
        out.push_back('\n');
    }
    return out;
}

RayTrace TraceRay(const GridWorld& world, double x, double y,
                  double angle, double maxRange)
{
    if (!world.Contains(x, y))
        throw OutOfBounds("ray origin outside world");
    if (!(maxRange > 0.0))
        throw std::invalid_argument("max range must be positive");

    return TraceRayWith(world.Width(), world.Height(), world.CellSize(),
                        x, y, angle, maxRange,
                        [&world](const Cell& c) {
                            return world.At(c) == Terrain::Occupied; });
}

RayHit RayCast(const GridWorld& world, const Pose& origin,
               double angle, double maxRange)
{
    return TraceRay(world, origin.x, origin.y, angle, maxRange).result;
}

std::vector<Zone> LoadZones(std::string_view text, const GridWorld& world)
{
    std::map<int, std::vector<Cell>> zones;
    std::map<std::size_t, int> owner;

    int lineNo = 0;
    for (std::string_view raw : SplitLines(text)) {
        ++lineNo;
        const auto hash = raw.find('#');
        std::string_view line = Trim(raw.substr(0, hash));
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(fmt::format("zone file line {}: expected '='", lineNo));

        const std::string_view key = Trim(line.substr(0, eq));
        std::string_view rest = Trim(line.substr(eq + 1));

        int id = 0;
        if (key.size() <= 4 || key.substr(0, 4) != "zone" ||
            !ParseInt(key.substr(4), id) || id < 1)
            throw ParseError(fmt::format(
                "zone file line {}: bad key '{}'", lineNo, key));
        if (zones.count(id))
            throw ParseError(fmt::format("zone {} defined twice", id));

        std::vector<Cell>& cells = zones[id];
        int rectCount = 0;

        while (!rest.empty()) {
            if (rest.front() != '[')
                throw ParseError(fmt::format(
                    "zone file line {}: expected '['", lineNo));
            const auto close = rest.find(']');
            if (close == std::string_view::npos)
                throw ParseError(fmt::format(
                    "zone file line {}: missing ']'", lineNo));

            std::string_view body = rest.substr(1, close - 1);
            int v[4];
            for (int k = 0; k < 4; ++k) {
                const auto comma = body.find(',');
                const std::string_view field =
                    k < 3 ? body.substr(0, comma) : body;
                if ((k < 3 && comma == std::string_view::npos) ||
                    !ParseInt(field, v[k]))
                    throw ParseError(fmt::format(
                        "zone file line {}: bad rectangle", lineNo));
                if (k < 3)
                    body.remove_prefix(comma + 1);
            }

            const int x0 = std::min(v[0], v[2]);
            const int x1 = std::max(v[0], v[2]);
            const int y0 = std::min(v[1], v[3]);
            const int y1 = std::max(v[1], v[3]);
            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    const Cell c { x, y };
                    if (!world.Contains(c))
                        throw ParseError(fmt::format(
                            "zone {} rectangle leaves the map", id));
                    if (world.At(c) == Terrain::Occupied)
                        continue;
                    const auto [it, inserted] = owner.emplace(world.Index(c), id);
                    if (!inserted && it->second != id)
                        throw ParseError(fmt::format(
                            "zones {} and {} overlap", it->second, id));
                    if (inserted)
                        cells.push_back(c);
                }
            }

            ++rectCount;
            rest = Trim(rest.substr(close + 1));
        }

        if (rectCount == 0)
            throw ParseError(fmt::format("zone {} has no rectangles", id));
    }

    std::vector<Zone> result;
    for (auto& [id, cells] : zones) {
        if (cells.empty())
            throw ParseError(fmt::format("zone {} has no free cells", id));
        std::sort(cells.begin(), cells.end());
        result.push_back({ id, std::move(cells) });
    }
    return result;
}

std::vector<Zone> LoadZonesFile(const std::string& path, const GridWorld& world)
{
    return LoadZones(ReadFile(path), world);
}

std::uint64_t UniformIndex(std::uint64_t bound, std::mt19937_64& rng)
{
    if (bound == 0)
        throw std::invalid_argument("empty range");
    /* Rejection sampling over the largest multiple of bound */
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = rng();
    while (draw >= limit)
        draw = rng();
    return draw % bound;
}

std::vector<Cell> SampleZonePoints(const Zone& zone, int n, std::uint64_t seed)
{
    if (zone.cells.empty())
        throw std::invalid_argument("empty zone");
    if (n < 1)
        throw std::invalid_argument("sample count must be at least 1");

    std::mt19937_64 rng(seed);
    std::vector<Cell> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i)
        samples.push_back(zone.cells[UniformIndex(zone.cells.size(), rng)]);
    return samples;
}

} // namespace cdos
