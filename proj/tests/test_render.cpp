
/* test_render.cpp */

#include "cdos/render.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <numbers>

using namespace cdos;

namespace {

GridWorld Corridor(int length, int targetCol)
{
    GridWorld w(length + 2, 3, 0.25);
    for (int c = 0; c < length + 2; ++c) {
        w.Set({ c, 0 }, Terrain::Occupied);
        w.Set({ c, 2 }, Terrain::Occupied);
    }
    w.Set({ 0, 1 }, Terrain::Occupied);
    w.Set({ length + 1, 1 }, Terrain::Occupied);
    w.SetStart({ 1, 1 }, 0.0);
    w.SetTarget(Cell { targetCol, 1 });
    return w;
}

/* Splits a P5 image into header fields and pixel bytes */
struct Pgm
{
    int width = 0;
    int height = 0;
    std::string pixels;
};

Pgm ReadPgm(const std::string& data)
{
    Pgm p;
    int maxval = 0;
    char magic[3] = {};
    int consumed = 0;
    REQUIRE(std::sscanf(data.c_str(), "%2s %d %d %d%n", magic, &p.width, &p.height, &maxval,
                        &consumed) == 4);
    CHECK(std::string(magic) == "P5");
    CHECK(maxval == 255);
    p.pixels = data.substr(consumed + 1);
    CHECK(p.pixels.size() == static_cast<std::size_t>(p.width) * p.height);
    return p;
}

std::vector<std::string> Lines(const std::string& text)
{
    std::vector<std::string> out;
    std::size_t begin = 0;
    while (begin < text.size()) {
        const std::size_t end = text.find('\n', begin);
        out.push_back(text.substr(begin, end - begin));
        begin = end + 1;
    }
    return out;
}

} // namespace

TEST_CASE("gray levels and glyphs")
{
    CHECK(ProbabilityByte(0.0) == 0);
    CHECK(ProbabilityByte(0.5) == 128);
    CHECK(ProbabilityByte(1.0) == 255);
    CHECK(ProbabilityByte(0.7) == 179);
    CHECK(GlyphForByte(0) == ' ');
    CHECK(GlyphForByte(25) == ' ');
    CHECK(GlyphForByte(26) == '.');
    CHECK(GlyphForByte(128) == '+');
    CHECK(GlyphForByte(255) == '@');

    std::map<char, int> glyphs;
    for (int b = 0; b < 256; ++b)
        ++glyphs[GlyphForByte(static_cast<std::uint8_t>(b))];
    CHECK(glyphs.size() == 10);

    CHECK(OverlayByte(OverlayLabel::Unknown) == 128);
    CHECK(OverlayGlyph(OverlayLabel::Object) == 'X');
    CHECK(ParseRenderFormat("pgm") == RenderFormat::Pgm);
    CHECK(std::string(RenderExtension(RenderFormat::Ascii)) == "txt");
    CHECK_THROWS_AS(ParseRenderFormat("png"), std::invalid_argument);
}

TEST_CASE("fresh maps render as the prior")
{
    const ExplorationResult fresh(OccupancyMap(6, 4, 0.25), ObjectMap(6, 4));
    const RenderedMaps pgm = RenderMaps(fresh, RenderFormat::Pgm);
    const Pgm occ = ReadPgm(pgm.occupancy);
    CHECK(occ.width == 6);
    CHECK(occ.height == 4);
    CHECK(occ.pixels == std::string(24, char(128)));
    CHECK(ReadPgm(pgm.objects).pixels == std::string(24, char(128)));
    CHECK(ReadPgm(pgm.combined).pixels == std::string(24, char(128)));

    const RenderedMaps txt = RenderMaps(fresh, RenderFormat::Ascii);
    CHECK(txt.occupancy == "++++++\n++++++\n++++++\n++++++\n");
    CHECK(txt.combined == "??????\n??????\n??????\n??????\n");
}

TEST_CASE("a finished search marks the target")
{
    const GridWorld world = Corridor(24, 17);
    const ExplorationResult r =
        Explore(world, DefaultExplorerConfig(std::numbers::pi / 3, std::numbers::pi / 6, 3.0),
                Method::Cdos);
    REQUIRE(r.found);

    const auto labels = OverlayLabels(r);
    CHECK(labels[r.occupancy.Index({ 17, 1 })] == OverlayLabel::Object);
    CHECK(labels[r.occupancy.Index({ 5, 1 })] == OverlayLabel::Free);
    CHECK(labels[r.occupancy.Index({ 5, 0 })] == OverlayLabel::Occupied);

    const RenderedMaps txt = RenderMaps(r, RenderFormat::Ascii);
    const auto rows = Lines(txt.combined);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][17] == 'X');
    CHECK(rows[1][5] == '.');
    /* The start cell still borders the unseen wall behind it */
    CHECK(rows[1][1] == '+');
    CHECK(std::count(txt.combined.begin(), txt.combined.end(), 'X') == 1);

    const Pgm comb = ReadPgm(RenderMaps(r, RenderFormat::Pgm).combined);
    CHECK(static_cast<unsigned char>(comb.pixels[r.occupancy.Index({ 17, 1 })]) == 64);
}

TEST_CASE("ASCII and PGM output agree cell for cell")
{
    const GridWorld world = Corridor(30, 28);
    ExplorerConfig cfg = DefaultExplorerConfig(std::numbers::pi / 3, std::numbers::pi / 6, 3.0);
    cfg.budget = 2.0;
    const ExplorationResult r = Explore(world, cfg, Method::RapidFrontier);

    const RenderedMaps txt = RenderMaps(r, RenderFormat::Ascii);
    const RenderedMaps pgm = RenderMaps(r, RenderFormat::Pgm);
    const std::pair<const std::string*, const std::string*> plain[] = {
        { &txt.occupancy, &pgm.occupancy }, { &txt.objects, &pgm.objects } };
    for (const auto& [ascii, image] : plain) {
        const auto rows = Lines(*ascii);
        const Pgm p = ReadPgm(*image);
        REQUIRE(rows.size() == static_cast<std::size_t>(p.height));
        for (int row = 0; row < p.height; ++row) {
            REQUIRE(rows[row].size() == static_cast<std::size_t>(p.width));
            for (int col = 0; col < p.width; ++col)
                CHECK(rows[row][col] ==
                      GlyphForByte(static_cast<std::uint8_t>(p.pixels[row * p.width + col])));
        }
    }

    const auto rows = Lines(txt.combined);
    const Pgm p = ReadPgm(pgm.combined);
    const auto labels = OverlayLabels(r);
    for (int row = 0; row < p.height; ++row) {
        for (int col = 0; col < p.width; ++col) {
            const std::size_t i = row * p.width + col;
            CHECK(rows[row][col] == OverlayGlyph(labels[i]));
            CHECK(static_cast<std::uint8_t>(p.pixels[i]) == OverlayByte(labels[i]));
        }
    }
}
