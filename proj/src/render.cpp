
/* render.cpp */

#include "cdos/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cdos {

namespace {

/* Emits one gray level per cell in the chosen format */
std::string Encode(int width, int height, const std::vector<std::uint8_t>& gray,
                   RenderFormat format, const std::vector<char>* glyphs = nullptr)
{
    std::string out;
    if (format == RenderFormat::Pgm) {
        out = fmt::format("P5\n{} {}\n255\n", width, height);
        out.append(gray.begin(), gray.end());
        return out;
    }
    out.reserve(static_cast<std::size_t>(width + 1) * height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * width + c;
            out += glyphs ? (*glyphs)[i] : GlyphForByte(gray[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace

RenderFormat ParseRenderFormat(const std::string& name)
{
    if (name == "ascii")
        return RenderFormat::Ascii;
    if (name == "pgm")
        return RenderFormat::Pgm;
    throw std::invalid_argument("unsupported render format '" + name + "'");
}

const char* RenderExtension(RenderFormat f)
{
    return f == RenderFormat::Pgm ? "pgm" : "txt";
}

std::uint8_t ProbabilityByte(double p)
{
    return static_cast<std::uint8_t>(std::lround(std::clamp(p, 0.0, 1.0) * 255.0));
}

char GlyphForByte(std::uint8_t b)
{
    return GlyphRamp[b * 10 / 256];
}

std::uint8_t OverlayByte(OverlayLabel label)
{
    switch (label) {
    case OverlayLabel::Unknown:
        return 128;
    case OverlayLabel::Free:
        return 255;
    case OverlayLabel::Occupied:
        return 0;
    case OverlayLabel::Frontier:
        return 192;
    case OverlayLabel::Object:
        return 64;
    }
    return 128;
}

char OverlayGlyph(OverlayLabel label)
{
    switch (label) {
    case OverlayLabel::Unknown:
        return '?';
    case OverlayLabel::Free:
        return '.';
    case OverlayLabel::Occupied:
        return '#';
    case OverlayLabel::Frontier:
        return '+';
    case OverlayLabel::Object:
        return 'X';
    }
    return '?';
}

std::vector<OverlayLabel> OverlayLabels(const ExplorationResult& result)
{
    const OccupancyMap& g = result.occupancy;
    const ObjectMap& o = result.objects;
    std::vector<OverlayLabel> labels(g.CellCount(), OverlayLabel::Unknown);

    for (std::size_t i = 0; i < labels.size(); ++i) {
        switch (g.Label(g.CellAt(i))) {
        case OccupancyLabel::Free:
            labels[i] = OverlayLabel::Free;
            break;
        case OccupancyLabel::Occupied:
            labels[i] = OverlayLabel::Occupied;
            break;
        case OccupancyLabel::Unknown:
            break;
        }
    }
    for (const Cell& f : DetectFrontiers(g))
        labels[g.Index(f)] = OverlayLabel::Frontier;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (o.Label(o.CellAt(i)) == ObjectLabel::Occupied)
            labels[i] = OverlayLabel::Object;
    if (result.targetEstimate)
        labels[g.Index(*result.targetEstimate)] = OverlayLabel::Object;
    return labels;
}

RenderedMaps RenderMaps(const ExplorationResult& result, RenderFormat format)
{
    const OccupancyMap& g = result.occupancy;
    const ObjectMap& o = result.objects;
    const int w = g.Width();
    const int h = g.Height();

    std::vector<std::uint8_t> occ(g.CellCount());
    std::vector<std::uint8_t> obj(o.CellCount());
    for (std::size_t i = 0; i < occ.size(); ++i) {
        occ[i] = ProbabilityByte(g.Probability(g.CellAt(i)));
        obj[i] = ProbabilityByte(o.RawProbability(i));
    }

    const std::vector<OverlayLabel> labels = OverlayLabels(result);
    std::vector<std::uint8_t> comb(labels.size());
    std::vector<char> glyphs(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        comb[i] = OverlayByte(labels[i]);
        glyphs[i] = OverlayGlyph(labels[i]);
    }

    return { Encode(w, h, occ, format), Encode(w, h, obj, format),
             Encode(w, h, comb, format, &glyphs) };
}

} // namespace cdos
