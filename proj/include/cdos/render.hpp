
/* render.hpp */

#ifndef CDOS_RENDER_HPP
#define CDOS_RENDER_HPP

#include "cdos/explorer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cdos {

enum class RenderFormat { Ascii, Pgm };

/* "ascii" or "pgm"; anything else throws std::invalid_argument */
RenderFormat ParseRenderFormat(const std::string& name);
const char* RenderExtension(RenderFormat f);

/* Gray level of a probability: lround(p * 255), so the 0.5 prior is 128 */
std::uint8_t ProbabilityByte(double p);

/* Ten-step ramp from dark to bright; byte b maps to ramp[b * 10 / 256] */
inline constexpr char GlyphRamp[] = " .:-=+*%#@";
char GlyphForByte(std::uint8_t b);

enum class OverlayLabel : std::uint8_t { Unknown, Free, Occupied, Frontier, Object };

/* Fixed gray levels and glyphs of the combined view */
std::uint8_t OverlayByte(OverlayLabel label);
char OverlayGlyph(OverlayLabel label);

/* Row-major labels of the combined view. Object cells (classified above
 * lambda2, plus the reported target) win over frontiers, which win over
 * the occupancy label. */
std::vector<OverlayLabel> OverlayLabels(const ExplorationResult& result);

struct RenderedMaps
{
    std::string occupancy;
    std::string objects;
    std::string combined;
};

/* PGM output is binary P5; ASCII output is one text line per map row */
RenderedMaps RenderMaps(const ExplorationResult& result, RenderFormat format);

} // namespace cdos

#endif // CDOS_RENDER_HPP
