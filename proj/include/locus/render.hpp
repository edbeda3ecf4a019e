#pragma once

#include <string>

#include "locus/io.hpp"

namespace locus {

struct RenderOptions {
  int width = 800;
  int height = 800;
  int margin = 40;
};

/// SVG 1.1 document: edges, vertices, diametral pair paths (class
/// "diametral") and overlay segments (class "shortcut"). The y axis points up.
std::string render_svg(const Network& net, const ShortcutSet* overlay = nullptr, RenderOptions options = {});

/// Render-ready geometry: vertices, edges, and each diametral pair as a polyline.
Json geometry_json(const Network& net, const DiameterReport& report);

}  // namespace locus
