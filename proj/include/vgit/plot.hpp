#pragma once

// SVG pictures of a chamber complex cut by an affine 2-plane of the slice.
// Geometry is clipped exactly; decimals appear only in the emitted markup.

#include <optional>
#include <string>

#include "vgit/gitcore.hpp"

namespace vgit::plot {

/// Points origin + s*u + t*v with s0 <= s <= s1 and t0 <= t <= t1.
struct Section {
  QVector origin;
  QVector u;
  QVector v;
  Rational s0, s1, t0, t1;
};

/// Throws DomainError("SectionMissesCone") when the section does not cut the
/// slice polytope in a polygon. One-dimensional configurations are drawn as
/// a strip and take no section.
std::string svg(const git::ChamberComplex& cc, const git::WeightConfiguration& w,
                const std::optional<Section>& section = std::nullopt,
                std::optional<std::size_t> highlight_cell = std::nullopt);

}  // namespace vgit::plot
