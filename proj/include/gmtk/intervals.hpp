#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmtk/dyadic.hpp"

namespace gmtk {

struct DyadicInterval {
  Dyadic lo, hi;  // closed [lo, hi], lo <= hi
};

/// Finite union of disjoint closed intervals with dyadic endpoints, kept
/// sorted. Overlapping or touching input intervals are merged on
/// normalization.
struct IntervalUnion {
  std::vector<DyadicInterval> parts;

  Dyadic total_length() const;
  bool empty() const { return parts.empty(); }
};

IntervalUnion normalize_intervals(std::vector<DyadicInterval> parts);

/// Intersection with the closed window [lo, hi].
IntervalUnion clip_intervals(const IntervalUnion& u, const Dyadic& lo, const Dyadic& hi);

/// Text format "p/2^k q/2^k; p/2^k q/2^k; ...". Numerators are plain
/// integers; "p" alone means denominator 2^0.
IntervalUnion parse_interval_union(const std::string& text);
std::string format_interval_union(const IntervalUnion& u);

/// Exact H^1_delta of a dyadic interval union (s = 1), as an exact dyadic
/// value. delta_num/2^delta_k is the cover cap; delta absent means infinity.
/// Solved by dynamic programming over the gap sequence: adjacent intervals
/// may share a cover interval iff the merged span is <= delta, and an
/// interval may always be tiled by abutting pieces at its own length.
Dyadic interval_content_exact(const IntervalUnion& u,
                              const std::optional<Dyadic>& delta = std::nullopt);

/// Same, clipped to the closed window first.
Dyadic interval_content_exact_in_window(const IntervalUnion& u, const Dyadic& window_lo,
                                        const Dyadic& window_hi,
                                        const std::optional<Dyadic>& delta = std::nullopt);

}  // namespace gmtk
