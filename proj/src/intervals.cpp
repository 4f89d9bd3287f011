#include "gmtk/intervals.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gmtk {

Dyadic IntervalUnion::total_length() const {
  Dyadic sum(0, 0);
  for (const auto& iv : parts) sum = sum + (iv.hi - iv.lo);
  return sum;
}

IntervalUnion normalize_intervals(std::vector<DyadicInterval> parts) {
  for (const auto& iv : parts)
    if (iv.hi < iv.lo) throw std::invalid_argument("interval union: hi < lo");
  std::sort(parts.begin(), parts.end(),
            [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo < b.lo; });
  IntervalUnion out;
  for (const auto& iv : parts) {
    if (!out.parts.empty() && iv.lo <= out.parts.back().hi) {
      out.parts.back().hi = dyadic_max(out.parts.back().hi, iv.hi);
    } else {
      out.parts.push_back(iv);
    }
  }
  return out;
}

IntervalUnion clip_intervals(const IntervalUnion& u, const Dyadic& lo, const Dyadic& hi) {
  IntervalUnion out;
  for (const auto& iv : u.parts) {
    Dyadic a = dyadic_max(iv.lo, lo);
    Dyadic b = dyadic_min(iv.hi, hi);
    if (a <= b) out.parts.push_back({a, b});
  }
  return out;
}

namespace {

Dyadic parse_dyadic(const std::string& token) {
  auto slash = token.find('/');
  if (slash == std::string::npos) return Dyadic(std::stoll(token), 0);
  std::string den = token.substr(slash + 1);
  if (den.rfind("2^", 0) != 0)
    throw std::invalid_argument("interval union: denominator must be a power of two: " + token);
  int k = std::stoi(den.substr(2));
  if (k < 0 || k > 60) throw std::invalid_argument("interval union: bad exponent in " + token);
  return Dyadic(std::stoll(token.substr(0, slash)), k);
}

}  // namespace

IntervalUnion parse_interval_union(const std::string& text) {
  std::vector<DyadicInterval> parts;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ';')) {
    std::stringstream ps(piece);
    std::string a, b;
    if (!(ps >> a)) continue;  // empty piece
    if (!(ps >> b)) throw std::invalid_argument("interval union: expected two endpoints in '" + piece + "'");
    parts.push_back({parse_dyadic(a), parse_dyadic(b)});
  }
  return normalize_intervals(std::move(parts));
}

std::string format_interval_union(const IntervalUnion& u) {
  std::string out;
  for (std::size_t i = 0; i < u.parts.size(); ++i) {
    if (i) out += "; ";
    auto fmt = [](const Dyadic& d) {
      return d.k == 0 ? std::to_string(d.num) : std::to_string(d.num) + "/2^" + std::to_string(d.k);
    };
    out += fmt(u.parts[i].lo) + " " + fmt(u.parts[i].hi);
  }
  return out;
}

Dyadic interval_content_exact(const IntervalUnion& u, const std::optional<Dyadic>& delta) {
  if (u.parts.empty()) return Dyadic(0, 0);
  if (delta && !(Dyadic(0, 0) < *delta))
    throw std::invalid_argument("interval content: delta must be positive");
  const auto& parts = u.parts;
  std::size_t m = parts.size();
  // dp[i] = minimal cover cost of the first i intervals. A group j..i shares
  // one cover interval when its span fits under delta; a single interval can
  // always be tiled at exactly its own length.
  std::vector<Dyadic> dp(m + 1, Dyadic(0, 0));
  std::vector<bool> feasible(m + 1, false);
  feasible[0] = true;
  const Dyadic huge(std::int64_t(1) << 62, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    Dyadic best = huge;
    bool found = false;
    // group = intervals j..i (1-based)
    for (std::size_t j = i; j >= 1; --j) {
      Dyadic span = parts[i - 1].hi - parts[j - 1].lo;
      Dyadic cost;
      if (j == i) {
        cost = parts[i - 1].hi - parts[i - 1].lo;  // tiled at its own length
      } else if (!delta || span <= *delta) {
        cost = span;
      } else {
        break;  // span only grows as j decreases
      }
      if (feasible[j - 1]) {
        Dyadic total = dp[j - 1] + cost;
        if (!found || total < best) {
          best = total;
          found = true;
        }
      }
      if (j == 1) break;
    }
    dp[i] = best;
    feasible[i] = found;
  }
  if (!feasible[m]) throw std::logic_error("interval content: dp infeasible");
  return dp[m];
}

Dyadic interval_content_exact_in_window(const IntervalUnion& u, const Dyadic& window_lo,
                                        const Dyadic& window_hi,
                                        const std::optional<Dyadic>& delta) {
  return interval_content_exact(clip_intervals(u, window_lo, window_hi), delta);
}

}  // namespace gmtk
