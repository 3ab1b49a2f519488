#pragma once

// Two-dimensional rate regions: finite sets of halfplanes a1*R1 + a2*R2 <= b
// with nonnegative integer coefficients, intersected with the nonnegative
// quadrant. All vertex arithmetic is exact.

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace detic {

using Rate = boost::rational<std::int64_t>;

struct RatePair {
  Rate r1{0};
  Rate r2{0};
  friend bool operator==(const RatePair&, const RatePair&) = default;
};

inline std::string rate_to_string(const Rate& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// a1*R1 + a2*R2 <= b
struct Inequality {
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;
  std::int64_t b = 0;

  bool holds(const RatePair& p) const { return a1 * p.r1 + a2 * p.r2 <= Rate(b); }
  bool tight(const RatePair& p) const { return a1 * p.r1 + a2 * p.r2 == Rate(b); }
  std::string to_string() const {
    std::string lhs;
    auto term = [&](std::int64_t c, const char* var) {
      if (c == 0) return;
      if (!lhs.empty()) lhs += " + ";
      if (c != 1) lhs += std::to_string(c);
      lhs += var;
    };
    term(a1, "R1");
    term(a2, "R2");
    if (lhs.empty()) lhs = "0";
    return lhs + " <= " + std::to_string(b);
  }
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

class RateRegion {
 public:
  RateRegion() = default;
  explicit RateRegion(std::vector<Inequality> inequalities) : ineqs_(std::move(inequalities)) {
    for (const auto& q : ineqs_)
      if (q.a1 < 0 || q.a2 < 0) throw std::invalid_argument("rate region coefficients must be nonnegative");
  }

  const std::vector<Inequality>& inequalities() const { return ineqs_; }

  bool bounded() const {
    bool r1 = false;
    bool r2 = false;
    for (const auto& q : ineqs_) {
      r1 = r1 || q.a1 > 0;
      r2 = r2 || q.a2 > 0;
    }
    return r1 && r2;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < ineqs_.size(); ++i) s += (i ? ", " : "") + ineqs_[i].to_string();
    return s + "}";
  }

 private:
  std::vector<Inequality> ineqs_;
};

inline bool region_contains(const RateRegion& reg, const RatePair& p) {
  if (p.r1 < Rate(0) || p.r2 < Rate(0)) return false;
  return std::all_of(reg.inequalities().begin(), reg.inequalities().end(),
                     [&](const Inequality& q) { return q.holds(p); });
}

namespace detail {

inline Rate cross(const RatePair& o, const RatePair& a, const RatePair& b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

inline bool lex_less(const RatePair& a, const RatePair& b) {
  return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
}

/// Andrew's monotone chain; counterclockwise from the lexicographically
/// smallest point, collinear points dropped.
inline std::vector<RatePair> convex_hull(std::vector<RatePair> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<RatePair> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= Rate(0)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= Rate(0)) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Is q implied by a nonnegative integer combination of `others` (using
// R1, R2 >= 0)? Multisets are searched up to size min(a1 + a2, 4).
inline bool dominated(const Inequality& q, const std::vector<Inequality>& others) {
  const std::int64_t max_terms = std::min<std::int64_t>(q.a1 + q.a2, 4);
  std::vector<std::size_t> pick;
  auto search = [&](auto&& self, std::size_t start, std::int64_t c1, std::int64_t c2, std::int64_t d) -> bool {
    if (!pick.empty() && c1 >= q.a1 && c2 >= q.a2 && d <= q.b) return true;
    if (static_cast<std::int64_t>(pick.size()) == max_terms) return false;
    for (std::size_t i = start; i < others.size(); ++i) {
      pick.push_back(i);
      bool found = self(self, i, c1 + others[i].a1, c2 + others[i].a2, d + others[i].b);
      pick.pop_back();
      if (found) return true;
    }
    return false;
  };
  return search(search, 0, 0, 0, 0);
}

}  // namespace detail

/// Vertices of the polygon, counterclockwise from (0,0). Empty when the
/// region is empty.
inline std::vector<RatePair> region_vertices(const RateRegion& reg) {
  if (!reg.bounded()) throw std::invalid_argument("region is unbounded");
  std::vector<Inequality> lines = reg.inequalities();
  lines.push_back({1, 0, 0});  // R1 = 0
  lines.push_back({0, 1, 0});  // R2 = 0
  std::vector<RatePair> candidates;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& p = lines[i];
      const auto& q = lines[j];
      std::int64_t det = p.a1 * q.a2 - p.a2 * q.a1;
      if (det == 0) continue;
      RatePair x{Rate(p.b * q.a2 - p.a2 * q.b, det), Rate(p.a1 * q.b - p.b * q.a1, det)};
      if (region_contains(reg, x)) candidates.push_back(x);
    }
  return detail::convex_hull(std::move(candidates));
}

/// Drops inequalities that are tight at no vertex, then those
/// implied by an integer combination of the survivors.
inline RateRegion remove_redundant(const RateRegion& reg) {
  auto verts = region_vertices(reg);
  if (verts.empty()) return reg;
  std::vector<Inequality> kept;
  for (const auto& q : reg.inequalities()) {
    bool tight = std::any_of(verts.begin(), verts.end(), [&](const RatePair& v) { return q.tight(v); });
    if (tight && std::find(kept.begin(), kept.end(), q) == kept.end()) kept.push_back(q);
  }
  // Heavier constraints (larger a1 + a2) are tried first so that simple
  // single-user bounds survive when they imply a sum constraint.
  std::vector<std::size_t> order(kept.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return kept[x].a1 + kept[x].a2 > kept[y].a1 + kept[y].a2; });
  std::vector<bool> alive(kept.size(), true);
  for (std::size_t i : order) {
    std::vector<Inequality> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i && alive[j]) others.push_back(kept[j]);
    if (detail::dominated(kept[i], others)) alive[i] = false;
  }
  std::vector<Inequality> out;
  for (std::size_t j = 0; j < kept.size(); ++j)
    if (alive[j]) out.push_back(kept[j]);
  return RateRegion(std::move(out));
}

/// Halfplane representation of the convex hull of `points` together with
/// the origin, assuming the hull is downward closed in the quadrant.
inline RateRegion region_from_vertices(const std::vector<RatePair>& points) {
  std::vector<RatePair> pts = points;
  pts.push_back({});
  auto hull = detail::convex_hull(std::move(pts));

  std::vector<std::pair<Rate, Rate>> normals;  // (n1, n2); b = n . p
  std::vector<Rate> rhs;
  Rate max1 = 0;
  Rate max2 = 0;
  for (const auto& v : hull) {
    max1 = std::max(max1, v.r1);
    max2 = std::max(max2, v.r2);
  }
  normals.emplace_back(1, 0);
  rhs.push_back(max1);
  normals.emplace_back(0, 1);
  rhs.push_back(max2);
  for (std::size_t i = 0; hull.size() >= 3 && i < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& q = hull[(i + 1) % hull.size()];
    Rate n1 = q.r2 - p.r2;
    Rate n2 = p.r1 - q.r1;
    if (n1 < Rate(0) || n2 < Rate(0) || (n1 == Rate(0) && n2 == Rate(0))) continue;
    normals.emplace_back(n1, n2);
    rhs.push_back(n1 * p.r1 + n2 * p.r2);
  }

  std::vector<Inequality> ineqs;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    auto [n1, n2] = normals[i];
    const Rate& b = rhs[i];
    std::int64_t scale = std::lcm(std::lcm(n1.denominator(), n2.denominator()), b.denominator());
    std::int64_t a1 = n1.numerator() * (scale / n1.denominator());
    std::int64_t a2 = n2.numerator() * (scale / n2.denominator());
    std::int64_t bb = b.numerator() * (scale / b.denominator());
    std::int64_t g = std::gcd(std::gcd(a1, a2), bb);
    if (g == 0) g = 1;
    ineqs.push_back({a1 / g, a2 / g, bb / g});
  }
  return remove_redundant(RateRegion(std::move(ineqs)));
}

/// Halfplanes of the convex hull of the union (time sharing).
inline RateRegion convex_hull_union(const std::vector<RateRegion>& regions) {
  std::vector<RatePair> pts;
  for (const auto& reg : regions) {
    auto v = region_vertices(reg);
    pts.insert(pts.end(), v.begin(), v.end());
  }
  return region_from_vertices(pts);
}

inline bool region_subset(const RateRegion& a, const RateRegion& b) {
  auto verts = region_vertices(a);
  return std::all_of(verts.begin(), verts.end(), [&](const RatePair& v) { return region_contains(b, v); });
}

inline bool region_equal(const RateRegion& a, const RateRegion& b) {
  return region_subset(a, b) && region_subset(b, a);
}

/// The degrees-of-freedom region of a MIMO interference channel with generic
/// (full rank, independent) channel matrices.
inline RateRegion jafar_region(std::int64_t m1, std::int64_t m2, std::int64_t n1, std::int64_t n2) {
  if (m1 < 1 || m2 < 1 || n1 < 1 || n2 < 1) throw std::invalid_argument("antenna counts must be positive");
  std::int64_t sum = std::min({m1 + m2, n1 + n2, std::max(m1, n2), std::max(m2, n1)});
  return RateRegion({{1, 0, std::min(m1, n1)}, {0, 1, std::min(m2, n2)}, {1, 1, sum}});
}

}  // namespace detic
