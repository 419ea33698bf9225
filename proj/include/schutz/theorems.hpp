#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schutz/model.hpp"

namespace schutz {

// Order-theoretic consequences of the axioms, exercised against the
// coordinate sample.  Pair-driven checks (T4, T13, T14i) walk the
// designated external events; trial-driven checks (T8, T3_7) sample
// random triangle configurations.
enum class TheoremId { T4, T8, T3_7, T13, T14i };

inline constexpr TheoremId kAllTheorems[] = {TheoremId::T4, TheoremId::T8, TheoremId::T3_7,
                                             TheoremId::T13, TheoremId::T14i};

inline const char* theorem_name(TheoremId t) {
  switch (t) {
    case TheoremId::T4: return "T4";
    case TheoremId::T8: return "T8";
    case TheoremId::T3_7: return "T3_7";
    case TheoremId::T13: return "T13";
    case TheoremId::T14i: return "T14i";
  }
  return "?";
}

inline std::optional<TheoremId> parse_theorem(std::string_view s) {
  for (TheoremId t : kAllTheorems)
    if (s == theorem_name(t)) return t;
  return std::nullopt;
}

struct TheoremResult {
  TheoremId thm;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t skips = 0;
  std::vector<std::string> notes;  // first few violation descriptions
};

namespace detail {

inline void thm_note(TheoremResult& res, const std::string& msg) {
  if (res.notes.size() < 8) res.notes.push_back(msg);
}

inline std::optional<Coord> meet_lines(const Coord& p1, const Coord& d1, const Coord& p2,
                                       const Coord& d2) {
  Rat det = d2.t * d1.x - d1.t * d2.x;
  if (det.sign() == 0) return std::nullopt;
  Rat rt = p2.t - p1.t, rx = p2.x - p1.x;
  Rat lambda = (d2.t * rx - d2.x * rt) / det;
  return Coord{p1.t + lambda * d1.t, p1.x + lambda * d1.x};
}

// Points of the line in parameter order with their unreachability flag
// relative to b, judged by the sample's joinability (shared path or
// connector), not by the metric.
struct LineView {
  std::vector<std::size_t> pts;
  std::vector<bool> unreach;
};

inline LineView line_view(const ModelSample& ms, std::size_t line, std::size_t b) {
  LineView v;
  for (const auto& [lambda, p] : ms.lines()[line].points) {
    v.pts.push_back(p);
    v.unreach.push_back(!ms.points_connected(p, b));
  }
  return v;
}

// For every reachable a and unreachable y there is a reachable c beyond y.
inline TheoremResult check_t4(const ModelSample& ms, std::span<const ModelPair> designated) {
  TheoremResult res{TheoremId::T4};
  ModelSample ext = ms;  // prolongations may add events
  for (const ModelPair& dp : designated) {
    // Snapshot the line once per pair: prolongations below extend ext but
    // serve only as witnesses, not as new a/y instances for this pair.
    LineView v = line_view(ext, dp.line, dp.point);
    for (std::size_t ia = 0; ia < v.pts.size(); ++ia) {
      if (v.unreach[ia]) continue;
      for (std::size_t iy = 0; iy < v.pts.size(); ++iy) {
        if (!v.unreach[iy]) continue;
        ++res.checked;
        bool fwd = iy > ia;
        bool found = false;
        for (std::size_t ic = iy; !found;) {
          if (fwd) {
            if (++ic >= v.pts.size()) break;
          } else {
            if (ic == 0) break;
            --ic;
          }
          if (!v.unreach[ic]) found = true;
        }
        if (!found) {
          // Extend the line: c_k = 2 c_{k-1} - a doubles the distance from
          // a each round, and far enough along a timelike line everything
          // is timelike to the external event again.
          std::size_t far = v.pts[iy];
          for (int k = 0; k < 64 && !found; ++k) {
            far = ext.prolong(v.pts[ia], far);
            if (interval_sign(ext.points()[far].pos, ext.points()[dp.point].pos) > 0) {
              ext.add_connector(far, dp.point);
              found = true;
            }
          }
        }
        if (!found) {
          ++res.skips;
          --res.checked;
        }
      }
    }
  }
  return res;
}

// Unreachable sets are convex: between two unreachable events of the line
// every event of the line is unreachable.
inline TheoremResult check_t13(const ModelSample& ms, std::span<const ModelPair> designated) {
  TheoremResult res{TheoremId::T13};
  for (const ModelPair& dp : designated) {
    LineView v = line_view(ms, dp.line, dp.point);
    for (std::size_t i = 0; i < v.pts.size(); ++i) {
      if (!v.unreach[i]) continue;
      for (std::size_t k = i + 2; k < v.pts.size(); ++k) {
        if (!v.unreach[k]) continue;
        for (std::size_t j = i + 1; j < k; ++j) {
          ++res.checked;
          if (!v.unreach[j]) {
            ++res.violations;
            thm_note(res, "line " + ms.lines()[dp.line].name + ": " +
                              ms.points()[v.pts[j]].name + " reachable from " +
                              ms.points()[dp.point].name + " between unreachable " +
                              ms.points()[v.pts[i]].name + " and " +
                              ms.points()[v.pts[k]].name);
          }
        }
      }
    }
  }
  return res;
}

// The union of two unreachable sets on one line is bounded by sampled
// events of the line on both sides.
inline TheoremResult check_t14i(const ModelSample& ms, std::span<const ModelPair> designated) {
  TheoremResult res{TheoremId::T14i};
  for (std::size_t i = 0; i < designated.size(); ++i)
    for (std::size_t j = i + 1; j < designated.size(); ++j) {
      if (designated[i].line != designated[j].line) continue;
      ++res.checked;
      LineView va = line_view(ms, designated[i].line, designated[i].point);
      LineView vb = line_view(ms, designated[j].line, designated[j].point);
      std::size_t lo = va.pts.size(), hi = 0;
      bool any = false;
      for (std::size_t k = 0; k < va.pts.size(); ++k)
        if (va.unreach[k] || vb.unreach[k]) {
          if (!any) lo = k;
          hi = k;
          any = true;
        }
      if (!any) continue;  // empty union is bounded by any two events
      if (lo == 0 || hi + 1 == va.pts.size()) {
        ++res.skips;
        --res.checked;
        thm_note(res, "line " + ms.lines()[designated[i].line].name +
                          ": no sampled bound beyond the union for " +
                          ms.points()[designated[i].point].name + ", " +
                          ms.points()[designated[j].point].name);
      }
    }
  return res;
}

// Triangle sampling shared by T8 and T3_7: a, b, c pairwise timelike and
// not collinear, with integer coordinates.
struct Triangle {
  Coord a, b, c;
};

inline std::optional<Triangle> sample_triangle(DetRng& rng) {
  Coord a{Rat(rng.range(-3, 3)), Rat(rng.range(-3, 3))};
  long long dt1 = rng.range(1, 4), dx1 = rng.range(-(dt1 - 1), dt1 - 1);
  long long dt2 = rng.range(1, 4), dx2 = rng.range(-(dt2 - 1), dt2 - 1);
  if (dx1 * dt2 == dx2 * dt1) return std::nullopt;  // collinear
  Coord b{a.t + Rat(dt1), a.x + Rat(dx1)};
  Coord c{b.t + Rat(dt2), b.x + Rat(dx2)};
  return Triangle{a, b, c};
}

inline std::string coord_str(const Coord& c) {
  return "(" + c.t.to_string() + "," + c.x.to_string() + ")";
}

// No path crosses all three sides of a triangle internally: force internal
// crossings of ab and bc, then the crossing with line ac, if any, must lie
// outside the segment.
inline TheoremResult check_t8(const ModelSample&, int trials, std::uint64_t seed) {
  TheoremResult res{TheoremId::T8};
  DetRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    bool built = false;
    Coord x1, y1;
    Triangle tr;
    for (int attempt = 0; attempt < 1000 && !built; ++attempt) {
      auto t = sample_triangle(rng);
      if (!t) continue;
      Rat r1(rng.range(1, 7), 8), r2(rng.range(1, 7), 8);
      Coord px{t->a.t + r1 * (t->b.t - t->a.t), t->a.x + r1 * (t->b.x - t->a.x)};
      Coord py{t->b.t + r2 * (t->c.t - t->b.t), t->b.x + r2 * (t->c.x - t->b.x)};
      if (!timelike(px, py)) continue;
      tr = *t;
      x1 = px;
      y1 = py;
      built = true;
    }
    if (!built) {
      ++res.skips;
      continue;
    }
    ++res.checked;
    Coord dt{y1.t - x1.t, y1.x - x1.x};
    Coord dac{tr.c.t - tr.a.t, tr.c.x - tr.a.x};
    auto m = meet_lines(x1, dt, tr.a, dac);
    if (m && coord_strictly_between(tr.a, *m, tr.c)) {
      ++res.violations;
      thm_note(res, "path through " + coord_str(x1) + "," + coord_str(y1) +
                        " crosses all sides of " + coord_str(tr.a) + coord_str(tr.b) +
                        coord_str(tr.c));
    }
  }
  return res;
}

// From [a e c] and [b c d] with d,e joinable, the line de meets side ab in
// an f with [a f b] and [d e f].
inline TheoremResult check_t3_7(const ModelSample&, int trials, std::uint64_t seed) {
  TheoremResult res{TheoremId::T3_7};
  DetRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    bool built = false;
    Coord d, e;
    Triangle tr;
    for (int attempt = 0; attempt < 1000 && !built; ++attempt) {
      auto t = sample_triangle(rng);
      if (!t) continue;
      Rat r(rng.range(1, 7), 8);
      Rat s(8 + rng.range(1, 8), 8);
      Coord pe{t->a.t + r * (t->c.t - t->a.t), t->a.x + r * (t->c.x - t->a.x)};
      Coord pd{t->b.t + s * (t->c.t - t->b.t), t->b.x + s * (t->c.x - t->b.x)};
      if (!timelike(pd, pe)) continue;
      tr = *t;
      d = pd;
      e = pe;
      built = true;
    }
    if (!built) {
      ++res.skips;
      continue;
    }
    ++res.checked;
    Coord dde{e.t - d.t, e.x - d.x};
    Coord dab{tr.b.t - tr.a.t, tr.b.x - tr.a.x};
    auto f = meet_lines(d, dde, tr.a, dab);
    bool ok = f && coord_strictly_between(tr.a, *f, tr.b) && coord_strictly_between(d, e, *f);
    if (!ok) {
      ++res.violations;
      thm_note(res, "no crossing f with [a f b],[d e f] for a=" + coord_str(tr.a) +
                        " b=" + coord_str(tr.b) + " c=" + coord_str(tr.c) +
                        " d=" + coord_str(d) + " e=" + coord_str(e));
    }
  }
  return res;
}

}  // namespace detail

inline TheoremResult check_theorem(const ModelSample& ms, TheoremId thm,
                                   std::span<const ModelPair> designated, int trials,
                                   std::uint64_t seed) {
  switch (thm) {
    case TheoremId::T4: return detail::check_t4(ms, designated);
    case TheoremId::T13: return detail::check_t13(ms, designated);
    case TheoremId::T14i: return detail::check_t14i(ms, designated);
    case TheoremId::T8: return detail::check_t8(ms, trials, seed);
    case TheoremId::T3_7: return detail::check_t3_7(ms, trials, seed);
  }
  throw InputError("unknown theorem");
}

}  // namespace schutz
