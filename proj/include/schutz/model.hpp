#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "schutz/rational.hpp"
#include "schutz/structure.hpp"

namespace schutz {

// 1+1 dimensional coordinates: one time, one space component.
struct Coord {
  Rat t, x;
  friend bool operator==(const Coord&, const Coord&) = default;
  friend bool operator<(const Coord& a, const Coord& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.x < b.x;
  }
};

// Squared interval (+,-) convention: positive is timelike.
inline Rat interval_sq(const Coord& p, const Coord& q) {
  Rat dt = p.t - q.t, dx = p.x - q.x;
  return dt * dt - dx * dx;
}

// Sign of the squared interval without squaring: sign((dt-dx)(dt+dx)).
// Squaring coordinates with large denominators (witness points) would
// overflow the rational type; the factored form never does.
inline int interval_sign(const Coord& p, const Coord& q) {
  Rat dt = p.t - q.t, dx = p.x - q.x;
  return (dt - dx).sign() * (dt + dx).sign();
}

inline bool timelike(const Coord& p, const Coord& q) { return interval_sign(p, q) > 0; }

// Strict betweenness of collinear coordinates.  Only safe for coordinates
// with modest denominators (the cross product squares them).
inline bool coord_strictly_between(const Coord& a, const Coord& m, const Coord& b) {
  Rat cross = (m.t - a.t) * (b.x - a.x) - (m.x - a.x) * (b.t - a.t);
  if (cross.sign() != 0) return false;
  if (a.t != b.t) return (m.t - a.t).sign() * (b.t - m.t).sign() > 0;
  if (a.x != b.x) return (m.x - a.x).sign() * (b.x - m.x).sign() > 0;
  return false;
}

// A timelike line t -> base + t*dir with dir.t > 0 and dir timelike, plus
// the sampled points on it keyed by parameter.
struct ModelLine {
  std::string name;
  Coord base, dir;
  std::map<Rat, std::size_t> points;  // lambda -> point index
};

struct ModelPoint {
  std::string name;
  Coord pos;
  std::vector<std::size_t> lines;  // ascending indices of lines through it
};

// Designated (line, off-line point) pair, by sample indices.
struct ModelPair {
  std::size_t line;
  std::size_t point;
};

struct GenConfig {
  int lines = 2;
  std::uint64_t seed = 0;
  long long bound = 10;
  int witnesses = 2;        // points inside each unreachable interval
  int pairs_per_line = 2;   // designated external events per line
};

// Deterministic integer sampling: raw engine output with rejection, since
// std::uniform_int_distribution is not specified bit-for-bit across
// implementations.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  long long below(long long n) {  // uniform on [0, n)
    std::uint64_t un = std::uint64_t(n);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return (long long)(v % un);
  }

  long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }  // inclusive

 private:
  std::mt19937_64 eng_;
};

// A finite sample of the 1+1 Minkowski plane: timelike lines, points on
// them, 2-point joinability connectors, and designated external events.
class ModelSample {
 public:
  std::size_t add_line(const std::string& name, Coord base, Coord dir) {
    if (dir.t.sign() <= 0) throw InputError("line direction must advance in time");
    if (interval_sign(base, Coord{base.t + dir.t, base.x + dir.x}) <= 0)
      throw InputError("line " + name + " is not timelike");
    if (line_names_.count(name)) throw InputError("duplicate line name: " + name);
    line_names_[name] = lines_.size();
    lines_.push_back({name, base, dir, {}});
    return lines_.size() - 1;
  }

  Coord at(std::size_t line, const Rat& lambda) const {
    const ModelLine& l = lines_.at(line);
    return {l.base.t + lambda * l.dir.t, l.base.x + lambda * l.dir.x};
  }

  Rat lambda_on(std::size_t line, const Coord& c) const {
    return (c.t - lines_.at(line).base.t) / lines_.at(line).dir.t;
  }

  bool on_line(std::size_t line, const Coord& c) const {
    // via the parameter rather than a cross product: keeps denominators flat
    Rat lambda = lambda_on(line, c);
    return at(line, lambda).x == c.x;
  }

  // Adds (or finds) the point at parameter lambda on the line and records
  // the membership.  Coordinates are deduplicated globally, so a second
  // line through the same location shares the point.
  std::size_t add_point(std::size_t line, const Rat& lambda, const std::string& hint = "") {
    Coord c = at(line, lambda);
    std::size_t idx;
    auto it = registry_.find(c);
    if (it != registry_.end()) {
      idx = it->second;
    } else {
      idx = points_.size();
      std::string name = hint;
      if (name.empty() || point_names_.count(name)) name = "p" + std::to_string(idx);
      point_names_[name] = idx;
      points_.push_back({name, c, {}});
      registry_[c] = idx;
    }
    auto& pls = points_[idx].lines;
    auto pos = std::lower_bound(pls.begin(), pls.end(), line);
    if (pos == pls.end() || *pos != line) {
      pls.insert(pos, line);
      lines_[line].points[lambda] = idx;
    }
    return idx;
  }

  void add_connector(std::size_t p1, std::size_t p2) {
    auto key = std::minmax(p1, p2);
    if (p1 == p2 || connector_set_.count(key)) return;
    connector_set_.insert(key);
    connectors_.push_back(key);
  }

  void designate(std::size_t line, std::size_t point) { designated_.push_back({line, point}); }

  const std::vector<ModelLine>& lines() const { return lines_; }
  const std::vector<ModelPoint>& points() const { return points_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& connectors() const {
    return connectors_;
  }
  const std::vector<ModelPair>& designated() const { return designated_; }

  std::optional<std::size_t> find_line(std::string_view name) const {
    auto it = line_names_.find(std::string(name));
    if (it == line_names_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_point(std::string_view name) const {
    auto it = point_names_.find(std::string(name));
    if (it == point_names_.end()) return std::nullopt;
    return it->second;
  }

  // Intersection parameter-point of two lines, nullopt when parallel.
  // Meant for generation-scale lines (integral directions).
  std::optional<Coord> line_meet(std::size_t l1, std::size_t l2) const {
    const ModelLine& a = lines_.at(l1);
    const ModelLine& b = lines_.at(l2);
    Rat det = b.dir.t * a.dir.x - a.dir.t * b.dir.x;
    if (det.sign() == 0) return std::nullopt;
    Rat rt = b.base.t - a.base.t, rx = b.base.x - a.base.x;
    Rat lambda = (b.dir.t * rx - b.dir.x * rt) / det;
    return at(l1, lambda);
  }

  bool points_connected(std::size_t p1, std::size_t p2) const {
    if (p1 == p2) return true;
    const auto& a = points_[p1].lines;
    const auto& b = points_[p2].lines;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
      if (a[i] == b[j]) return true;
      a[i] < b[j] ? ++i : ++j;
    }
    return connector_set_.count(std::minmax(p1, p2)) != 0;
  }

  // Sampled points of the line that are lightlike or spacelike to b,
  // in parameter order.  This is the metric-sign oracle.
  std::vector<std::size_t> oracle_unreachable(std::size_t line, std::size_t b) const {
    const Coord& bp = points_.at(b).pos;
    if (on_line(line, bp)) throw InputError("oracle wants an off-line event");
    std::vector<std::size_t> out;
    for (const auto& [lambda, p] : lines_.at(line).points)
      if (interval_sign(points_[p].pos, bp) <= 0) out.push_back(p);
    return out;
  }

  // The event c with c = 2b - a on the first common line of a and b.
  std::size_t prolong(std::size_t a, std::size_t b) {
    const auto& la = points_.at(a).lines;
    const auto& lb = points_.at(b).lines;
    std::size_t common = SIZE_MAX;
    for (std::size_t i = 0, j = 0; i < la.size() && j < lb.size();) {
      if (la[i] == lb[j]) {
        common = la[i];
        break;
      }
      la[i] < lb[j] ? ++i : ++j;
    }
    if (common == SIZE_MAX) throw InputError("prolong wants two events on a common line");
    Rat lam_a = lambda_on(common, points_[a].pos);
    Rat lam_b = lambda_on(common, points_[b].pos);
    if (lam_a == lam_b) throw InputError("prolong wants two distinct events");
    return add_point(common, lam_b + lam_b - lam_a,
                     "g" + std::to_string(points_.size()));
  }

  Structure export_structure() const {
    StructureBuilder b;
    for (const ModelPoint& p : points_) b.add_event(p.name);
    for (const ModelLine& l : lines_) {
      if (l.points.size() < 2) continue;
      std::vector<std::string> members;
      for (const auto& [lambda, p] : l.points) members.push_back(points_[p].name);
      b.add_path(l.name, std::move(members));
    }
    for (std::size_t ci = 0; ci < connectors_.size(); ++ci)
      b.add_path("c" + std::to_string(ci),
                 {points_[connectors_[ci].first].name, points_[connectors_[ci].second].name});
    for (const ModelLine& l : lines_) {
      std::vector<std::size_t> ordered;
      for (const auto& [lambda, p] : l.points) ordered.push_back(p);
      for (std::size_t i = 0; i < ordered.size(); ++i)
        for (std::size_t j = i + 1; j < ordered.size(); ++j)
          for (std::size_t k = j + 1; k < ordered.size(); ++k) {
            b.add_betw(points_[ordered[i]].name, points_[ordered[j]].name,
                       points_[ordered[k]].name);
            b.add_betw(points_[ordered[k]].name, points_[ordered[j]].name,
                       points_[ordered[i]].name);
          }
    }
    return b.build();
  }

  std::string coords_text() const {
    std::string out;
    for (const ModelPoint& p : points_)
      out += "coord " + p.name + " " + p.pos.t.to_string() + " " + p.pos.x.to_string() + "\n";
    return out;
  }

  std::string pairs_text() const {
    std::string out;
    for (const ModelPair& d : designated_)
      out += "pair " + lines_[d.line].name + " " + points_[d.point].name + "\n";
    return out;
  }

  static ModelSample generate(const GenConfig& cfg);
  static ModelSample load(const Structure& s, std::istream& coords);

 private:
  std::vector<ModelLine> lines_;
  std::vector<ModelPoint> points_;
  std::map<Coord, std::size_t> registry_;
  std::vector<std::pair<std::size_t, std::size_t>> connectors_;
  std::set<std::pair<std::size_t, std::size_t>> connector_set_;
  std::vector<ModelPair> designated_;
  std::map<std::string, std::size_t> point_names_, line_names_;
};

inline ModelSample ModelSample::generate(const GenConfig& cfg) {
  if (cfg.lines < 1) throw InputError("need at least one line");
  if (cfg.bound < 1) throw InputError("bound must be positive");
  ModelSample ms;
  DetRng rng(cfg.seed);
  Rat B(cfg.bound);

  // Distinct rational slopes in (-1,1), integral directions.
  std::vector<Rat> slopes;
  for (int i = 0; i < cfg.lines; ++i) {
    Rat slope;
    int guard = 0;
    do {
      long long den = rng.range(2, 9);
      long long num = rng.range(-(den - 1), den - 1);
      slope = Rat(num, den);
      if (++guard > 10000) throw InputError("slope space exhausted");
    } while (std::find(slopes.begin(), slopes.end(), slope) != slopes.end());
    slopes.push_back(slope);
    Rat x0 = Rat(rng.range(-cfg.bound, cfg.bound), 2);
    ms.add_line("L" + std::to_string(i), {Rat(0), x0},
                {Rat(slope.den()), Rat(slope.num())});
  }

  // All pairwise intersections within the bound become shared points.
  for (std::size_t i = 0; i < ms.lines_.size(); ++i)
    for (std::size_t j = i + 1; j < ms.lines_.size(); ++j) {
      auto m = ms.line_meet(i, j);
      if (!m) continue;
      if (m->t < -B || m->t > B || m->x < -B || m->x > B) continue;
      std::string nm = "x" + std::to_string(i) + "_" + std::to_string(j);
      ms.add_point(i, ms.lambda_on(i, *m), nm);
      ms.add_point(j, ms.lambda_on(j, *m), nm);
    }

  // Every line needs at least two sampled points.
  for (std::size_t i = 0; i < ms.lines_.size(); ++i)
    for (long long f = 0; ms.lines_[i].points.size() < 2; ++f)
      ms.add_point(i, Rat(f), "f" + std::to_string(i) + "_" + std::to_string(f));

  // Designate external events per line and populate their unreachable
  // intervals: cfg.witnesses points inside, one reachable point beyond each
  // end.  A candidate is only designated when the sampled unreachable set
  // ends up with >= 2 members and both flanks are sampled.
  for (std::size_t li = 0; li < ms.lines_.size(); ++li) {
    const ModelLine& L = ms.lines_[li];
    // Intersection points first (they tie lines together), then the rest.
    std::vector<std::size_t> cands;
    for (std::size_t pi = 0; pi < ms.points_.size(); ++pi)
      if (ms.points_[pi].lines.size() >= 2 && !ms.on_line(li, ms.points_[pi].pos))
        cands.push_back(pi);
    for (std::size_t pi = 0; pi < ms.points_.size(); ++pi)
      if (ms.points_[pi].lines.size() < 2 && !ms.on_line(li, ms.points_[pi].pos))
        cands.push_back(pi);

    int made = 0;
    for (std::size_t bi : cands) {
      if (made >= cfg.pairs_per_line) break;
      const Coord bp = ms.points_[bi].pos;
      // q(lambda) = interval_sq(at(lambda), bp): positive leading
      // coefficient, strictly negative minimum for off-line bp.
      Rat A = L.dir.t * L.dir.t - L.dir.x * L.dir.x;
      Rat wt = L.base.t - bp.t, wx = L.base.x - bp.x;
      Rat Bc = (wt * L.dir.t - wx * L.dir.x) * Rat(2);
      Rat C = wt * wt - wx * wx;
      Rat vertex = -Bc / (A * Rat(2));
      Rat vv = C - (Bc * Bc) / (A * Rat(4));
      if (vv.sign() >= 0) continue;  // numerically degenerate; skip
      Rat delta(1);
      while (!(A * delta * delta < -vv)) delta = delta / Rat(2);
      std::string bn = ms.points_[bi].name;
      for (int k = 0; k < cfg.witnesses; ++k) {
        Rat lam = vertex - delta / Rat(2) + delta * Rat(k, cfg.witnesses);
        ms.add_point(li, lam, "w" + std::to_string(li) + "_" + bn + "_i" + std::to_string(k));
      }
      for (int side = 0; side < 2; ++side) {
        Rat step = delta;
        auto off = [&](const Rat& st) { return side == 0 ? vertex - st : vertex + st; };
        int guard = 0;
        while (interval_sign(ms.at(li, off(step)), bp) <= 0) {
          step = step + step;
          if (++guard > 200) throw InputError("unreachable interval did not terminate");
        }
        ms.add_point(li, off(step),
                     "w" + std::to_string(li) + "_" + bn + (side == 0 ? "_l" : "_r"));
      }
      std::size_t inside = 0, lo = 0, hi = 0;
      for (const auto& [lambda, p] : ms.lines_[li].points) {
        int sg = interval_sign(ms.points_[p].pos, bp);
        if (sg <= 0) {
          ++inside;
        } else if (lambda < vertex) {
          ++lo;
        } else {
          ++hi;
        }
      }
      if (inside < 2 || lo == 0 || hi == 0) continue;
      ms.designate(li, bi);
      ++made;
    }
  }

  // Per line, one reachable point beyond the union of its designated
  // unreachable intervals on each side, so bounding events for unions of
  // unreachable sets are sampled too.
  for (std::size_t li = 0; li < ms.lines_.size(); ++li) {
    std::vector<Coord> bs;
    for (const ModelPair& d : ms.designated_)
      if (d.line == li) bs.push_back(ms.points_[d.point].pos);
    if (bs.empty()) continue;
    for (int side = 0; side < 2; ++side) {
      Rat lam = side == 0 ? ms.lines_[li].points.begin()->first
                          : ms.lines_[li].points.rbegin()->first;
      Rat step(1);
      auto unreach_any = [&](const Rat& l) {
        for (const Coord& bp : bs)
          if (interval_sign(ms.at(li, l), bp) <= 0) return true;
        return false;
      };
      int guard = 0;
      while (unreach_any(lam)) {
        lam = side == 0 ? lam - step : lam + step;
        step = step + step;
        if (++guard > 200) throw InputError("union bound did not terminate");
      }
      ms.add_point(li, lam, "u" + std::to_string(li) + (side == 0 ? "_l" : "_r"));
    }
  }

  // Joinability closure for designated pairs: every sampled line point
  // timelike to a designated event shares a path with it, matching the
  // model where any two timelike events lie on a common line.
  for (const ModelPair& d : ms.designated_) {
    std::vector<std::size_t> onQ;
    for (const auto& [lambda, p] : ms.lines_[d.line].points) onQ.push_back(p);
    for (std::size_t p : onQ)
      if (interval_sign(ms.points_[p].pos, ms.points_[d.point].pos) > 0 &&
          !ms.points_connected(p, d.point))
        ms.add_connector(p, d.point);
  }

  return ms;
}

inline ModelSample ModelSample::load(const Structure& s, std::istream& coords) {
  std::vector<std::optional<Coord>> pos(s.event_count());
  std::string line;
  int lineno = 0;
  while (std::getline(coords, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw, name, ts, xs;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw != "coord" || !(ls >> name >> ts >> xs))
      throw ParseError(lineno, "expected: coord <event> <t> <x>");
    auto e = s.find_event(name);
    if (!e) throw ParseError(lineno, "unknown event: " + name);
    auto t = Rat::parse(ts), x = Rat::parse(xs);
    if (!t || !x) throw ParseError(lineno, "bad rational in coord for " + name);
    if (pos[*e]) throw ParseError(lineno, "duplicate coord for " + name);
    pos[*e] = Coord{*t, *x};
  }
  for (EventId e = 0; e < EventId(s.event_count()); ++e)
    if (!pos[e]) throw InputError("no coordinates for event " + s.name_of(e));

  ModelSample ms;
  // Point index == EventId, so loaded samples line up with the structure.
  for (EventId e = 0; e < EventId(s.event_count()); ++e) {
    ms.point_names_[s.name_of(e)] = e;
    ms.points_.push_back({s.name_of(e), *pos[e], {}});
    if (ms.registry_.count(*pos[e]))
      throw InputError("events " + ms.points_[ms.registry_[*pos[e]]].name + " and " +
                       s.name_of(e) + " share coordinates");
    ms.registry_[*pos[e]] = e;
  }
  for (const Path& p : s.paths()) {
    Coord c0 = *pos[p.members[0]];
    Coord c1;
    bool got = false;
    for (std::size_t i = 1; i < p.members.size(); ++i)
      if (*pos[p.members[i]] != c0) {
        c1 = *pos[p.members[i]];
        got = true;
        break;
      }
    if (!got) throw InputError("path " + p.name + " has no extent in coordinates");
    Coord dir{c1.t - c0.t, c1.x - c0.x};
    if (dir.t.sign() < 0) dir = {-dir.t, -dir.x};
    if (dir.t.sign() == 0 || !(interval_sign(c0, c1) > 0))
      throw InputError("path " + p.name + " is not a timelike line");
    std::size_t li = ms.add_line(p.name, c0, dir);
    for (EventId e : p.members) {
      if (!ms.on_line(li, *pos[e]))
        throw InputError("event " + s.name_of(e) + " is off the line of path " + p.name);
      Rat lam = ms.lambda_on(li, *pos[e]);
      auto [it, fresh] = ms.lines_[li].points.try_emplace(lam, e);
      if (!fresh) throw InputError("path " + p.name + " has two events at one location");
      auto& pls = ms.points_[e].lines;
      pls.insert(std::lower_bound(pls.begin(), pls.end(), li), li);
    }
  }
  return ms;
}

}  // namespace schutz
