#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "schutz/chain.hpp"
#include "schutz/order.hpp"
#include "schutz/structure.hpp"

namespace schutz {

// |ab| on a path: closed betweenness interval, endpoints included.
struct Interval {
  std::size_t path = 0;
  EventId a = 0, b = 0;
  std::vector<EventId> events;  // sorted ascending, includes a and b

  bool contains(EventId e) const {
    return std::binary_search(events.begin(), events.end(), e);
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// All four triples of a b c d in this order.
inline bool betw4(const SaturatedBetw& sb, EventId a, EventId b, EventId c, EventId d) {
  return sb.contains(a, b, c) && sb.contains(a, b, d) && sb.contains(a, c, d) &&
         sb.contains(b, c, d);
}

inline Interval mk_interval(const Structure& s, const SaturatedBetw& sb, const Path& path,
                            EventId a, EventId b) {
  if (!path.contains(a) || !path.contains(b))
    throw InputError("interval endpoint not on path " + path.name);
  Interval iv;
  iv.path = s.path_index(path);
  iv.a = a;
  iv.b = b;
  for (EventId m : path.members)  // members are sorted, so events stays sorted
    if (m == a || m == b || sb.contains(a, m, b)) iv.events.push_back(m);
  return iv;
}

// Relative position of two nondegenerate intervals on one path, after
// relabeling by the symmetry group {a<->b, c<->d, (a,b)<->(c,d)}.
enum class WlogCase {
  Disjoint,                // betw4 a' b' c' d'
  Overlapping,             // betw4 a' c' b' d'
  Nested,                  // betw4 a' c' d' b'
  SharedEndpointNested,    // a' = c', [a' d' b']
  SharedEndpointTouching,  // a' = c', [b' a' d']
  Identical,               // {a,b} = {c,d}
};

inline const char* wlog_case_name(WlogCase c) {
  switch (c) {
    case WlogCase::Disjoint: return "disjoint";
    case WlogCase::Overlapping: return "overlapping";
    case WlogCase::Nested: return "nested";
    case WlogCase::SharedEndpointNested: return "shared-endpoint-nested";
    case WlogCase::SharedEndpointTouching: return "shared-endpoint-touching";
    case WlogCase::Identical: return "identical";
  }
  return "?";
}

// Flags apply in order: swap a/b, swap c/d, then swap the two pairs.
// canonical is (a',b',c',d') after all three.
struct Relabeling {
  bool swap_ab = false, swap_cd = false, swap_pairs = false;
  std::array<EventId, 4> canonical{};
};

struct WlogClassification {
  WlogCase tag;
  Relabeling relab;
};

inline WlogClassification wlog_classify(const Structure& s, const SaturatedBetw& sb,
                                        const Interval& I, const Interval& J) {
  if (I.path != J.path) throw InputError("intervals lie on different paths");
  EventId a = I.a, b = I.b, c = J.a, d = J.b;
  if (a == b || c == d) throw InputError("degenerate interval has no case tag");

  bool share_ac = a == c, share_ad = a == d, share_bc = b == c, share_bd = b == d;
  int shared = int(share_ac) + int(share_ad) + int(share_bc) + int(share_bd);

  if (shared >= 2) {  // same 2-set, possibly flipped
    WlogClassification r;
    r.tag = WlogCase::Identical;
    r.relab.swap_cd = (c == b);
    EventId c2 = r.relab.swap_cd ? d : c, d2 = r.relab.swap_cd ? c : d;
    r.relab.canonical = {a, b, c2, d2};
    return r;
  }

  if (shared == 1) {
    WlogClassification r;
    r.relab.swap_ab = share_bc || share_bd;
    r.relab.swap_cd = share_ad || share_bd;
    EventId s0 = r.relab.swap_ab ? b : a;             // the shared endpoint
    EventId p = r.relab.swap_ab ? a : b;              // free end of I
    EventId q = r.relab.swap_cd ? c : d;              // free end of J
    if (sb.contains(s0, q, p)) {                      // J inside I
      r.tag = WlogCase::SharedEndpointNested;
      r.relab.canonical = {s0, p, s0, q};
    } else if (sb.contains(s0, p, q)) {               // I inside J: swap roles
      r.tag = WlogCase::SharedEndpointNested;
      r.relab.swap_pairs = true;
      r.relab.canonical = {s0, q, s0, p};
    } else if (sb.contains(p, s0, q)) {               // back to back
      r.tag = WlogCase::SharedEndpointTouching;
      r.relab.canonical = {s0, p, s0, q};
    } else {
      throw OrderError("interval endpoints not totally ordered on " +
                       s.paths()[I.path].name);
    }
    return r;
  }

  // Four distinct endpoints: scan the 8 relabelings in a fixed order and
  // return the first one matching a case pattern.  The tag is determined by
  // the geometry; which group element witnesses it is a convention.
  for (int sp = 0; sp <= 1; ++sp)
    for (int sab = 0; sab <= 1; ++sab)
      for (int scd = 0; scd <= 1; ++scd) {
        EventId a2 = sab ? b : a, b2 = sab ? a : b;
        EventId c2 = scd ? d : c, d2 = scd ? c : d;
        std::array<EventId, 4> q = sp ? std::array<EventId, 4>{c2, d2, a2, b2}
                                      : std::array<EventId, 4>{a2, b2, c2, d2};
        WlogClassification r;
        r.relab = {bool(sab), bool(scd), bool(sp), q};
        if (betw4(sb, q[0], q[1], q[2], q[3])) {
          r.tag = WlogCase::Disjoint;
          return r;
        }
        if (betw4(sb, q[0], q[2], q[1], q[3])) {
          r.tag = WlogCase::Overlapping;
          return r;
        }
        if (betw4(sb, q[0], q[2], q[3], q[1])) {
          r.tag = WlogCase::Nested;
          return r;
        }
      }
  throw OrderError("interval endpoints not totally ordered on " + s.paths()[I.path].name);
}

// Intersection of two intervals via case analysis on the classification.
// Degenerate inputs are resolved by membership; a degenerate result (single
// shared endpoint) comes back as the one-event interval.
inline std::optional<Interval> interval_intersect(const Structure& s, const SaturatedBetw& sb,
                                                  const Interval& I, const Interval& J) {
  if (I.path != J.path) throw InputError("intervals lie on different paths");
  const Path& path = s.paths()[I.path];
  if (I.a == I.b) {
    if (J.contains(I.a)) return mk_interval(s, sb, path, I.a, I.a);
    return std::nullopt;
  }
  if (J.a == J.b) {
    if (I.contains(J.a)) return mk_interval(s, sb, path, J.a, J.a);
    return std::nullopt;
  }
  WlogClassification cls = wlog_classify(s, sb, I, J);
  const auto& q = cls.relab.canonical;
  switch (cls.tag) {
    case WlogCase::Disjoint:
      return std::nullopt;
    case WlogCase::Overlapping:
      return mk_interval(s, sb, path, q[2], q[1]);
    case WlogCase::Nested:
      return mk_interval(s, sb, path, q[2], q[3]);
    case WlogCase::SharedEndpointNested:
      return mk_interval(s, sb, path, q[0], q[3]);
    case WlogCase::SharedEndpointTouching:
      return mk_interval(s, sb, path, q[0], q[0]);
    case WlogCase::Identical:
      return mk_interval(s, sb, path, I.a, I.b);
  }
  return std::nullopt;
}

// [y S z]: every event of S lies between y and z.  Empty S holds vacuously.
inline bool betw_set(const SaturatedBetw& sb, EventId y, std::span<const EventId> S, EventId z) {
  for (EventId x : S)
    if (!sb.contains(y, x, z)) return false;
  return true;
}

// Partition of a path around a chain on it: the events strictly before the
// chain, strictly after it, strictly inside each consecutive gap, and the
// chain itself.
struct PathDecomposition {
  std::vector<EventId> ray_low, ray_high;      // sorted
  std::vector<std::vector<EventId>> segments;  // one per consecutive chain pair, sorted
  std::vector<EventId> chain_events;           // in chain order
};

inline PathDecomposition decompose_path(const Structure& s, const SaturatedBetw& sb,
                                        const Path& path, const Chain& ch) {
  if (ch.path != s.path_index(path)) throw InputError("chain is not on the given path");
  if (!is_chain(s, sb, ch)) throw InputError("decomposition needs a chain");
  const auto& q = ch.seq;
  std::size_t k = q.size();
  PathDecomposition out;
  out.chain_events = q;
  out.segments.resize(k - 1);
  for (EventId x : path.members) {
    if (std::find(q.begin(), q.end(), x) != q.end()) continue;
    std::size_t hits = 0, where = 0;
    for (std::size_t p = 0; p <= k; ++p) {
      bool ok = p == 0   ? sb.contains(x, q[0], q[1])
                : p == k ? sb.contains(q[k - 2], q[k - 1], x)
                         : sb.contains(q[p - 1], x, q[p]);
      if (ok) {
        ++hits;
        where = p;
      }
    }
    if (hits == 0)
      throw OrderError("events not totally ordered: no position for " + s.name_of(x));
    if (hits > 1)
      throw OrderError("inconsistent betweenness: multiple positions for " + s.name_of(x));
    if (where == 0)
      out.ray_low.push_back(x);
    else if (where == k)
      out.ray_high.push_back(x);
    else
      out.segments[where - 1].push_back(x);
  }
  // path.members iterates in sorted order, so the pieces are already sorted
  return out;
}

}  // namespace schutz
