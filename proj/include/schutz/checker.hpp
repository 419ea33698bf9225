#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "schutz/chain.hpp"
#include "schutz/order.hpp"
#include "schutz/structure.hpp"

namespace schutz {

enum class AxiomId { O1, O2, O3, O4, O5, O6, I1, I2, I3, I5, I6, I7 };

inline constexpr std::array<AxiomId, 12> kAllAxioms = {
    AxiomId::O1, AxiomId::O2, AxiomId::O3, AxiomId::O4, AxiomId::O5, AxiomId::O6,
    AxiomId::I1, AxiomId::I2, AxiomId::I3, AxiomId::I5, AxiomId::I6, AxiomId::I7};

inline const char* axiom_name(AxiomId a) {
  switch (a) {
    case AxiomId::O1: return "O1";
    case AxiomId::O2: return "O2";
    case AxiomId::O3: return "O3";
    case AxiomId::O4: return "O4";
    case AxiomId::O5: return "O5";
    case AxiomId::O6: return "O6";
    case AxiomId::I1: return "I1";
    case AxiomId::I2: return "I2";
    case AxiomId::I3: return "I3";
    case AxiomId::I5: return "I5";
    case AxiomId::I6: return "I6";
    case AxiomId::I7: return "I7";
  }
  return "?";
}

inline std::optional<AxiomId> parse_axiom(std::string_view s) {
  for (AxiomId a : kAllAxioms)
    if (s == axiom_name(a)) return a;
  return std::nullopt;
}

// Axioms whose conclusion asserts existence of some event or path.  A missed
// witness under sampling is inconclusive, not a refutation.
inline bool axiom_has_existential_conclusion(AxiomId a) {
  switch (a) {
    case AxiomId::O1:
    case AxiomId::O6:
    case AxiomId::I1:
    case AxiomId::I2:
    case AxiomId::I5:
    case AxiomId::I6:
    case AxiomId::I7: return true;
    default: return false;
  }
}

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

enum class CheckMode { WholeUniverse, Sampled };

inline const char* mode_name(CheckMode m) {
  return m == CheckMode::WholeUniverse ? "whole-universe" : "sampled";
}

// A (path, external event) pair the input promises to satisfy the
// unreachable-set axioms on.  Sampled mode checks exactly these.
struct DesignatedPair {
  std::size_t path;
  EventId event;
  friend bool operator==(const DesignatedPair&, const DesignatedPair&) = default;
  friend auto operator<=>(const DesignatedPair&, const DesignatedPair&) = default;
};

inline std::vector<DesignatedPair> parse_pairs_file(const Structure& s, std::istream& in) {
  std::vector<DesignatedPair> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw, pname, ename;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw != "pair" || !(ls >> pname >> ename))
      throw ParseError(lineno, "expected: pair <path> <event>");
    const Path* p = s.find_path(pname);
    if (!p) throw ParseError(lineno, "unknown path: " + pname);
    auto e = s.find_event(ename);
    if (!e) throw ParseError(lineno, "unknown event: " + ename);
    if (p->contains(*e))
      throw ParseError(lineno, "designated event " + ename + " lies on path " + pname);
    out.push_back({s.path_index(*p), *e});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct AxiomCheck {
  AxiomId axiom;
  Verdict verdict = Verdict::Pass;
  std::vector<std::vector<std::string>> witnesses;  // capped at kWitnessCap
  std::size_t witness_count = 0;                    // full count
};

struct CheckReport {
  CheckMode mode = CheckMode::WholeUniverse;
  bool saturated = false;
  std::vector<AxiomCheck> results;

  bool any_fail() const {
    for (const auto& r : results)
      if (r.verdict == Verdict::Fail) return true;
    return false;
  }
};

inline bool events_connected(const Structure& s, EventId u, EventId v) {
  for (const Path& p : s.paths())
    if (p.contains(u) && p.contains(v)) return true;
  return false;
}

struct UnreachableSet {
  std::size_t path;
  EventId from;
  std::vector<EventId> members;  // sorted
};

// Events of Q sharing no path with b.  Requires b off Q.
inline UnreachableSet unreachable_from(const Structure& s, const Path& Q, EventId b) {
  if (b >= s.event_count()) throw InputError("event id out of range");
  if (Q.contains(b)) throw InputError("unreachable_from wants an event off the path");
  UnreachableSet u{s.path_index(Q), b, {}};
  for (EventId x : Q.members)
    if (!events_connected(s, x, b)) u.members.push_back(x);
  return u;
}

// Events Qy of Q with [x Qy Qa] such that some Rw on R reaches neither Qa
// nor Qy.  Q and R must be distinct paths meeting at x; Qa on Q.
inline std::vector<EventId> unreachable_via(const Structure& s, const SaturatedBetw& rel,
                                            const Path& Q, EventId Qa, const Path& R,
                                            EventId x) {
  if (Q.name == R.name) throw InputError("unreachable_via wants two distinct paths");
  if (!Q.contains(x) || !R.contains(x)) throw InputError("paths do not meet at the given event");
  if (!Q.contains(Qa)) throw InputError("origin event is not on the path");
  std::vector<EventId> out;
  for (EventId qy : Q.members) {
    if (!rel.contains(x, qy, Qa)) continue;
    for (EventId rw : R.members) {
      if (!events_connected(s, Qa, rw) && !events_connected(s, qy, rw)) {
        out.push_back(qy);
        break;
      }
    }
  }
  return out;
}

namespace detail {

inline constexpr std::size_t kWitnessCap = 32;

struct CheckCtx {
  const Structure& s;
  const SaturatedBetw& rel;
  std::vector<BetwTriple> triples;
  std::vector<std::vector<std::size_t>> paths_of;       // per event, ascending
  std::vector<std::vector<std::uint8_t>> share;         // path x path: meet nonempty
  std::unordered_map<std::uint64_t, std::vector<EventId>> pre;  // (a,b) -> c
  std::unordered_map<std::uint64_t, std::vector<EventId>> mid;  // (a,c) -> b
  mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<EventId>> meets;

  explicit CheckCtx(const Structure& s_, const SaturatedBetw& rel_) : s(s_), rel(rel_) {
    triples = rel.triples_sorted();
    paths_of.resize(s.event_count());
    for (std::size_t pi = 0; pi < s.paths().size(); ++pi)
      for (EventId e : s.paths()[pi].members) paths_of[e].push_back(pi);
    std::size_t np = s.paths().size();
    share.assign(np, std::vector<std::uint8_t>(np, 0));
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = i; j < np; ++j) {
        bool any = false;
        const auto& a = s.paths()[i].members;
        const auto& b = s.paths()[j].members;
        for (std::size_t x = 0, y = 0; x < a.size() && y < b.size();) {
          if (a[x] == b[y]) {
            any = true;
            break;
          }
          a[x] < b[y] ? ++x : ++y;
        }
        share[i][j] = share[j][i] = any;
      }
    for (const BetwTriple& t : triples) {
      pre[pk(t.a, t.b)].push_back(t.c);
      mid[pk(t.a, t.c)].push_back(t.b);
    }
  }

  static std::uint64_t pk(EventId x, EventId y) { return (std::uint64_t(x) << 32) | y; }

  const std::vector<EventId>& meet(std::size_t i, std::size_t j) const {
    auto key = std::minmax(i, j);
    auto it = meets.find(key);
    if (it != meets.end()) return it->second;
    std::vector<EventId> m;
    const auto& a = s.paths()[i].members;
    const auto& b = s.paths()[j].members;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
    return meets.emplace(key, std::move(m)).first->second;
  }

  const std::vector<EventId>& partners(
      const std::unordered_map<std::uint64_t, std::vector<EventId>>& idx, EventId x,
      EventId y) const {
    static const std::vector<EventId> none;
    auto it = idx.find(pk(x, y));
    return it == idx.end() ? none : it->second;
  }

  bool connected(EventId u, EventId v) const {
    for (std::size_t pi : paths_of[u])
      if (s.paths()[pi].contains(v)) return true;
    return false;
  }

  std::vector<EventId> unreachable(std::size_t pi, EventId b) const {
    std::vector<EventId> out;
    for (EventId x : s.paths()[pi].members)
      if (!connected(x, b)) out.push_back(x);
    return out;
  }

  const std::string& name(EventId e) const { return s.name_of(e); }
};

// Accumulates obligation outcomes for one axiom.
struct Tally {
  CheckMode mode;
  bool fail = false, inconclusive = false;
  std::vector<std::vector<std::string>> wit;
  std::size_t count = 0;

  explicit Tally(CheckMode m) : mode(m) {}

  void record(std::vector<std::string> w) {
    ++count;
    if (wit.size() < kWitnessCap) wit.push_back(std::move(w));
  }

  // A universal axiom's counterexample refutes the axiom in either mode.
  void counterexample(std::vector<std::string> w) {
    fail = true;
    record(std::move(w));
  }

  // An existential obligation with no witness: refutes in whole-universe
  // mode, refutes a designated promise, and is otherwise inconclusive.
  void unwitnessed(std::vector<std::string> w, bool designated = false) {
    if (mode == CheckMode::WholeUniverse || designated)
      fail = true;
    else
      inconclusive = true;
    record(std::move(w));
  }

  // Sampled mode only enumerated part of the obligation space.
  void uncovered() {
    if (mode == CheckMode::Sampled) inconclusive = true;
  }

  AxiomCheck result(AxiomId ax) const {
    AxiomCheck r;
    r.axiom = ax;
    r.verdict = fail ? Verdict::Fail : inconclusive ? Verdict::Inconclusive : Verdict::Pass;
    r.witnesses = wit;
    r.witness_count = count;
    return r;
  }
};

inline AxiomCheck check_O1(const CheckCtx& c, CheckMode mode) {
  Tally t(mode);
  for (const BetwTriple& tr : c.triples) {
    bool found = false;
    for (std::size_t pi : c.paths_of[tr.a])
      if (c.s.paths()[pi].contains(tr.b) && c.s.paths()[pi].contains(tr.c)) {
        found = true;
        break;
      }
    if (!found) t.unwitnessed({c.name(tr.a), c.name(tr.b), c.name(tr.c)});
  }
  return t.result(AxiomId::O1);
}

inline AxiomCheck check_O2(const CheckCtx& c, CheckMode mode) {
  Tally t(mode);
  for (const BetwTriple& tr : c.triples)
    if (!c.rel.contains(tr.c, tr.b, tr.a))
      t.counterexample({c.name(tr.a), c.name(tr.b), c.name(tr.c)});
  return t.result(AxiomId::O2);
}

inline AxiomCheck check_O3(const CheckCtx& c, CheckMode mode) {
  Tally t(mode);
  for (const BetwTriple& tr : c.triples)
    if (tr.a == tr.b || tr.b == tr.c || tr.a == tr.c)
      t.counterexample({c.name(tr.a), c.name(tr.b), c.name(tr.c)});
  return t.result(AxiomId::O3);
}

inline AxiomCheck check_O4(const CheckCtx& c, CheckMode mode) {
  Tally t(mode);
  for (const BetwTriple& tr : c.triples)
    for (EventId d : c.partners(c.pre, tr.b, tr.c)) {
      bool distinct = tr.a != tr.b && tr.a != tr.c && tr.a != d && tr.b != tr.c &&
                      tr.b != d && tr.c != d;
      if (distinct && !c.rel.contains(tr.a, tr.b, d))
        t.counterexample({c.name(tr.a), c.name(tr.b), c.name(tr.c), c.name(d)});
    }
  return t.result(AxiomId::O4);
}

inline AxiomCheck check_O5(const CheckCtx& c, CheckMode mode) {
  Tally t(mode);
  for (const Path& p : c.s.paths()) {
    const auto& m = p.members;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j)
        for (std::size_t k = j + 1; k < m.size(); ++k) {
          EventId a = m[i], b = m[j], x = m[k];
          bool any = c.rel.contains(a, b, x) || c.rel.contains(b, x, a) ||
                     c.rel.contains(x, a, b) || c.rel.contains(x, b, a) ||
                     c.rel.contains(a, x, b) || c.rel.contains(b, a, x);
          if (!any) t.counterexample({p.name, c.name(a), c.name(b), c.name(x)});
        }
  }
  return t.result(AxiomId::O5);
}

inline AxiomCheck check_O6(const CheckCtx& c, CheckMode mode) {
  Tally t(mode);
  std::size_t np = c.s.paths().size();
  for (std::size_t qi = 0; qi < np; ++qi)
    for (std::size_t ri = 0; ri < np; ++ri) {
      if (ri == qi || !c.share[qi][ri]) continue;
      for (std::size_t si = 0; si < np; ++si) {
        if (si == qi || si == ri || !c.share[qi][si] || !c.share[ri][si]) continue;
        const Path& S = c.s.paths()[si];
        const Path& R = c.s.paths()[ri];
        const Path& Q = c.s.paths()[qi];
        for (EventId a : c.meet(qi, ri))
          for (EventId b : c.meet(qi, si))
            for (EventId cc : c.meet(ri, si)) {
              for (EventId d : c.partners(c.pre, b, cc)) {
                if (!S.contains(d)) continue;
                for (EventId e : c.partners(c.mid, cc, a)) {
                  if (!R.contains(e)) continue;
                  for (std::size_t ti : c.paths_of[d]) {
                    const Path& T = c.s.paths()[ti];
                    if (!T.contains(e)) continue;
                    bool found = false;
                    for (EventId f : c.meet(ti, qi))
                      if (c.rel.contains(a, f, b)) {
                        found = true;
                        break;
                      }
                    if (!found)
                      t.unwitnessed({Q.name, R.name, S.name, c.name(a), c.name(b), c.name(cc),
                                     c.name(d), c.name(e), T.name});
                  }
                }
              }
            }
      }
    }
  return t.result(AxiomId::O6);
}

inline AxiomCheck check_I1(const CheckCtx& c, CheckMode mode) {
  Tally t(mode);
  if (c.s.event_count() == 0) t.unwitnessed({"no-events"});
  return t.result(AxiomId::I1);
}

inline AxiomCheck check_I2(const CheckCtx& c, CheckMode mode) {
  Tally t(mode);
  std::size_t n = c.s.event_count();
  for (EventId a = 0; a < n; ++a)
    for (EventId b = a + 1; b < n; ++b) {
      bool found = false;
      for (std::size_t ri : c.paths_of[a]) {
        for (std::size_t si : c.paths_of[b])
          if (c.share[ri][si]) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found) t.unwitnessed({c.name(a), c.name(b)});
    }
  return t.result(AxiomId::I2);
}

inline AxiomCheck check_I3(const CheckCtx& c, CheckMode mode) {
  Tally t(mode);
  std::size_t np = c.s.paths().size();
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = i + 1; j < np; ++j) {
      const auto& m = c.meet(i, j);
      if (m.size() >= 2)
        t.counterexample({c.s.paths()[i].name, c.s.paths()[j].name, c.name(m[0]), c.name(m[1])});
    }
  return t.result(AxiomId::I3);
}

// Shared driver for the unreachable-set axioms: enumerate (path, external
// event) pairs, whole-universe over everything, sampled over the designated
// list only.
template <class Fn>
inline void for_unreachable_pairs(const CheckCtx& c, CheckMode mode,
                                  std::span<const DesignatedPair> designated, Tally& t, Fn&& fn) {
  if (mode == CheckMode::Sampled) {
    for (const DesignatedPair& dp : designated) fn(dp.path, dp.event, true);
    std::size_t combos = 0;
    for (const Path& p : c.s.paths()) combos += c.s.event_count() - p.members.size();
    if (designated.size() < combos) t.uncovered();
    return;
  }
  for (std::size_t pi = 0; pi < c.s.paths().size(); ++pi)
    for (EventId b = 0; b < c.s.event_count(); ++b)
      if (!c.s.paths()[pi].contains(b)) fn(pi, b, false);
}

inline AxiomCheck check_I5(const CheckCtx& c, CheckMode mode,
                           std::span<const DesignatedPair> designated) {
  Tally t(mode);
  for_unreachable_pairs(c, mode, designated, t, [&](std::size_t pi, EventId b, bool des) {
    if (c.unreachable(pi, b).size() < 2)
      t.unwitnessed({c.s.paths()[pi].name, c.name(b)}, des);
  });
  return t.result(AxiomId::I5);
}

inline AxiomCheck check_I6(const CheckCtx& c, CheckMode mode,
                           std::span<const DesignatedPair> designated) {
  Tally t(mode);
  for_unreachable_pairs(c, mode, designated, t, [&](std::size_t pi, EventId b, bool des) {
    const Path& Q = c.s.paths()[pi];
    std::vector<EventId> u = c.unreachable(pi, b);
    auto in_u = [&u](EventId e) { return std::binary_search(u.begin(), u.end(), e); };
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j) {
        EventId qx = u[i], qz = u[j];
        // Candidate chain: every unreachable event between qx and qz, in
        // betweenness order.  On a totally ordered path this is the only
        // candidate, since condition (ii) forces each between-event into
        // the unreachable set.
        std::vector<EventId> m;
        for (EventId y : u)
          if (y == qx || y == qz || c.rel.contains(qx, y, qz)) m.push_back(y);
        Chain ch;
        try {
          ch = sort_into_chain(c.s, c.rel, Q, m);
        } catch (const OrderError&) {
          t.unwitnessed({Q.name, c.name(b), c.name(qx), c.name(qz)}, des);
          continue;
        }
        bool ends_ok = (ch.seq.front() == qx && ch.seq.back() == qz) ||
                       (ch.seq.front() == qz && ch.seq.back() == qx);
        if (!ends_ok) {
          t.unwitnessed({Q.name, c.name(b), c.name(qx), c.name(qz)}, des);
          continue;
        }
        for (std::size_t g = 0; g + 1 < ch.seq.size(); ++g) {
          for (EventId y = 0; y < c.s.event_count(); ++y) {
            if (y == ch.seq[g] || y == ch.seq[g + 1]) continue;
            if (c.rel.contains(ch.seq[g], y, ch.seq[g + 1]) && !in_u(y))
              t.unwitnessed({Q.name, c.name(b), c.name(qx), c.name(qz), c.name(y)}, des);
          }
        }
      }
  });
  return t.result(AxiomId::I6);
}

inline AxiomCheck check_I7(const CheckCtx& c, CheckMode mode,
                           std::span<const DesignatedPair> designated) {
  Tally t(mode);
  for_unreachable_pairs(c, mode, designated, t, [&](std::size_t pi, EventId b, bool des) {
    const Path& Q = c.s.paths()[pi];
    std::vector<EventId> u = c.unreachable(pi, b);
    auto in_u = [&u](EventId e) { return std::binary_search(u.begin(), u.end(), e); };
    std::vector<EventId> reach;
    for (EventId x : Q.members)
      if (!in_u(x)) reach.push_back(x);
    for (EventId qx : reach)
      for (EventId qy : u) {
        bool found = false;
        for (EventId z : reach)
          if (c.rel.contains(qx, qy, z)) {
            found = true;
            break;
          }
        if (!found) t.unwitnessed({Q.name, c.name(b), c.name(qx), c.name(qy)}, des);
      }
  });
  return t.result(AxiomId::I7);
}

inline AxiomCheck check_one(const CheckCtx& c, AxiomId ax, CheckMode mode,
                            std::span<const DesignatedPair> designated) {
  switch (ax) {
    case AxiomId::O1: return check_O1(c, mode);
    case AxiomId::O2: return check_O2(c, mode);
    case AxiomId::O3: return check_O3(c, mode);
    case AxiomId::O4: return check_O4(c, mode);
    case AxiomId::O5: return check_O5(c, mode);
    case AxiomId::O6: return check_O6(c, mode);
    case AxiomId::I1: return check_I1(c, mode);
    case AxiomId::I2: return check_I2(c, mode);
    case AxiomId::I3: return check_I3(c, mode);
    case AxiomId::I5: return check_I5(c, mode, designated);
    case AxiomId::I6: return check_I6(c, mode, designated);
    case AxiomId::I7: return check_I7(c, mode, designated);
  }
  throw InputError("unknown axiom");
}

}  // namespace detail

inline AxiomCheck check_axiom(const Structure& s, const SaturatedBetw& rel, AxiomId ax,
                              CheckMode mode,
                              std::span<const DesignatedPair> designated = {}) {
  detail::CheckCtx c(s, rel);
  return detail::check_one(c, ax, mode, designated);
}

inline CheckReport check_all(const Structure& s, CheckMode mode,
                             std::span<const DesignatedPair> designated = {},
                             bool saturate = false,
                             std::span<const AxiomId> which = kAllAxioms) {
  SaturatedBetw rel = saturate ? SaturatedBetw::saturate(s) : SaturatedBetw::literal(s);
  detail::CheckCtx c(s, rel);
  CheckReport rep;
  rep.mode = mode;
  rep.saturated = saturate;
  for (AxiomId ax : which) rep.results.push_back(detail::check_one(c, ax, mode, designated));
  return rep;
}

}  // namespace schutz
