#pragma once

#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "schutz/structure.hpp"

namespace schutz {

// Totality or consistency failure while ordering events.
class OrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How a triple entered the relation: read from the input, reversal closure,
// the four-event transitivity rule, or the [a b c],[a c d] |- [b c d] rule.
enum class Rule : std::uint8_t { Asserted, O2, O4, AbcAcdBcd };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Asserted: return "asserted";
    case Rule::O2: return "O2";
    case Rule::O4: return "O4";
    case Rule::AbcAcdBcd: return "L-abc-acd-bcd";
  }
  return "?";
}

// Betweenness relation closed (or not) under the derivation rules.  Keyed by
// packed triple; the mapped Rule is the first derivation that produced the
// triple, so asserted facts keep their tag even when re-derivable.
class SaturatedBetw {
 public:
  static SaturatedBetw literal(const Structure& s) {
    SaturatedBetw sb;
    sb.universe_ = s.event_count();
    for (const BetwTriple& t : s.betw())
      sb.prov_.try_emplace(pack_triple(t.a, t.b, t.c), Rule::Asserted);
    return sb;
  }

  static SaturatedBetw saturate(const Structure& s);

  bool contains(EventId a, EventId b, EventId c) const {
    return prov_.count(pack_triple(a, b, c)) != 0;
  }

  std::optional<Rule> provenance(EventId a, EventId b, EventId c) const {
    auto it = prov_.find(pack_triple(a, b, c));
    if (it == prov_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return prov_.size(); }
  std::size_t universe() const { return universe_; }
  const std::unordered_map<std::uint64_t, Rule>& raw() const { return prov_; }

  std::vector<BetwTriple> triples_sorted() const {
    std::vector<BetwTriple> out;
    out.reserve(prov_.size());
    for (const auto& [packed, rule] : prov_) out.push_back(unpack_triple(packed));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  friend SaturatedBetw saturate_impl(const Structure&);
  std::size_t universe_ = 0;
  std::unordered_map<std::uint64_t, Rule> prov_;
};

// Bounds-checked membership query.
inline bool query_between(const SaturatedBetw& sb, EventId a, EventId b, EventId c) {
  if (a >= sb.universe() || b >= sb.universe() || c >= sb.universe())
    throw InputError("event id out of range");
  return sb.contains(a, b, c);
}

namespace detail {

struct SatState {
  std::unordered_map<std::uint64_t, Rule> prov;
  // Join indexes over the triples found so far: by (first,second), by
  // (second,third), and by (first,third).
  std::unordered_map<std::uint64_t, std::vector<EventId>> pre, suf, out;
  std::deque<std::uint64_t> work;

  static std::uint64_t pk(EventId x, EventId y) { return (std::uint64_t(x) << 32) | y; }

  void insert(EventId a, EventId b, EventId c, Rule r) {
    auto [it, fresh] = prov.try_emplace(pack_triple(a, b, c), r);
    if (!fresh) return;
    pre[pk(a, b)].push_back(c);
    suf[pk(b, c)].push_back(a);
    out[pk(a, c)].push_back(b);
    work.push_back(it->first);
  }

  std::vector<EventId> partners(const std::unordered_map<std::uint64_t, std::vector<EventId>>& idx,
                                EventId x, EventId y) const {
    auto it = idx.find(pk(x, y));
    // copied out: insertions during the join may rehash or extend the bucket
    return it == idx.end() ? std::vector<EventId>{} : it->second;
  }
};

}  // namespace detail

// Least fixpoint of the literal relation under three rules:
//   [a b c]            |- [c b a]
//   [a b c], [b c d]   |- [a b d]   (a,b,c,d pairwise distinct)
//   [a b c], [a c d]   |- [b c d]
// Worklist semantics: every pair of triples is joined when the later of the
// two is popped, since the earlier one is already indexed by then.
inline SaturatedBetw SaturatedBetw::saturate(const Structure& s) {
  detail::SatState st;
  for (const BetwTriple& t : s.betw()) st.insert(t.a, t.b, t.c, Rule::Asserted);
  auto distinct4 = [](EventId a, EventId b, EventId c, EventId d) {
    return a != b && a != c && a != d && b != c && b != d && c != d;
  };
  while (!st.work.empty()) {
    std::uint64_t packed = st.work.front();
    st.work.pop_front();
    auto [x, y, z] = unpack_triple(packed);
    st.insert(z, y, x, Rule::O2);
    // [x y z] with [y z w]
    for (EventId w : st.partners(st.pre, y, z))
      if (distinct4(x, y, z, w)) st.insert(x, y, w, Rule::O4);
    // [w x y] with [x y z]
    for (EventId w : st.partners(st.suf, x, y))
      if (distinct4(w, x, y, z)) st.insert(w, x, z, Rule::O4);
    // [x y z] as the first premise: [x z d] gives [y z d]
    for (EventId d : st.partners(st.pre, x, z)) st.insert(y, z, d, Rule::AbcAcdBcd);
    // [x y z] as the second premise: [x m y] gives [m y z]
    for (EventId m : st.partners(st.out, x, y)) st.insert(m, y, z, Rule::AbcAcdBcd);
  }
  SaturatedBetw sb;
  sb.universe_ = s.event_count();
  sb.prov_ = std::move(st.prov);
  return sb;
}

struct ConsistencyWitness {
  std::string kind;  // "O3" (repeated event) or "Thm1" (two middles for one 3-set)
  BetwTriple first;
  std::optional<BetwTriple> second;
};

struct ConsistencyReport {
  bool consistent = true;
  std::vector<ConsistencyWitness> witnesses;
};

// A relation is consistent when no derivable triple repeats an event and no
// 3-element set is ordered with two different middle events.
inline ConsistencyReport check_consistency(const SaturatedBetw& sb) {
  ConsistencyReport rep;
  auto triples = sb.triples_sorted();
  std::map<std::uint64_t, std::map<EventId, BetwTriple>> middles;  // sorted 3-set -> middle -> rep
  for (const BetwTriple& t : triples) {
    if (t.a == t.b || t.b == t.c || t.a == t.c) {
      rep.witnesses.push_back({"O3", t, std::nullopt});
      continue;
    }
    EventId lo = std::min({t.a, t.b, t.c});
    EventId hi = std::max({t.a, t.b, t.c});
    EventId mid = EventId(std::uint64_t(t.a) + t.b + t.c - lo - hi);
    // key by the unordered set {a,b,c}; the middle event distinguishes orbits
    auto& seen = middles[pack_triple(lo, mid, hi)];
    auto [it, fresh] = seen.try_emplace(t.b, t);
    if (!fresh) continue;
    if (seen.size() == 2) {
      rep.witnesses.push_back({"Thm1", seen.begin()->second, std::prev(seen.end())->second});
    } else if (seen.size() > 2) {
      rep.witnesses.push_back({"Thm1", seen.begin()->second, t});
    }
  }
  rep.consistent = rep.witnesses.empty();
  return rep;
}

}  // namespace schutz
