#pragma once

#include <span>
#include <vector>

#include "schutz/order.hpp"
#include "schutz/structure.hpp"

namespace schutz {

// Chain construction precondition failures (event already present, missing
// betweenness to the chain ends, broken result).
class ChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A finite chain: a path plus an explicitly ordered event sequence on it.
struct Chain {
  std::size_t path = 0;  // index into Structure::paths()
  std::vector<EventId> seq;

  friend bool operator==(const Chain&, const Chain&) = default;
};

// The ordering condition alone: pairwise distinct, and every index triple
// i < j < k has [seq_i seq_j seq_k] in the relation.  Two events are
// vacuously ordered.
inline bool ordering_is_chain(const SaturatedBetw& sb, std::span<const EventId> seq) {
  if (seq.size() < 2) return false;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] == seq[j]) return false;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      for (std::size_t k = j + 1; k < seq.size(); ++k)
        if (!sb.contains(seq[i], seq[j], seq[k])) return false;
  return true;
}

inline bool is_chain(const Structure& s, const SaturatedBetw& sb, const Chain& ch) {
  if (ch.path >= s.paths().size()) return false;
  const Path& p = s.paths()[ch.path];
  for (EventId e : ch.seq)
    if (!p.contains(e)) return false;
  return ordering_is_chain(sb, ch.seq);
}

inline Chain chain_reverse(Chain ch) {
  std::reverse(ch.seq.begin(), ch.seq.end());
  return ch;
}

// Prepend b to a chain: requires [b first last] and yields the sequence
// g(0) = b, g(j) = f(j-1).  The result is re-verified in full.
inline Chain chain_append_left(const Structure& s, const SaturatedBetw& sb, const Chain& ch,
                               EventId b) {
  if (!is_chain(s, sb, ch)) throw InputError("append target is not a chain");
  if (!s.paths()[ch.path].contains(b))
    throw InputError("appended event is not on the chain's path");
  for (EventId e : ch.seq)
    if (e == b) throw ChainError("event already in chain: " + s.name_of(b));
  if (!sb.contains(b, ch.seq.front(), ch.seq.back()))
    throw ChainError("missing [" + s.name_of(b) + " " + s.name_of(ch.seq.front()) + " " +
                     s.name_of(ch.seq.back()) + "]");
  Chain g;
  g.path = ch.path;
  g.seq.reserve(ch.seq.size() + 1);
  g.seq.push_back(b);
  g.seq.insert(g.seq.end(), ch.seq.begin(), ch.seq.end());
  if (!ordering_is_chain(sb, g.seq))
    throw ChainError("prepending " + s.name_of(b) + " does not give a chain");
  return g;
}

// Append b on the right, as the mirror image of chain_append_left: reverse,
// prepend, reverse back.
inline Chain chain_append_right(const Structure& s, const SaturatedBetw& sb, const Chain& ch,
                                EventId b) {
  if (!is_chain(s, sb, ch)) throw InputError("append target is not a chain");
  if (!sb.contains(ch.seq.front(), ch.seq.back(), b))
    throw ChainError("missing [" + s.name_of(ch.seq.front()) + " " + s.name_of(ch.seq.back()) +
                     " " + s.name_of(b) + "]");
  return chain_reverse(chain_append_left(s, sb, chain_reverse(ch), b));
}

// Order a set of path events into a chain by insertion, using only
// betweenness queries.  The result is oriented with the smaller end first,
// so equal sets give identical chains.  Throws OrderError when the facts
// leave an event unplaceable (totality gap) or placeable twice
// (inconsistency).
inline Chain sort_into_chain(const Structure& s, const SaturatedBetw& sb, const Path& path,
                             std::vector<EventId> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2) throw InputError("need at least two distinct events to chain");
  for (EventId e : xs)
    if (!path.contains(e))
      throw InputError("event not on path " + path.name + ": " + s.name_of(e));

  std::vector<EventId> seq = {xs[0], xs[1]};
  for (std::size_t n = 2; n < xs.size(); ++n) {
    EventId x = xs[n];
    std::size_t k = seq.size();
    std::size_t hits = 0, where = 0;
    for (std::size_t p = 0; p <= k; ++p) {
      bool ok = p == 0   ? sb.contains(x, seq[0], seq[1])
                : p == k ? sb.contains(seq[k - 2], seq[k - 1], x)
                         : sb.contains(seq[p - 1], x, seq[p]);
      if (ok) {
        ++hits;
        where = p;
      }
    }
    if (hits == 0)
      throw OrderError("events not totally ordered: no position for " + s.name_of(x));
    if (hits > 1)
      throw OrderError("inconsistent betweenness: multiple positions for " + s.name_of(x));
    seq.insert(seq.begin() + where, x);
  }
  if (seq.front() > seq.back()) std::reverse(seq.begin(), seq.end());
  if (!ordering_is_chain(sb, seq))
    throw OrderError("betweenness facts on " + path.name + " do not form a chain");
  Chain ch;
  ch.path = s.path_index(path);
  ch.seq = std::move(seq);
  return ch;
}

// How many of the |X|! orderings of X satisfy the chain condition.  A
// consistent total order gives exactly 2 (a sequence and its reversal).
inline std::size_t count_chain_orderings(const SaturatedBetw& sb, std::vector<EventId> xs,
                                         std::size_t bound = 7) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2) throw InputError("need at least two distinct events");
  if (xs.size() > bound)
    throw InputError("refusing to enumerate orderings of more than " + std::to_string(bound) +
                     " events");
  std::size_t count = 0;
  do {
    if (ordering_is_chain(sb, xs)) ++count;
  } while (std::next_permutation(xs.begin(), xs.end()));
  return count;
}

}  // namespace schutz
