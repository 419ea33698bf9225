#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace schutz {

using EventId = std::uint32_t;

// Ids are packed three-to-a-word in the order engine, 21 bits each.
inline constexpr EventId kMaxEvents = 1u << 21;

// Bad file contents: carries a 1-based line number in the message.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Bad arguments to an operation (unknown names, precondition violations).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two distinct paths sharing two distinct events.
class I3Violation : public std::runtime_error {
 public:
  I3Violation(std::string a, std::string b)
      : std::runtime_error("paths " + a + " and " + b + " share two events"),
        path_a(std::move(a)),
        path_b(std::move(b)) {}
  std::string path_a, path_b;
};

inline bool valid_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

struct BetwTriple {
  EventId a, b, c;
  friend bool operator==(const BetwTriple&, const BetwTriple&) = default;
  friend auto operator<=>(const BetwTriple&, const BetwTriple&) = default;
};

inline std::uint64_t pack_triple(EventId a, EventId b, EventId c) {
  return (std::uint64_t(a) << 42) | (std::uint64_t(b) << 21) | std::uint64_t(c);
}
inline BetwTriple unpack_triple(std::uint64_t p) {
  return {EventId(p >> 42) & (kMaxEvents - 1), EventId(p >> 21) & (kMaxEvents - 1),
          EventId(p) & (kMaxEvents - 1)};
}

struct Path {
  std::string name;
  std::vector<EventId> members;  // sorted ascending

  bool contains(EventId e) const {
    return std::binary_search(members.begin(), members.end(), e);
  }
  friend bool operator==(const Path&, const Path&) = default;
};

// An incidence/order structure: named events, paths as event sets, and a
// literal betweenness relation.  Immutable once built; event ids index the
// lexicographically sorted name list, so id order is name order.
class Structure {
 public:
  const std::vector<std::string>& events() const { return events_; }
  std::size_t event_count() const { return events_.size(); }

  const std::string& name_of(EventId e) const { return events_.at(e); }

  std::optional<EventId> find_event(std::string_view name) const {
    auto it = std::lower_bound(events_.begin(), events_.end(), name);
    if (it == events_.end() || *it != name) return std::nullopt;
    return EventId(it - events_.begin());
  }

  EventId event_or_throw(std::string_view name) const {
    auto id = find_event(name);
    if (!id) throw InputError("unknown event: " + std::string(name));
    return *id;
  }

  const std::vector<Path>& paths() const { return paths_; }

  const Path* find_path(std::string_view name) const {
    for (const Path& p : paths_)
      if (p.name == name) return &p;
    return nullptr;
  }

  const Path& path_or_throw(std::string_view name) const {
    const Path* p = find_path(name);
    if (!p) throw InputError("unknown path: " + std::string(name));
    return *p;
  }

  std::size_t path_index(const Path& p) const { return &p - paths_.data(); }

  // Literal triples as read: sorted, duplicates removed, orientation kept.
  const std::vector<BetwTriple>& betw() const { return betw_; }

  // The unique path containing every given event, nullptr if none.  Two
  // candidates would mean I3 is broken, and that surfaces as an exception
  // rather than an arbitrary pick.
  const Path* collinear(const std::vector<EventId>& evs) const {
    std::vector<EventId> set(evs);
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.size() < 2) throw InputError("collinear needs at least two distinct events");
    for (EventId e : set)
      if (e >= events_.size()) throw InputError("event id out of range");
    const Path* found = nullptr;
    for (const Path& p : paths_) {
      bool all = true;
      for (EventId e : set)
        if (!p.contains(e)) {
          all = false;
          break;
        }
      if (!all) continue;
      if (found) throw I3Violation(found->name, p.name);
      found = &p;
    }
    return found;
  }

  std::string serialize() const {
    std::string out;
    for (const auto& e : events_) out += "event " + e + "\n";
    for (const Path& p : paths_) {
      out += "path " + p.name;
      for (EventId m : p.members) out += " " + events_[m];
      out += "\n";
    }
    for (const BetwTriple& t : betw_)
      out += "betw " + events_[t.a] + " " + events_[t.b] + " " + events_[t.c] + "\n";
    return out;
  }

  static Structure parse(std::istream& in);
  static Structure parse_string(std::string_view text) {
    std::istringstream ss{std::string(text)};
    return parse(ss);
  }

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  friend class StructureBuilder;
  std::vector<std::string> events_;
  std::vector<Path> paths_;
  std::vector<BetwTriple> betw_;
};

class StructureBuilder {
 public:
  StructureBuilder& add_event(std::string_view name) {
    if (!valid_token(name)) throw InputError("bad event name: " + std::string(name));
    names_.emplace(name);
    return *this;
  }

  StructureBuilder& add_path(std::string_view name, std::vector<std::string> members) {
    if (!valid_token(name)) throw InputError("bad path name: " + std::string(name));
    if (path_names_.count(std::string(name)))
      throw InputError("duplicate path name: " + std::string(name));
    for (const auto& m : members) require_event(m);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() < 2)
      throw InputError("path " + std::string(name) + " needs at least two distinct events");
    path_names_.emplace(name);
    raw_paths_.push_back({std::string(name), std::move(members)});
    return *this;
  }

  StructureBuilder& add_betw(std::string_view a, std::string_view b, std::string_view c) {
    require_event(a);
    require_event(b);
    require_event(c);
    raw_betw_.push_back({std::string(a), std::string(b), std::string(c)});
    return *this;
  }

  Structure build() const {
    Structure s;
    s.events_.assign(names_.begin(), names_.end());
    std::sort(s.events_.begin(), s.events_.end());
    if (s.events_.size() >= kMaxEvents) throw InputError("too many events");
    auto id_of = [&s](const std::string& n) {
      return EventId(std::lower_bound(s.events_.begin(), s.events_.end(), n) - s.events_.begin());
    };
    for (const auto& [pname, pmembers] : raw_paths_) {
      Path p;
      p.name = pname;
      for (const auto& m : pmembers) p.members.push_back(id_of(m));
      std::sort(p.members.begin(), p.members.end());
      s.paths_.push_back(std::move(p));
    }
    std::sort(s.paths_.begin(), s.paths_.end(),
              [](const Path& a, const Path& b) { return a.name < b.name; });
    for (const auto& rt : raw_betw_)
      s.betw_.push_back({id_of(rt[0]), id_of(rt[1]), id_of(rt[2])});
    std::sort(s.betw_.begin(), s.betw_.end());
    s.betw_.erase(std::unique(s.betw_.begin(), s.betw_.end()), s.betw_.end());
    return s;
  }

 private:
  void require_event(std::string_view name) const {
    if (!names_.count(std::string(name)))
      throw InputError("undeclared event: " + std::string(name));
  }

  std::unordered_set<std::string> names_;
  std::unordered_set<std::string> path_names_;
  std::vector<std::pair<std::string, std::vector<std::string>>> raw_paths_;
  std::vector<std::array<std::string, 3>> raw_betw_;
};

inline Structure Structure::parse(std::istream& in) {
  StructureBuilder b;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    std::vector<std::string> args;
    std::string tok;
    while (ls >> tok) args.push_back(tok);
    try {
      if (kw == "event") {
        if (args.size() != 1) throw InputError("event wants one name");
        b.add_event(args[0]);
      } else if (kw == "path") {
        if (args.size() < 3) throw InputError("path wants a name and at least two events");
        std::string name = args[0];
        args.erase(args.begin());
        b.add_path(name, std::move(args));
      } else if (kw == "betw") {
        if (args.size() != 3) throw InputError("betw wants three events");
        b.add_betw(args[0], args[1], args[2]);
      } else {
        throw InputError("unknown directive: " + kw);
      }
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return b.build();
}

}  // namespace schutz
