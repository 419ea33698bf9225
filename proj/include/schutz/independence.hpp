#pragma once

#include <ostream>
#include <string>

#include "schutz/checker.hpp"

namespace schutz {

// Bundled corpus for the axiom independence demo: each structure is
// engineered to fail exactly one axiom in literal (unsaturated) mode.
// The same texts live under data/independence/ for standalone use; a test
// keeps the two in sync.
struct IndependenceCase {
  const char* name;
  AxiomId target;
  const char* text;
};

inline constexpr IndependenceCase kIndependenceCases[] = {
    {"violates_O2", AxiomId::O2,
     R"(# Single path with a one-way betweenness assertion: the reverse is missing.
event a
event b
event c
path Q a b c
betw a b c
)"},
    {"violates_O3", AxiomId::O3,
     R"(# A betweenness triple with a repeated event.
event a
event b
path Q a b
betw a b a
)"},
    {"violates_O4", AxiomId::O4,
     R"(# [abc] and [bcd] hold with all four events distinct, but [abd] is missing.
# Both orientations of every other needed triple are present, so O2, O5 and
# the incidence axioms all hold.
event a
event b
event c
event d
path Q a b c d
betw a b c
betw c b a
betw b c d
betw d c b
betw c a d
betw d a c
betw b a d
betw d a b
)"},
    {"violates_O5", AxiomId::O5,
     R"(# Four events on one path but only the 3-subset {a,b,c} carries an ordering.
event a
event b
event c
event d
path Q a b c d
betw a b c
betw c b a
)"},
    {"violates_I3", AxiomId::I3,
     R"(# Two distinct paths share the events a, b and c.  R carries a full chain
# order on four events so the order axioms hold; Q repeats a stretch of it.
event a
event b
event c
event d
path Q a b c
path R a b c d
betw a b c
betw c b a
betw a b d
betw d b a
betw a c d
betw d c a
betw b c d
betw d c b
)"},
};

// Runs every bundled case in literal sampled mode and prints the
// expected-vs-actual matrix.  Returns 0 when each case fails exactly its
// target axiom, 1 otherwise.
inline int run_independence(std::ostream& out) {
  out << "case            ";
  for (AxiomId ax : kAllAxioms) out << " " << axiom_name(ax);
  out << "  target\n";
  bool all_ok = true;
  for (const IndependenceCase& c : kIndependenceCases) {
    Structure s = Structure::parse_string(c.text);
    CheckReport rep = check_all(s, CheckMode::Sampled, {}, /*saturate=*/false);
    out << c.name;
    for (std::size_t i = std::string(c.name).size(); i < 16; ++i) out << ' ';
    bool ok = true;
    for (const AxiomCheck& r : rep.results) {
      char v = verdict_name(r.verdict)[0];  // P / F / I
      bool should_fail = r.axiom == c.target;
      if ((r.verdict == Verdict::Fail) != should_fail) ok = false;
      out << "  " << v;
    }
    out << "  " << axiom_name(c.target) << (ok ? "" : "  <-- MISMATCH") << "\n";
    all_ok = all_ok && ok;
  }
  out << (all_ok ? "independence demo: OK\n" : "independence demo: MISMATCH\n");
  return all_ok ? 0 : 1;
}

}  // namespace schutz
