#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "schutz/chain.hpp"
#include "schutz/checker.hpp"
#include "schutz/independence.hpp"
#include "schutz/interval.hpp"
#include "schutz/model.hpp"
#include "schutz/order.hpp"
#include "schutz/structure.hpp"
#include "schutz/theorems.hpp"

namespace schutz {
namespace cli_detail {

inline Structure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return Structure::parse(in);
}

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

inline std::string witness_str(const std::vector<std::string>& w) {
  return "(" + join(w, ",") + ")";
}

inline std::string triple_str(const Structure& s, const BetwTriple& t) {
  return "[" + s.name_of(t.a) + " " + s.name_of(t.b) + " " + s.name_of(t.c) + "]";
}

inline void print_check_text(std::ostream& out, const CheckReport& rep) {
  for (const AxiomCheck& r : rep.results) {
    out << axiom_name(r.axiom) << ": " << verdict_name(r.verdict);
    if (!r.witnesses.empty()) {
      out << " witness=" << witness_str(r.witnesses.front());
      if (r.witness_count > 1) out << " (+" << r.witness_count - 1 << " more)";
    }
    out << "\n";
  }
}

inline void print_check_json(std::ostream& out, const CheckReport& rep) {
  nlohmann::json j;
  j["mode"] = mode_name(rep.mode);
  j["saturated"] = rep.saturated;
  j["results"] = nlohmann::json::array();
  for (const AxiomCheck& r : rep.results) {
    nlohmann::json jr;
    jr["axiom"] = axiom_name(r.axiom);
    jr["verdict"] = verdict_name(r.verdict);
    jr["witness_count"] = r.witness_count;
    jr["witnesses"] = r.witnesses;
    j["results"].push_back(std::move(jr));
  }
  out << j.dump(2) << "\n";
}

inline std::string strip_suffix(const std::string& s, const std::string& suf) {
  if (s.size() > suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0)
    return s.substr(0, s.size() - suf.size());
  return s;
}

struct CheckOpts {
  std::string file, axioms_csv, pairs_file;
  bool sampled = false, saturate = false, json = false;
};

inline int cmd_check(const CheckOpts& o, std::ostream& out) {
  Structure s = load_structure(o.file);
  std::vector<AxiomId> which(kAllAxioms.begin(), kAllAxioms.end());
  if (!o.axioms_csv.empty()) {
    which.clear();
    for (const std::string& tok : split_csv(o.axioms_csv)) {
      auto ax = parse_axiom(tok);
      if (!ax) throw InputError("unknown axiom: " + tok);
      which.push_back(*ax);
    }
  }
  std::vector<DesignatedPair> pairs;
  if (!o.pairs_file.empty()) {
    std::ifstream pin(o.pairs_file);
    if (!pin) throw InputError("cannot open " + o.pairs_file);
    pairs = parse_pairs_file(s, pin);
  }
  CheckMode mode = o.sampled ? CheckMode::Sampled : CheckMode::WholeUniverse;
  CheckReport rep = check_all(s, mode, pairs, o.saturate, which);
  if (o.json)
    print_check_json(out, rep);
  else
    print_check_text(out, rep);
  return rep.any_fail() ? 1 : 0;
}

inline int cmd_saturate(const std::string& file, const std::string& out_file, std::ostream& out,
                        std::ostream& err) {
  Structure s = load_structure(file);
  SaturatedBetw sb = SaturatedBetw::saturate(s);
  ConsistencyReport cons = check_consistency(sb);

  StructureBuilder b;
  for (const std::string& e : s.events()) b.add_event(e);
  for (const Path& p : s.paths()) {
    std::vector<std::string> members;
    for (EventId m : p.members) members.push_back(s.name_of(m));
    b.add_path(p.name, std::move(members));
  }
  for (const BetwTriple& t : sb.triples_sorted())
    b.add_betw(s.name_of(t.a), s.name_of(t.b), s.name_of(t.c));
  std::string text = b.build().serialize();

  std::ostream* summary = &err;
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) throw InputError("cannot open " + out_file);
    f << text;
    summary = &out;
  } else {
    out << text;
  }
  *summary << "saturated: " << sb.size() << " triples\n";
  for (const ConsistencyWitness& w : cons.witnesses) {
    *summary << "inconsistent (" << (w.kind == "O3" ? "repeated event" : "two middles")
             << "): " << triple_str(s, w.first);
    if (w.second) *summary << " vs " << triple_str(s, *w.second);
    *summary << "\n";
  }
  if (cons.consistent) *summary << "consistent\n";
  return cons.consistent ? 0 : 1;
}

struct ChainOpts {
  std::string file, path, events_csv;
  bool count_orderings = false;
};

inline int cmd_chain(const ChainOpts& o, std::ostream& out) {
  Structure s = load_structure(o.file);
  SaturatedBetw sb = SaturatedBetw::saturate(s);
  const Path& path = s.path_or_throw(o.path);
  std::vector<EventId> xs;
  for (const std::string& name : split_csv(o.events_csv)) xs.push_back(s.event_or_throw(name));
  try {
    Chain ch = sort_into_chain(s, sb, path, xs);
    std::vector<std::string> names;
    for (EventId e : ch.seq) names.push_back(s.name_of(e));
    out << "(" << join(names, ",") << ")\n";
    if (o.count_orderings) out << "orderings: " << count_chain_orderings(sb, xs) << "\n";
    return 0;
  } catch (const OrderError& e) {
    out << "not a chain: " << e.what() << "\n";
    return 1;
  }
}

struct IntervalOpts {
  std::string file, path;
  std::vector<std::string> classify, intersect;
  std::string decompose_csv;
};

inline void print_event_set(std::ostream& out, const Structure& s,
                            const std::vector<EventId>& es) {
  std::vector<std::string> names;
  for (EventId e : es) names.push_back(s.name_of(e));
  out << "{" << join(names, ",") << "}";
}

inline int cmd_interval(const IntervalOpts& o, std::ostream& out) {
  int given = int(!o.classify.empty()) + int(!o.intersect.empty()) + int(!o.decompose_csv.empty());
  if (given != 1)
    throw InputError("interval wants exactly one of --classify, --intersect, --decompose");
  Structure s = load_structure(o.file);
  SaturatedBetw sb = SaturatedBetw::saturate(s);
  const Path& path = s.path_or_throw(o.path);

  auto mk = [&](const std::string& a, const std::string& b) {
    return mk_interval(s, sb, path, s.event_or_throw(a), s.event_or_throw(b));
  };

  if (!o.classify.empty()) {
    Interval I = mk(o.classify[0], o.classify[1]);
    Interval J = mk(o.classify[2], o.classify[3]);
    WlogClassification r = wlog_classify(s, sb, I, J);
    out << "case: " << wlog_case_name(r.tag) << "\n";
    out << "relabel: swap_ab=" << r.relab.swap_ab << " swap_cd=" << r.relab.swap_cd
        << " swap_pairs=" << r.relab.swap_pairs << "\n";
    std::vector<std::string> canon;
    for (EventId e : r.relab.canonical) canon.push_back(s.name_of(e));
    out << "canonical: (" << join(canon, ",") << ")\n";
    return 0;
  }
  if (!o.intersect.empty()) {
    Interval I = mk(o.intersect[0], o.intersect[1]);
    Interval J = mk(o.intersect[2], o.intersect[3]);
    auto K = interval_intersect(s, sb, I, J);
    if (!K) {
      out << "empty\n";
    } else {
      out << "interval |" << s.name_of(K->a) << " " << s.name_of(K->b) << "| = ";
      print_event_set(out, s, K->events);
      out << "\n";
    }
    return 0;
  }
  std::vector<EventId> xs;
  for (const std::string& name : split_csv(o.decompose_csv)) xs.push_back(s.event_or_throw(name));
  Chain ch{s.path_index(path), xs};
  try {
    PathDecomposition dec = decompose_path(s, sb, path, ch);
    out << "ray-low: ";
    print_event_set(out, s, dec.ray_low);
    out << "\n";
    for (std::size_t i = 0; i < dec.chain_events.size(); ++i) {
      out << "chain[" << i << "]: " << s.name_of(dec.chain_events[i]) << "\n";
      if (i + 1 < dec.chain_events.size()) {
        out << "gap[" << i << "]: ";
        print_event_set(out, s, dec.segments[i]);
        out << "\n";
      }
    }
    out << "ray-high: ";
    print_event_set(out, s, dec.ray_high);
    out << "\n";
    return 0;
  } catch (const OrderError& e) {
    out << "not a decomposition: " << e.what() << "\n";
    return 1;
  }
}

struct GenOpts {
  int lines = 2;
  std::uint64_t seed = 0;
  long long bound = 10;
  int witnesses = 2;
  std::string out_file;
};

inline int cmd_gen(const GenOpts& o, std::ostream& out) {
  GenConfig cfg;
  cfg.lines = o.lines;
  cfg.seed = o.seed;
  cfg.bound = o.bound;
  cfg.witnesses = o.witnesses;
  ModelSample ms = ModelSample::generate(cfg);
  std::string base = strip_suffix(o.out_file, ".struct");
  auto write = [&](const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot open " + path);
    f << text;
  };
  write(base + ".struct", ms.export_structure().serialize());
  write(base + ".coords", ms.coords_text());
  write(base + ".pairs", ms.pairs_text());
  out << "events=" << ms.points().size() << " paths=" << ms.lines().size() + ms.connectors().size()
      << " pairs=" << ms.designated().size() << " -> " << base << ".struct " << base << ".coords "
      << base << ".pairs\n";
  return 0;
}

struct TheoremOpts {
  std::string struct_file, coord_file, thm_csv;
  int trials = 100;
  std::uint64_t seed = 0;
};

inline int cmd_theorems(const TheoremOpts& o, std::ostream& out, std::ostream& err) {
  Structure s = load_structure(o.struct_file);
  std::ifstream cin_(o.coord_file);
  if (!cin_) throw InputError("cannot open " + o.coord_file);
  ModelSample ms = ModelSample::load(s, cin_);

  // A generated sample ships a sibling .pairs file; loaded line indices
  // equal path indices and point indices equal event ids, so designated
  // pairs carry over directly.
  std::vector<ModelPair> pairs;
  std::string pairs_path = strip_suffix(o.struct_file, ".struct") + ".pairs";
  std::ifstream pin(pairs_path);
  if (pin) {
    for (const DesignatedPair& dp : parse_pairs_file(s, pin))
      pairs.push_back({dp.path, dp.event});
  } else {
    err << "note: no pairs file at " << pairs_path << "; pair-driven theorems check nothing\n";
  }

  std::vector<TheoremId> thms(std::begin(kAllTheorems), std::end(kAllTheorems));
  if (!o.thm_csv.empty()) {
    thms.clear();
    for (const std::string& tok : split_csv(o.thm_csv)) {
      auto t = parse_theorem(tok);
      if (!t) throw InputError("unknown theorem: " + tok);
      thms.push_back(*t);
    }
  }
  bool any_violation = false;
  for (TheoremId t : thms) {
    TheoremResult res = check_theorem(ms, t, pairs, o.trials, o.seed);
    out << theorem_name(t) << ": " << (res.violations == 0 ? "PASS" : "FAIL")
        << " checked=" << res.checked << " violations=" << res.violations
        << " skips=" << res.skips << "\n";
    for (const std::string& note : res.notes) out << "  " << note << "\n";
    any_violation = any_violation || res.violations > 0;
  }
  return any_violation ? 1 : 0;
}

}  // namespace cli_detail

// Front door used by both the binary and the tests.  Returns the process
// exit code: 0 all-pass, 1 any FAIL, 2 usage or input errors.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"betweenness kernel for path-and-event structures"};
  app.require_subcommand(1);

  CheckOpts co;
  CLI::App* check = app.add_subcommand("check", "check axioms against a structure");
  check->add_option("file", co.file, "structure file")->required();
  check->add_option("--axioms", co.axioms_csv, "comma-separated axiom subset");
  check->add_flag("--sampled", co.sampled, "sampled mode (designated pairs drive I5-I7)");
  check->add_option("--pairs", co.pairs_file, "designated pairs file");
  check->add_flag("--saturate", co.saturate, "check the saturated relation, not the literal one");
  check->add_flag("--json", co.json, "JSON report");

  std::string sat_file, sat_out;
  CLI::App* sat = app.add_subcommand("saturate", "close a structure under the derivation rules");
  sat->add_option("file", sat_file, "structure file")->required();
  sat->add_option("-o", sat_out, "write the saturated structure here");

  ChainOpts cho;
  CLI::App* chain = app.add_subcommand("chain", "sort events on a path into a chain");
  chain->add_option("file", cho.file, "structure file")->required();
  chain->add_option("--path", cho.path, "path name")->required();
  chain->add_option("--events", cho.events_csv, "comma-separated events")->required();
  chain->add_flag("--count-orderings", cho.count_orderings, "also count chain orderings");

  IntervalOpts io;
  CLI::App* ival = app.add_subcommand("interval", "interval algebra on one path");
  ival->add_option("file", io.file, "structure file")->required();
  ival->add_option("--path", io.path, "path name")->required();
  ival->add_option("--classify", io.classify, "a b c d: case tag for ab vs cd")->expected(4);
  ival->add_option("--intersect", io.intersect, "a b c d: intersection of ab and cd")->expected(4);
  ival->add_option("--decompose", io.decompose_csv, "chain events: split the path around them");

  GenOpts go;
  CLI::App* gen = app.add_subcommand("gen", "generate a coordinate sample");
  gen->add_option("--lines", go.lines, "number of lines");
  gen->add_option("--seed", go.seed, "random seed");
  gen->add_option("--bound", go.bound, "coordinate bound");
  gen->add_option("--witnesses", go.witnesses, "points inside each unreachable interval");
  gen->add_option("-o", go.out_file, "output basename or .struct path")->required();

  TheoremOpts to;
  CLI::App* thm = app.add_subcommand("theorems", "check order theorems against a sample");
  thm->add_option("structfile", to.struct_file, "structure file")->required();
  thm->add_option("coordfile", to.coord_file, "coordinate file")->required();
  thm->add_option("--thm", to.thm_csv, "comma-separated theorem subset");
  thm->add_option("--trials", to.trials, "random trials for triangle theorems");
  thm->add_option("--seed", to.seed, "random seed");

  CLI::App* demo = app.add_subcommand("demo-independence", "run the bundled independence corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(co, out);
    if (sat->parsed()) return cmd_saturate(sat_file, sat_out, out, err);
    if (chain->parsed()) return cmd_chain(cho, out);
    if (ival->parsed()) return cmd_interval(io, out);
    if (gen->parsed()) return cmd_gen(go, out);
    if (thm->parsed()) return cmd_theorems(to, out, err);
    if (demo->parsed()) return run_independence(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace schutz
