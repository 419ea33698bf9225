#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <vector>

#include "schutz/interval.hpp"

using namespace schutz;

namespace {

struct LineFixture {
  Structure s;
  SaturatedBetw sb;
  const Path* q;

  explicit LineFixture(int n) {
    StructureBuilder b;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
      names.push_back("e" + std::to_string(i));
      b.add_event(names.back());
    }
    b.add_path("Q", names);
    for (int i = 0; i + 2 < n; ++i) b.add_betw(names[i], names[i + 1], names[i + 2]);
    s = b.build();
    sb = SaturatedBetw::saturate(s);
    q = s.find_path("Q");
  }

  Interval iv(EventId a, EventId b) const { return mk_interval(s, sb, *q, a, b); }
};

std::vector<EventId> set_oracle(const Interval& I, const Interval& J) {
  std::vector<EventId> out;
  std::set_intersection(I.events.begin(), I.events.end(), J.events.begin(), J.events.end(),
                        std::back_inserter(out));
  return out;
}

std::array<EventId, 4> apply_relabeling(std::array<EventId, 4> v, const Relabeling& r) {
  if (r.swap_ab) std::swap(v[0], v[1]);
  if (r.swap_cd) std::swap(v[2], v[3]);
  if (r.swap_pairs) {
    std::swap(v[0], v[2]);
    std::swap(v[1], v[3]);
  }
  return v;
}

}  // namespace

TEST_CASE("mk_interval collects the events between the endpoints inclusive") {
  LineFixture f(6);
  Interval iv = f.iv(1, 4);
  CHECK(iv.events == std::vector<EventId>{1, 2, 3, 4});
  CHECK(iv.contains(2));
  CHECK_FALSE(iv.contains(0));

  Interval rev = f.iv(4, 1);  // endpoint order does not matter for membership
  CHECK(rev.events == iv.events);

  Interval deg = f.iv(3, 3);
  CHECK(deg.events == std::vector<EventId>{3});
}

TEST_CASE("mk_interval wants endpoints on the path") {
  LineFixture f(4);
  StructureBuilder b;
  b.add_event("e0").add_event("e1").add_event("z");
  b.add_path("Q", {"e0", "e1"});
  Structure s2 = b.build();
  SaturatedBetw sb2 = SaturatedBetw::saturate(s2);
  CHECK_THROWS_AS(mk_interval(s2, sb2, s2.path_or_throw("Q"), s2.event_or_throw("e0"),
                              s2.event_or_throw("z")),
                  InputError);
}

TEST_CASE("all 24 labelings of a distinct quadruple classify into the three orbits") {
  LineFixture f(9);
  std::vector<std::array<EventId, 4>> subsets;
  for (EventId a = 0; a < 9; ++a)
    for (EventId b = a + 1; b < 9; ++b)
      for (EventId c = b + 1; c < 9; ++c)
        for (EventId d = c + 1; d < 9; ++d) subsets.push_back({a, b, c, d});
  REQUIRE(subsets.size() == 126);

  for (const auto& sub : subsets) {
    std::array<EventId, 4> lab = sub;
    std::sort(lab.begin(), lab.end());
    int disjoint = 0, overlapping = 0, nested = 0;
    do {
      Interval I = f.iv(lab[0], lab[1]);
      Interval J = f.iv(lab[2], lab[3]);
      WlogClassification r = wlog_classify(f.s, f.sb, I, J);
      switch (r.tag) {
        case WlogCase::Disjoint: ++disjoint; break;
        case WlogCase::Overlapping: ++overlapping; break;
        case WlogCase::Nested: ++nested; break;
        default: FAIL("unexpected degenerate tag for a distinct quadruple");
      }
      // the flags really do carry the input to the canonical labeling
      CHECK(apply_relabeling({lab[0], lab[1], lab[2], lab[3]}, r.relab) == r.relab.canonical);
      // and the canonical labeling satisfies the tag's defining pattern
      const auto& cq = r.relab.canonical;
      switch (r.tag) {
        case WlogCase::Disjoint: CHECK(betw4(f.sb, cq[0], cq[1], cq[2], cq[3])); break;
        case WlogCase::Overlapping: CHECK(betw4(f.sb, cq[0], cq[2], cq[1], cq[3])); break;
        case WlogCase::Nested: CHECK(betw4(f.sb, cq[0], cq[2], cq[3], cq[1])); break;
        default: break;
      }
    } while (std::next_permutation(lab.begin(), lab.end()));
    CHECK(disjoint == 8);
    CHECK(overlapping == 8);
    CHECK(nested == 8);
  }
}

TEST_CASE("shared-endpoint and identical cases") {
  LineFixture f(5);

  WlogClassification touching = wlog_classify(f.s, f.sb, f.iv(0, 2), f.iv(2, 4));
  CHECK(touching.tag == WlogCase::SharedEndpointTouching);
  CHECK(touching.relab.canonical == std::array<EventId, 4>{2, 0, 2, 4});

  WlogClassification nested = wlog_classify(f.s, f.sb, f.iv(0, 4), f.iv(0, 2));
  CHECK(nested.tag == WlogCase::SharedEndpointNested);
  CHECK(nested.relab.canonical == std::array<EventId, 4>{0, 4, 0, 2});

  WlogClassification swapped = wlog_classify(f.s, f.sb, f.iv(0, 2), f.iv(0, 4));
  CHECK(swapped.tag == WlogCase::SharedEndpointNested);
  CHECK(swapped.relab.swap_pairs);
  CHECK(swapped.relab.canonical == std::array<EventId, 4>{0, 4, 0, 2});

  WlogClassification ident = wlog_classify(f.s, f.sb, f.iv(1, 3), f.iv(3, 1));
  CHECK(ident.tag == WlogCase::Identical);
  CHECK(ident.relab.swap_cd);
  CHECK(ident.relab.canonical == std::array<EventId, 4>{1, 3, 1, 3});

  CHECK_THROWS_AS(wlog_classify(f.s, f.sb, f.iv(1, 1), f.iv(2, 3)), InputError);

  for (WlogCase c :
       {WlogCase::Disjoint, WlogCase::Overlapping, WlogCase::Nested,
        WlogCase::SharedEndpointNested, WlogCase::SharedEndpointTouching, WlogCase::Identical})
    CHECK(std::string(wlog_case_name(c)).size() > 0);
}

TEST_CASE("interval_intersect equals the set oracle over every endpoint choice") {
  LineFixture f(6);
  for (EventId a = 0; a < 6; ++a)
    for (EventId b = 0; b < 6; ++b)
      for (EventId c = 0; c < 6; ++c)
        for (EventId d = 0; d < 6; ++d) {
          Interval I = f.iv(a, b), J = f.iv(c, d);
          auto got = interval_intersect(f.s, f.sb, I, J);
          auto want = set_oracle(I, J);
          if (!got) {
            CHECK(want.empty());
          } else {
            CHECK(got->events == want);
          }
        }
}

TEST_CASE("betw_set holds for every member or vacuously") {
  LineFixture f(6);
  std::vector<EventId> mid{2, 3};
  CHECK(betw_set(f.sb, 1, mid, 4));
  CHECK(betw_set(f.sb, 4, mid, 1));
  CHECK_FALSE(betw_set(f.sb, 2, mid, 4));  // 2 is not strictly outside
  CHECK(betw_set(f.sb, 0, std::vector<EventId>{}, 1));  // vacuous
}

TEST_CASE("decompose_path splits a path around a chain") {
  LineFixture f(9);
  Chain ch = sort_into_chain(f.s, f.sb, *f.q, {2, 5});
  PathDecomposition dec = decompose_path(f.s, f.sb, *f.q, ch);
  CHECK(dec.chain_events == std::vector<EventId>{2, 5});
  CHECK(dec.ray_low == std::vector<EventId>{0, 1});
  REQUIRE(dec.segments.size() == 1);
  CHECK(dec.segments[0] == std::vector<EventId>{3, 4});
  CHECK(dec.ray_high == std::vector<EventId>{6, 7, 8});

  Chain three = sort_into_chain(f.s, f.sb, *f.q, {1, 4, 7});
  PathDecomposition d3 = decompose_path(f.s, f.sb, *f.q, three);
  CHECK(d3.ray_low == std::vector<EventId>{0});
  CHECK(d3.segments[0] == std::vector<EventId>{2, 3});
  CHECK(d3.segments[1] == std::vector<EventId>{5, 6});
  CHECK(d3.ray_high == std::vector<EventId>{8});

  // a reversed chain decomposes too; a degenerate sequence does not
  CHECK_NOTHROW(decompose_path(f.s, f.sb, *f.q, chain_reverse(ch)));
  Chain wrong{ch.path, {2, 2}};
  CHECK_THROWS_AS(decompose_path(f.s, f.sb, *f.q, wrong), InputError);
}
