#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "schutz/structure.hpp"

using namespace schutz;

static const char* kSample = R"(# three events on one path, fully ordered
event b
event a
event c
path Q c a b
betw a b c
betw c b a
)";

TEST_CASE("parse accepts a structure and ids follow name order") {
  Structure s = Structure::parse_string(kSample);
  REQUIRE(s.event_count() == 3);
  CHECK(s.name_of(0) == "a");
  CHECK(s.name_of(1) == "b");
  CHECK(s.name_of(2) == "c");
  CHECK(s.find_event("b").value() == 1);
  CHECK_FALSE(s.find_event("z").has_value());
  CHECK_THROWS_AS(s.event_or_throw("z"), InputError);

  REQUIRE(s.paths().size() == 1);
  const Path& q = s.path_or_throw("Q");
  CHECK(q.members == std::vector<EventId>{0, 1, 2});  // sorted regardless of input order
  CHECK(q.contains(1));
  CHECK(s.path_index(q) == 0);
  CHECK(s.find_path("R") == nullptr);

  REQUIRE(s.betw().size() == 2);
  CHECK(s.betw()[0] == BetwTriple{0, 1, 2});
  CHECK(s.betw()[1] == BetwTriple{2, 1, 0});
}

TEST_CASE("serialize is canonical and round trips") {
  Structure s = Structure::parse_string(kSample);
  std::string text = s.serialize();
  Structure again = Structure::parse_string(text);
  CHECK(again == s);
  CHECK(again.serialize() == text);

  // same content in scrambled order serializes identically
  Structure other = Structure::parse_string(
      "event c\nevent a\nevent b\nbetw c b a\npath Q a b c\nbetw a b c\nbetw a b c\n");
  CHECK(other.serialize() == text);
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_line = [](const std::string& text, int line) {
    try {
      Structure::parse_string(text);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("event a\npath Q a b\n", 2);                      // b undeclared
  expect_line("event a\nevent b\nbetw a b c\n", 3);             // c undeclared
  expect_line("event a\n\nevent a@\n", 3);                      // bad token
  expect_line("event a\nevent b\npath Q a a\n", 3);             // < 2 distinct members
  expect_line("event a\nevent b\npath Q a b\npath Q a b\n", 4); // duplicate path name
  expect_line("event a b\n", 1);                                // arity
  expect_line("event a\nbetw a a\n", 2);                        // arity
  expect_line("noise a b\n", 1);                                // unknown keyword
  expect_line("path Q a b\n", 1);                               // members before events
}

TEST_CASE("comments and blank lines are ignored") {
  Structure s = Structure::parse_string("# header\n\nevent a\n   \nevent b\npath Q a b\n# tail\n");
  CHECK(s.event_count() == 2);
}

TEST_CASE("repeated events in betw are kept for the checker to flag") {
  Structure s = Structure::parse_string("event a\nevent b\npath Q a b\nbetw a b a\n");
  REQUIRE(s.betw().size() == 1);
  CHECK(s.betw()[0] == BetwTriple{0, 1, 0});
}

TEST_CASE("collinear finds the unique containing path") {
  Structure s = Structure::parse_string(
      "event a\nevent b\nevent c\nevent d\n"
      "path Q a b c\npath R c d\n");
  EventId a = s.event_or_throw("a"), b = s.event_or_throw("b");
  EventId c = s.event_or_throw("c"), d = s.event_or_throw("d");
  CHECK(s.collinear({a, b}) == s.find_path("Q"));
  CHECK(s.collinear({a, b, c}) == s.find_path("Q"));
  CHECK(s.collinear({c, d}) == s.find_path("R"));
  CHECK(s.collinear({a, d}) == nullptr);
  CHECK_THROWS_AS(s.collinear({a}), InputError);
  CHECK_THROWS_AS(s.collinear({a, a}), InputError);

  Structure broken = Structure::parse_string(
      "event a\nevent b\nevent c\npath Q a b\npath R a b c\n");
  EventId ba = broken.event_or_throw("a"), bb = broken.event_or_throw("b");
  CHECK_THROWS_AS(broken.collinear({ba, bb}), I3Violation);
  try {
    broken.collinear({ba, bb});
  } catch (const I3Violation& v) {
    CHECK(v.path_a == "Q");
    CHECK(v.path_b == "R");
  }
}

TEST_CASE("pack and unpack triples") {
  BetwTriple t{7, kMaxEvents - 1, 0};
  CHECK(unpack_triple(pack_triple(t.a, t.b, t.c)) == t);
}

TEST_CASE("valid_token") {
  CHECK(valid_token("a_b-c.9"));
  CHECK_FALSE(valid_token(""));
  CHECK_FALSE(valid_token("a b"));
  CHECK_FALSE(valid_token("a#"));
}

TEST_CASE("builder rejects bad input directly") {
  StructureBuilder b;
  b.add_event("a");
  CHECK_THROWS_AS(b.add_path("Q", {"a", "zzz"}), InputError);
  CHECK_THROWS_AS(b.add_betw("a", "a", "zzz"), InputError);
  CHECK_THROWS_AS(b.add_event("bad name"), InputError);
}
