#include "doctest.h"

#include <algorithm>
#include <random>

#include "generators.hpp"
#include "pconway/diagram.hpp"

using namespace pconway;

namespace {

const char* kHopf = "X[1,3,2,4] X[3,1,4,2]";
const char* kTrefoil = "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]";
const char* kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

std::vector<int> signs(const LinkDiagram& d) {
  std::vector<int> out;
  for (const auto& c : d.crossings()) out.push_back(c.sign);
  return out;
}

}  // namespace

TEST_CASE("parse infers crossing signs") {
  CHECK(signs(parse_pd(kHopf)) == std::vector<int>{1, 1});
  CHECK(signs(parse_pd(kTrefoil)) == std::vector<int>{-1, -1, -1});
  const auto fig8 = signs(parse_pd(kFigureEight));
  CHECK(std::count(fig8.begin(), fig8.end(), 1) == 2);
}

TEST_CASE("strand accessors follow the sign") {
  const Crossing pos{{1, 2, 3, 4}, 1};
  CHECK(pos.under_in() == 1);
  CHECK(pos.under_out() == 3);
  CHECK(pos.over_in() == 4);
  CHECK(pos.over_out() == 2);
  const Crossing neg{{1, 2, 3, 4}, -1};
  CHECK(neg.over_in() == 2);
  CHECK(neg.over_out() == 4);
}

TEST_CASE("parse accepts separators, comments and free loops") {
  const auto a = parse_pd("# Hopf link\nX[1,3,2,4]\n  X[3, 1, 4, 2]  # second\n");
  CHECK(a == parse_pd(kHopf));
  const auto b = parse_pd("PD[X[1,3,2,4],X[3,1,4,2]]");
  CHECK(b == a);
  const auto loop = parse_pd("O");
  CHECK(loop.crossing_count() == 0);
  CHECK(loop.free_loops() == 1);
  const auto mixed = parse_pd("X[1,3,2,4] X[3,1,4,2] O O");
  CHECK(mixed.free_loops() == 2);
  CHECK(parse_pd("").empty());
  CHECK(parse_pd("# nothing\n").empty());
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_pd("X[1,3,2,4]\nX[3,1,4");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() >= 7);
  }
  CHECK_THROWS_AS(parse_pd("X[1,3,2]"), ParseError);
  CHECK_THROWS_AS(parse_pd("Y[1,2,3,4]"), ParseError);
  CHECK_THROWS_AS(parse_pd("X[1,a,2,4]"), ParseError);
}

TEST_CASE("malformed diagrams are rejected") {
  // Label used three times.
  CHECK_THROWS_AS(parse_pd("X[1,1,2,1]"), ValidationError);
  // Label used once.
  CHECK_THROWS_AS(parse_pd("X[1,3,2,4] X[3,1,4,5]"), ValidationError);
  // Two strands both ending on one arc.
  CHECK_THROWS_AS(LinkDiagram({{{1, 2, 2, 1}, 1}}, 0), ValidationError);
  CHECK_THROWS_AS(parse_pd("X[0,3,2,4] X[3,0,4,2]"), ParseError);
  CHECK_THROWS_AS(LinkDiagram({{{1, 3, 2, 4}, 2}, {{3, 1, 4, 2}, 1}}, 0), ValidationError);
  CHECK_THROWS_AS(LinkDiagram({}, -1), ValidationError);
}

TEST_CASE("non-planar gluings are rejected") {
  CHECK_THROWS_AS(LinkDiagram({{{1, 2, 3, 3}, 1}, {{2, 4, 1, 4}, 1}}, 0), ValidationError);
}

TEST_CASE("render and parse are inverse") {
  std::mt19937_64 rng(11);
  int exact = 0;
  for (int t = 0; t < 200; ++t) {
    const auto d = testgen::random_diagram(rng, 10);
    const auto once = parse_pd(render_pd(d));
    CHECK(parse_pd(render_pd(once)) == once);
    CHECK(components(once).count == components(d).count);
    // A component that only passes over has no orientation in PD notation.
    const auto comps = components(d);
    std::vector<bool> under(static_cast<std::size_t>(comps.count), false);
    for (const auto& c : d.crossings()) under[static_cast<std::size_t>(comps.component_of(c.under_in()))] = true;
    const bool determined =
        std::find(under.begin(), under.begin() + comps.free_loop_base, false) == under.begin() + comps.free_loop_base;
    if (determined) {
      CHECK(once == d);
      ++exact;
    }
  }
  CHECK(exact > 150);
  // Arcs 2 and 3 form a component with no under-pass.
  const auto ambiguous = parse_pd("X[1,2,4,3] X[4,2,1,3]");
  CHECK(parse_pd(render_pd(ambiguous)) == ambiguous);
  const auto loops = parse_pd("X[1,3,2,4] X[3,1,4,2] O");
  CHECK(parse_pd(render_pd(loops)) == loops);
}

TEST_CASE("components") {
  CHECK(components(parse_pd(kHopf)).count == 2);
  CHECK(components(parse_pd(kTrefoil)).count == 1);
  const auto c = components(parse_pd("X[1,3,2,4] X[3,1,4,2] O"));
  CHECK(c.count == 3);
  CHECK(c.free_loop_base == 2);
  CHECK(c.component_of(1) == 0);
  CHECK(c.component_of(3) == 1);
}

TEST_CASE("linking numbers") {
  const auto hopf = parse_pd(kHopf);
  CHECK(linking_number(hopf, 0, 1) == 1);
  CHECK(linking_number(hopf, 1, 0) == 1);
  CHECK(linking_number(switch_crossing(switch_crossing(hopf, 0), 1), 0, 1) == -1);
  CHECK_THROWS_AS(linking_number(hopf, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(linking_number(hopf, 0, 2), std::invalid_argument);
  const auto t24 = parse_pd("X[1,5,2,8] X[5,3,6,2] X[3,7,4,6] X[7,1,8,4]");
  CHECK(std::abs(linking_number(t24, 0, 1)) == 2);
}

TEST_CASE("switching twice is the identity and keeps arcs") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto d = testgen::random_diagram(rng, 10);
    const std::size_t c = rng() % d.crossing_count();
    const auto s = switch_crossing(d, c);
    CHECK(s.crossings()[c].sign == -d.crossings()[c].sign);
    CHECK(s.successor_map() == d.successor_map());
    CHECK(switch_crossing(s, c) == d);
  }
}

TEST_CASE("smoothing the Hopf link gives an unknot") {
  const auto hopf = parse_pd(kHopf);
  const auto s = smooth_crossing(hopf, 0);
  CHECK(s.crossing_count() == 1);
  CHECK(components(s).count == 1);
  const auto u = simplify(s);
  CHECK(u.crossing_count() == 0);
  CHECK(u.free_loops() == 1);
}

TEST_CASE("smoothing changes the component count by one") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 300; ++t) {
    const auto d = testgen::random_diagram(rng, 10);
    const std::size_t c = rng() % d.crossing_count();
    const int before = components(d).count;
    const int after = components(smooth_crossing(d, c)).count;
    CHECK(std::abs(before - after) == 1);
    const auto& x = d.crossings()[c];
    const bool self = components(d).component_of(x.under_in()) == components(d).component_of(x.over_in());
    CHECK(after == (self ? before + 1 : before - 1));
  }
}

TEST_CASE("simplify removes kinks and bigons") {
  // A single negative kink.
  const auto kink = parse_pd("X[1,2,2,1]");
  CHECK(kink.crossings().front().sign == -1);
  const auto k = simplify(kink);
  CHECK(k.crossing_count() == 0);
  CHECK(k.free_loops() == 1);
  // Two-crossing unlink of two components sitting as a Reidemeister II bigon.
  const auto bigon = simplify(parse_pd("X[1,2,4,3] X[4,2,1,3]"));
  CHECK(bigon.crossing_count() == 0);
  CHECK(bigon.free_loops() == 2);
  // Reduced alternating diagrams admit neither move.
  CHECK(simplify(parse_pd(kTrefoil)).crossing_count() == 3);
  CHECK(simplify(parse_pd(kFigureEight)).crossing_count() == 4);
  CHECK(simplify(parse_pd(kHopf)).crossing_count() == 2);
}

TEST_CASE("simplify preserves component count and linking") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 300; ++t) {
    const auto d = testgen::random_diagram(rng, 12);
    const auto s = simplify(d);
    CHECK(s.crossing_count() <= d.crossing_count());
    const int n = components(d).count;
    REQUIRE(components(s).count == n);
    // Components are renumbered by smallest arc, so compare multisets.
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        a.push_back(std::abs(linking_number(d, i, j)));
        b.push_back(std::abs(linking_number(s, i, j)));
      }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("reverse_component flips signs of mixed crossings") {
  const auto hopf = parse_pd(kHopf);
  const auto r = reverse_component(hopf, 0);
  CHECK(signs(r) == std::vector<int>{-1, -1});
  CHECK(linking_number(r, 0, 1) == -1);
  const auto tref = parse_pd(kTrefoil);
  CHECK(signs(reverse_component(tref, 0)) == signs(tref));
  CHECK_THROWS_AS(reverse_component(hopf, 5), std::invalid_argument);
}

TEST_CASE("projection pieces and disjoint union") {
  const auto hopf = parse_pd(kHopf);
  const auto tref = parse_pd(kTrefoil);
  CHECK(projection_pieces(hopf) == 1);
  const auto u = disjoint_union(hopf, tref);
  CHECK(u.crossing_count() == 5);
  CHECK(projection_pieces(u) == 2);
  CHECK(components(u).count == 3);
  CHECK(projection_pieces(parse_pd("X[1,3,2,4] X[3,1,4,2] O")) == 2);
}

TEST_CASE("faces satisfy the Euler count") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 100; ++t) {
    const auto d = testgen::random_diagram(rng, 12);
    const auto faces = diagram_faces(d);
    std::size_t darts = 0;
    for (const auto& f : faces) darts += f.size();
    CHECK(darts == 4 * d.crossing_count());
  }
  CHECK(diagram_faces(parse_pd(kTrefoil)).size() == 5);
}

TEST_CASE("compact_labels renumbers to 1..2n") {
  const auto d = parse_pd("X[10,30,20,40] X[30,10,40,20]");
  const auto c = compact_labels(d);
  CHECK(c == parse_pd(kHopf));
  CHECK(c.max_label() == 4);
}
