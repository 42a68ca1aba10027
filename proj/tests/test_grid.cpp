#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mw/grid.hpp"

using namespace mw;

namespace {

GradedDims dims(std::initializer_list<std::pair<int, int>> xs) {
  GradedDims d;
  for (auto [k, v] : xs) d[k] = v;
  return d;
}

BlockComplex hourglass(int n) {
  std::vector<Mask> members;
  for (Mask m = 1; m < (Mask(1) << n); ++m) members.push_back(m);
  return realize_probe(IndexFamily::make(n, members), 0);
}

Cell cell_at(const GridBox& box, std::initializer_list<AxisCell> axes) {
  Cell c;
  for (const AxisCell& a : axes) c.push_back(box.axis_index(a));
  return c;
}

}  // namespace

TEST_CASE("stalks of realized blocks") {
  GridBox box{2, 2};
  BlockComplex q = BlockComplex::single(2, Block::open_quadrant({0, 0}));
  SUBCASE("open quadrant carries its stalk") {
    auto inside = stalk(box, q, cell_at(box, {{0, true}, {0, true}}));
    CHECK(inside == dims({{0, 1}}));
    CHECK(stalk(box, q, cell_at(box, {{0, false}, {0, true}})).empty());
    CHECK(stalk(box, q, cell_at(box, {{-1, true}, {0, true}})).empty());
  }
  SUBCASE("complex validation") {
    CHECK(validate_complex(box, q));
    CHECK(validate_complex(box, hourglass(2)));
  }
  SUBCASE("block features must fit") {
    BlockComplex far = BlockComplex::single(2, Block::open_quadrant({5, 0}));
    CHECK_THROWS(stalk(box, far, cell_at(box, {{0, true}, {0, true}})));
  }
}

TEST_CASE("hourglass stalks") {
  GridBox box{2, 2};
  BlockComplex hg = hourglass(2);
  CHECK(stalk(box, hg, cell_at(box, {{0, true}, {0, true}})) == dims({{0, 1}}));
  CHECK(stalk(box, hg, cell_at(box, {{-1, true}, {-1, true}})) == dims({{1, 1}}));
  CHECK(stalk(box, hg, cell_at(box, {{-1, true}, {0, true}})).empty());
  CHECK(stalk(box, hg, cell_at(box, {{0, true}, {-1, true}})).empty());
  // closure of the negative quadrant keeps the shifted stalk
  CHECK(stalk(box, hg, cell_at(box, {{0, false}, {0, false}})) == dims({{1, 1}}));
}

TEST_CASE("rhom basics") {
  SUBCASE("endomorphisms of a ray") {
    GridBox box{1, 2};
    BlockComplex a = BlockComplex::single(1, Block::open_quadrant({0}));
    for (HomEngine e : {HomEngine::Resolution, HomEngine::Bar})
      CHECK(rhom(box, a, a, e) == dims({{0, 1}}));
  }
  SUBCASE("ext from the closed negative quadrant to the open positive one") {
    for (int n : {1, 2}) {
      GridBox box{n, 2};
      BlockComplex neg =
          BlockComplex::single(n, Block::closed_negative_quadrant((Mask(1) << n) - 1, n));
      BlockComplex pos = BlockComplex::single(n, Block::open_quadrant(IVec(n, 0)));
      for (HomEngine e : {HomEngine::Resolution, HomEngine::Bar}) {
        auto h = rhom(box, neg, pos, e);
        CHECK(h == dims({{n, 1}}));
      }
    }
  }
  SUBCASE("fail-2d hom jump in the fiber model") {
    GridBox box{1, 3};
    BlockComplex closed_left = BlockComplex::single(1, Block{{AxisIval::less(0, false)}});
    BlockComplex right_of_1 = BlockComplex::single(1, Block{{AxisIval::greater(1, true)}});
    BlockComplex right_of_m1 = BlockComplex::single(1, Block{{AxisIval::greater(-1, true)}});
    for (HomEngine e : {HomEngine::Resolution, HomEngine::Bar}) {
      CHECK(rhom(box, closed_left, right_of_1, e).empty());
      CHECK(rhom(box, closed_left, right_of_m1, e) == dims({{1, 1}}));
    }
  }
}

TEST_CASE("oracle matches the poset formula") {
  SUBCASE("hourglass family, all pairs, both engines") {
    IndexFamily fam = IndexFamily::make(2, {1, 2, 3});
    GridBox box{2, 2};
    for (Mask i = 0; i < 4; ++i)
      for (Mask j = 0; j < 4; ++j) {
        BlockComplex fi = realize_probe(fam, i);
        BlockComplex fj = realize_probe(fam, j);
        GradedDims expect = probe_hom(fam, i, j);
        if (fi.terms.empty() || fj.terms.empty()) continue;
        CHECK(rhom(box, fi, fj, HomEngine::Resolution) == expect);
        CHECK(rhom(box, fi, fj, HomEngine::Bar) == expect);
      }
  }
  SUBCASE("all N=2 families with zero section, resolution engine") {
    for (Mask sub = 0; sub < 8; ++sub) {
      std::vector<Mask> ms{3};
      for (int b = 0; b < 3; ++b)
        if (sub & (Mask(1) << b)) ms.push_back(static_cast<Mask>(b));
      IndexFamily fam = IndexFamily::make(2, ms);
      GridBox box{2, 2};
      for (Mask i = 0; i < 4; ++i)
        for (Mask j = 0; j < 4; ++j) {
          BlockComplex fi = realize_probe(fam, i);
          BlockComplex fj = realize_probe(fam, j);
          if (fi.terms.empty() || fj.terms.empty()) continue;
          CHECK(rhom(box, fi, fj) == probe_hom(fam, i, j));
        }
    }
  }
  SUBCASE("a random N=3 family cross-checks the two engines") {
    IndexFamily fam = IndexFamily::make(3, {1, 2, 4, 7});
    GridBox box{3, 2};
    for (Mask i : {Mask(0), Mask(3), Mask(5)}) {
      BlockComplex fi = realize_probe(fam, i);
      BlockComplex f0 = realize_probe(fam, 0);
      CHECK(rhom(box, fi, f0) == probe_hom(fam, i, 0));
    }
  }
}

TEST_CASE("microstalk") {
  GridBox box{2, 2};
  BlockComplex l0 = BlockComplex::single(2, Block::open_quadrant({0, 0}));
  Cell origin = cell_at(box, {{0, false}, {0, false}});
  SUBCASE("conormal directions carry the microstalk") {
    CHECK(microstalk(box, l0, origin, {-1, -1}) == dims({{0, 1}}));
    CHECK(microstalk(box, l0, origin, {1, -1}).empty());
    CHECK(microstalk(box, l0, origin, {1, 1}).empty());
    // boundary covectors of the conormal cone have zero Morse group;
    // the singular support is the closure of the nonzero set
    CHECK(microstalk(box, l0, origin, {-1, 0}).empty());
  }
  SUBCASE("constant sheaf has no conormals") {
    Block all;
    all.axes = {AxisIval::all(), AxisIval::all()};
    BlockComplex c = BlockComplex::single(2, all);
    CHECK(microstalk(box, c, origin, {-1, 0}).empty());
    CHECK(microstalk(box, c, origin, {1, 1}).empty());
  }
  SUBCASE("transversality is required") {
    Cell edge = cell_at(box, {{0, true}, {0, false}});
    CHECK_THROWS(microstalk(box, l0, edge, {1, 0}));
    CHECK(microstalk(box, l0, edge, {0, -1}) == dims({{0, 1}}));
  }
  SUBCASE("moving off the corner kills it") {
    Cell shifted = cell_at(box, {{1, false}, {0, false}});
    CHECK(microstalk(box, l0, shifted, {-1, -1}).empty());
    // on the open face x > 0, y = 0 the conormal survives
    Cell face = cell_at(box, {{0, true}, {0, false}});
    CHECK(microstalk(box, l0, face, {0, -1}) == dims({{0, 1}}));
  }
}

TEST_CASE("singular support scans") {
  SUBCASE("SS of a corner sheaf matches the quadrant picture") {
    GridBox box{1, 2};
    BlockComplex l = BlockComplex::single(1, Block::open_quadrant({0}));
    auto ss = singular_support(box, l);
    // expected: zero section over cells in (0, R); covector -1 at the point 0
    int zero_entries = 0, minus_entries = 0, plus_entries = 0;
    for (const auto& e : ss) {
      bool zero = true;
      for (int s : e.s) zero = zero && s == 0;
      if (zero) ++zero_entries;
      else if (e.s[0] < 0) ++minus_entries;
      else ++plus_entries;
    }
    CHECK(zero_entries == 3);  // (0,1), {1}, (1,2)
    CHECK(minus_entries == 1);
    CHECK(plus_entries == 0);
  }
  SUBCASE("constant sheaf is smooth") {
    GridBox box{1, 2};
    Block all;
    all.axes = {AxisIval::all()};
    auto ss = singular_support(box, BlockComplex::single(1, all));
    for (const auto& e : ss)
      for (int s : e.s) CHECK(s == 0);
  }
}

TEST_CASE("hom sheaf stalks") {
  GridBox box{2, 3};
  IndexFamily full = IndexFamily::make(2, {0, 1, 2, 3});
  BlockComplex p1 = realize_probe(full, 1);   // wedge x2 > 0... mask 1 = {1}: x1 free
  BlockComplex p0 = realize_probe(full, 0);   // open quadrant wedge
  SUBCASE("stalk of Hom(P_1, P_0) at (1, 0)") {
    Cell c = cell_at(box, {{1, false}, {0, false}});
    CHECK(hom_sheaf_stalk(box, p1, p0, c) == dims({{0, 1}}));
  }
  SUBCASE("vanishes at the origin") {
    Cell c = cell_at(box, {{0, false}, {0, false}});
    CHECK(hom_sheaf_stalk(box, p1, p0, c).empty());
  }
  SUBCASE("endomorphisms in the interior") {
    Cell c = cell_at(box, {{1, true}, {1, true}});
    CHECK(hom_sheaf_stalk(box, p1, p1, c) == dims({{0, 1}}));
  }
}

TEST_CASE("box stability") {
  IndexFamily fam = IndexFamily::make(2, {1, 2, 3});
  BlockComplex f0 = realize_probe(fam, 0);
  BlockComplex f3 = realize_probe(fam, 3);
  GridBox small{2, 2}, big{2, 3};
  CHECK(rhom(small, f3, f0) == rhom(big, f3, f0));
  CHECK(rhom(small, f0, f0) == rhom(big, f0, f0));
  Cell c_small = cell_at(small, {{-1, true}, {-1, true}});
  Cell c_big = cell_at(big, {{-1, true}, {-1, true}});
  CHECK(stalk(small, f0, c_small) == stalk(big, f0, c_big));
}

TEST_CASE("support scan helper") {
  GridBox box{2, 3};
  // Koszul two-term complex: L_{(1,0)} -> L_{(0,0)}
  BlockComplex cx;
  cx.N = 2;
  cx.terms.push_back({0, Block::open_quadrant({1, 0}), "a"});
  cx.terms.push_back({1, Block::open_quadrant({0, 0}), "b"});
  cx.maps.push_back({0, 1, Rat(1)});
  Block expected;
  expected.axes = {AxisIval::between(0, 1, true, false), AxisIval::greater(0, true)};
  CHECK(!support_mismatch(box, cx, expected));
  Block wrong;
  wrong.axes = {AxisIval::between(0, 1, false, false), AxisIval::greater(0, true)};
  CHECK(support_mismatch(box, cx, wrong));
}
