#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mw/linalg.hpp"
#include "mw/polyhedron.hpp"
#include "mw/zonofan.hpp"

using namespace mw;

namespace {

RatMat mat(std::initializer_list<std::initializer_list<int>> rows) {
  RatMat m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (int v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

const RatMat kBeta6 = mat({{1, -1, 0, 0, 1, -1}, {0, 0, 1, -1, 1, -1}});

Zonotope hexagon() {
  // window zonotope of the N=6, k=2 action: per-line generators
  RatMat gens = mat({{1, 0, 1}, {0, 1, 1}});
  RatVec shift(2);
  shift.setConstant(Rat(0));
  return Zonotope(gens, shift);
}

}  // namespace

TEST_CASE("kernel lattice") {
  SUBCASE("weight (1,-1)") {
    RatMat m = mat({{1, -1}});
    RatMat k = kernel_lattice(m);
    REQUIRE(k.cols() == 1);
    CHECK(abs(k(0, 0)) == Rat(1));
    CHECK(k(0, 0) == k(1, 0));
  }
  SUBCASE("N=6 k=2 matrix") {
    RatMat k = kernel_lattice(kBeta6);
    REQUIRE(k.cols() == 4);
    RatMat prod = kBeta6 * k;
    for (Eigen::Index i = 0; i < prod.rows(); ++i)
      for (Eigen::Index j = 0; j < prod.cols(); ++j) CHECK(prod(i, j) == Rat(0));
    // saturation: the Smith diagonal of the basis matrix is all ones
    for (const BigInt& d : smith_diagonal(k)) CHECK(d == 1);
  }
  SUBCASE("identity has no kernel") {
    RatMat k = kernel_lattice(mat({{1, 0}, {0, 1}}));
    CHECK(k.cols() == 0);
  }
  SUBCASE("rank deficiency is rejected") {
    CHECK_THROWS(kernel_lattice(mat({{1, 1}, {1, 1}})));
  }
}

TEST_CASE("zonotope h-rep") {
  SUBCASE("hexagon") {
    Polyhedron p = hexagon().h_rep();
    std::vector<std::pair<int, int>> verts{{1, 1}, {1, 0}, {0, -1}, {-1, -1}, {-1, 0}, {0, 1}};
    for (auto [x, y] : verts) {
      RatVec v(2);
      v(0) = x;
      v(1) = y;
      CHECK(p.contains(v));
      // each vertex saturates at least two facets
      int tight = 0;
      for (const auto& r : p.rows()) {
        Rat s = r.a(0) * Rat(x) + r.a(1) * Rat(y);
        if (s == r.c) ++tight;
      }
      CHECK(tight >= 2);
    }
    RatVec out(2);
    out(0) = Rat(3, 2);
    out(1) = Rat(0);
    CHECK(!p.contains(out));
    // exactly the six facets |x|<=1, |y|<=1, |x-y|<=1
    CHECK(p.canonicalized().rows().size() == 6);
  }
  SUBCASE("interval from (1,-1)") {
    RatMat gens = mat({{1}});
    RatVec shift(1);
    shift(0) = 0;
    Zonotope z(gens, shift);
    Polyhedron p = z.h_rep();
    auto [lo, hi] = p.support_interval(make_vec({Rat(1)}));
    CHECK(lo.value == Rat(-1, 2));
    CHECK(hi.value == Rat(1, 2));
  }
  SUBCASE("support function identity on random directions") {
    Zonotope z = hexagon();
    Polyhedron p = z.h_rep();
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int t = 0; t < 100; ++t) {
      RatVec xi(2);
      xi(0) = Rat(d(rng), 1 + std::abs(d(rng)));
      xi(1) = Rat(d(rng), 1 + std::abs(d(rng)));
      auto [lo, hi] = p.support_interval(xi);
      CHECK(hi.value == z.support(xi));
      CHECK(lo.value == -z.support(-xi));
    }
  }
}

TEST_CASE("lattice points") {
  SUBCASE("window at the origin has seven points") {
    Polyhedron p = hexagon().h_rep();
    auto pts = p.lattice_points();
    std::vector<IVec> want{{-1, -1}, {-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(pts == want);
  }
  SUBCASE("shifted window has four points") {
    RatVec d(2);
    d(0) = Rat(1, 2);
    d(1) = 0;
    auto pts = hexagon().h_rep().translate(d).lattice_points();
    std::vector<IVec> want{{0, -1}, {0, 0}, {1, 0}, {1, 1}};
    CHECK(pts == want);
  }
  SUBCASE("empty polytope") {
    Polyhedron p(1);
    p.add(make_vec({Rat(1)}), Rat(0), Rel::LE);
    p.add(make_vec({Rat(-1)}), Rat(-1), Rel::LE);  // x >= 1
    CHECK(p.lattice_points().empty());
  }
  SUBCASE("unbounded input is an error") {
    Polyhedron p(1);
    p.add(make_vec({Rat(-1)}), Rat(0), Rel::LE);
    CHECK_THROWS(p.lattice_points());
  }
  SUBCASE("brute force agreement on a random polytope") {
    Polyhedron p(2);
    p.add(make_vec({Rat(2), Rat(3)}), Rat(7), Rel::LE);
    p.add(make_vec({Rat(-1), Rat(2)}), Rat(4), Rel::LE);
    p.add(make_vec({Rat(0), Rat(-1)}), Rat(2), Rel::LE);
    p.add(make_vec({Rat(-1), Rat(-1)}), Rat(3), Rel::LE);
    auto pts = p.lattice_points();
    int count = 0;
    for (long long x = -10; x <= 10; ++x)
      for (long long y = -10; y <= 10; ++y) {
        RatVec v(2);
        v(0) = x;
        v(1) = y;
        if (p.contains(v)) ++count;
      }
    CHECK(static_cast<int>(pts.size()) == count);
  }
}

TEST_CASE("projection") {
  SUBCASE("unit square under x - y") {
    Polyhedron sq(2);
    for (int i = 0; i < 2; ++i) {
      RatVec e(2);
      e.setConstant(Rat(0));
      e(i) = 1;
      sq.add(e, Rat(1), Rel::LE);
      e(i) = -1;
      sq.add(e, Rat(0), Rel::LE);
    }
    RatMat L = mat({{1, -1}});
    auto [lo, hi] = sq.project(L).support_interval(make_vec({Rat(1)}));
    CHECK(lo.value == Rat(-1));
    CHECK(hi.value == Rat(1));
  }
  SUBCASE("coordinate ray under (1,-1)") {
    Polyhedron tau(2);
    tau.add(make_vec({Rat(-1), Rat(0)}), Rat(0), Rel::LE);
    tau.add(make_vec({Rat(0), Rat(1)}), Rat(0), Rel::EQ);
    Polyhedron img = tau.project(mat({{1, -1}}));
    CHECK(img.contains(make_vec({Rat(5)})));
    CHECK(img.contains(make_vec({Rat(0)})));
    CHECK(!img.contains(make_vec({Rat(-1)})));
  }
  SUBCASE("point to point") {
    Polyhedron pt(2);
    pt.add(make_vec({Rat(1), Rat(0)}), Rat(3), Rel::EQ);
    pt.add(make_vec({Rat(0), Rat(1)}), Rat(-2), Rel::EQ);
    Polyhedron img = pt.project(mat({{1, 1}}));
    CHECK(img.contains(make_vec({Rat(1)})));
    CHECK(!img.contains(make_vec({Rat(0)})));
  }
  SUBCASE("projection membership has witnesses") {
    Polyhedron sq(2);
    sq.add(make_vec({Rat(1), Rat(1)}), Rat(1), Rel::LE);
    sq.add(make_vec({Rat(-1), Rat(0)}), Rat(0), Rel::LE);
    sq.add(make_vec({Rat(0), Rat(-1)}), Rat(0), Rel::LE);
    Polyhedron img = sq.project(mat({{1, -2}}));
    for (const Rat& q : {Rat(0), Rat(1, 2), Rat(-1)}) {
      bool inside = img.contains(make_vec({q}));
      Polyhedron fiber = sq;
      fiber.add(make_vec({Rat(1), Rat(-2)}), q, Rel::EQ);
      CHECK(inside == fiber.feasible());
    }
  }
}

TEST_CASE("feasibility and witnesses") {
  Polyhedron bad(1);
  bad.add(make_vec({Rat(1)}), Rat(0), Rel::LE);
  bad.add(make_vec({Rat(-1)}), Rat(-1), Rel::LE);
  CHECK(!bad.feasible());

  Polyhedron zero = hexagon().h_rep();
  RatVec origin(2);
  origin.setConstant(Rat(0));
  CHECK(zero.contains(origin));
  CHECK(zero.feasible());

  Polyhedron strict(2);
  strict.add(make_vec({Rat(1), Rat(0)}), Rat(0), Rel::LT);
  strict.add(make_vec({Rat(-1), Rat(0)}), Rat(-1), Rel::LT);  // x > 1 and x < 0
  CHECK(!strict.feasible());

  Polyhedron open_box = Polyhedron::box(3, Rat(1), true);
  auto w = open_box.witness();
  REQUIRE(w);
  CHECK(open_box.contains(*w));
}

TEST_CASE("normal fan") {
  SUBCASE("interval") {
    RatMat gens = mat({{1}});
    RatVec shift(1);
    shift(0) = 0;
    Fan fan = normal_fan(Zonotope(gens, shift));
    CHECK(fan.cones.size() == 3);
    int by_dim[2] = {0, 0};
    for (const auto& c : fan.cones) ++by_dim[c.dim];
    CHECK(by_dim[0] == 1);
    CHECK(by_dim[1] == 2);
    for (const auto& c : fan.cones) {
      if (c.dim != 1) continue;
      Zonotope f = fan.face(c);
      CHECK(f.gens().cols() == 0);
      CHECK(abs(f.shift()(0)) == Rat(1, 2));
    }
  }
  SUBCASE("hexagon: 6 rays, 6 sectors, origin") {
    Fan fan = normal_fan(hexagon());
    int by_dim[3] = {0, 0, 0};
    for (const auto& c : fan.cones) ++by_dim[c.dim];
    CHECK(by_dim[0] == 1);
    CHECK(by_dim[1] == 6);
    CHECK(by_dim[2] == 6);
    // the ray through (1,0) selects the facet x=1 from (1,0) to (1,1)
    RatVec xi(2);
    xi(0) = 1;
    xi(1) = 0;
    const Cone& c = fan.locate(xi);
    CHECK(c.dim == 1);
    Zonotope f = fan.face(c);
    Polyhedron fp = f.h_rep();
    CHECK(fp.contains(make_vec({Rat(1), Rat(0)})));
    CHECK(fp.contains(make_vec({Rat(1), Rat(1)})));
    CHECK(!fp.contains(make_vec({Rat(1), Rat(-1, 10)})));
  }
  SUBCASE("unit square fan") {
    RatMat gens = mat({{1, 0}, {0, 1}});
    RatVec shift(2);
    shift(0) = Rat(1, 2);
    shift(1) = Rat(1, 2);
    Fan fan = normal_fan(Zonotope(gens, shift));
    CHECK(fan.cones.size() == 9);
  }
  SUBCASE("cones share faces and random directions land in one cone") {
    Fan fan = normal_fan(hexagon());
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int t = 0; t < 50; ++t) {
      RatVec xi(2);
      xi(0) = Rat(d(rng), 3);
      xi(1) = Rat(d(rng), 7);
      int hits = 0;
      for (const auto& c : fan.cones) {
        bool interior = c.hrep.relative_interior_system().contains(xi);
        // relative interior for lower cones: equalities stay equalities
        if (c.dim < 2) {
          interior = true;
          for (const auto& r : c.hrep.rows()) {
            Rat v = r.a(0) * xi(0) + r.a(1) * xi(1);
            if (r.rel == Rel::EQ ? v != r.c : !(v < r.c)) interior = false;
          }
        }
        if (interior) ++hits;
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("arrangement cells") {
  Polyhedron box = Polyhedron::box(2, Rat(2), true);
  SUBCASE("one line gives three cells") {
    std::vector<LinCon> h{{make_vec({Rat(1), Rat(0)}), Rat(0), Rel::EQ}};
    CHECK(arrangement_cells(h, box).size() == 3);
  }
  SUBCASE("two crossing lines give nine cells") {
    std::vector<LinCon> h{{make_vec({Rat(1), Rat(0)}), Rat(0), Rel::EQ},
                          {make_vec({Rat(0), Rat(1)}), Rat(0), Rel::EQ}};
    CHECK(arrangement_cells(h, box).size() == 9);
  }
  SUBCASE("six jumping-loci lines match the sign-vector enumeration") {
    // lines x = +-1, y = +-1, x - y = +-1 inside a radius-2 box
    std::vector<LinCon> h;
    h.push_back({make_vec({Rat(1), Rat(0)}), Rat(1), Rel::EQ});
    h.push_back({make_vec({Rat(1), Rat(0)}), Rat(-1), Rel::EQ});
    h.push_back({make_vec({Rat(0), Rat(1)}), Rat(1), Rel::EQ});
    h.push_back({make_vec({Rat(0), Rat(1)}), Rat(-1), Rel::EQ});
    h.push_back({make_vec({Rat(1), Rat(-1)}), Rat(1), Rel::EQ});
    h.push_back({make_vec({Rat(1), Rat(-1)}), Rat(-1), Rel::EQ});
    auto cells = arrangement_cells(h, box);
    // independent enumeration: all sign vectors, feasibility-tested
    int count = 0;
    std::function<void(size_t, Polyhedron)> rec = [&](size_t i, Polyhedron sys) {
      if (i == h.size()) {
        ++count;
        return;
      }
      for (int s : {-1, 0, 1}) {
        Polyhedron ext = sys;
        if (s == 0) ext.add(h[i].a, h[i].c, Rel::EQ);
        else if (s > 0) ext.add(-h[i].a, -h[i].c, Rel::LT);
        else ext.add(h[i].a, h[i].c, Rel::LT);
        if (ext.feasible()) rec(i + 1, std::move(ext));
      }
    };
    rec(0, box);
    CHECK(static_cast<int>(cells.size()) == count);
    // every sample point is strictly inside its cell
    for (const auto& cell : cells) {
      for (size_t i = 0; i < h.size(); ++i) {
        Rat v = h[i].a(0) * cell.point(0) + h[i].a(1) * cell.point(1);
        if (cell.sign[i] == 0) CHECK(v == h[i].c);
        else if (cell.sign[i] > 0) CHECK(v > h[i].c);
        else CHECK(v < h[i].c);
      }
    }
  }
}

TEST_CASE("minkowski and union containment") {
  Polyhedron seg(1);
  seg.add(make_vec({Rat(1)}), Rat(1), Rel::LE);
  seg.add(make_vec({Rat(-1)}), Rat(0), Rel::LE);
  RatMat ray = mat({{1}});
  Polyhedron sum = seg.minkowski_cone(ray);
  CHECK(sum.contains(make_vec({Rat(100)})));
  CHECK(!sum.contains(make_vec({Rat(-1, 100)})));

  Polyhedron whole(1);
  std::vector<Polyhedron> pieces;
  Polyhedron left(1), right(1);
  left.add(make_vec({Rat(1)}), Rat(0), Rel::LE);
  right.add(make_vec({Rat(-1)}), Rat(0), Rel::LE);
  pieces.push_back(left);
  CHECK(!contained_in_union(whole, pieces));
  pieces.push_back(right);
  CHECK(contained_in_union(whole, pieces));
}
