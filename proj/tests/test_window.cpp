#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mw/window.hpp"

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

ActionSpec spec6() { return ActionSpec(6, 2, mat({{1, -1, 0, 0, 1, -1}, {0, 0, 1, -1, 1, -1}})); }
ActionSpec spec2() { return ActionSpec(2, 1, mat({{1, -1}})); }
// two doubled lines at level m = 2 with eta = (2, 2)
ActionSpec spec_eta2() { return ActionSpec(4, 2, mat({{2, -2, 0, 0}, {0, 0, 2, -2}})); }

RatVec d2(const Rat& x, const Rat& y) { return make_vec({x, y}); }

// the running intermediate-level example polytope
Polyhedron example_k() {
  Polyhedron k(2);
  k.add(make_vec({Rat(2), Rat(1)}), Rat(8), Rel::LE);
  k.add(make_vec({Rat(2), Rat(-1)}), Rat(8), Rel::LE);
  k.add(make_vec({Rat(0), Rat(-1)}), Rat(4), Rel::LE);
  k.add(make_vec({Rat(-2), Rat(1)}), Rat(-4), Rel::LE);
  return k;
}

}  // namespace

TEST_CASE("windows") {
  ActionSpec s = spec6();
  CHECK(window(s, d2(0, 0)).size() == 7);
  auto w2 = window(s, d2(Rat(1, 2), 0));
  CHECK(w2 == std::vector<IVec>{{0, -1}, {0, 0}, {1, 0}, {1, 1}});
  auto w3 = window(s, d2(Rat(2, 5), Rat(1, 10)));
  CHECK(w3 == std::vector<IVec>{{0, 0}, {1, 0}, {1, 1}});
  CHECK(!generic_shift(s, d2(0, 0)));
  CHECK(!generic_shift(s, d2(Rat(1, 2), 0)));
  CHECK(generic_shift(s, d2(Rat(2, 5), Rat(1, 10))));
}

TEST_CASE("local index families") {
  ActionSpec s = spec2();
  SUBCASE("worked interval examples") {
    CHECK(local_index_family(s, make_vec({Rat(1, 2)}), {0}).members ==
          std::vector<Mask>{0, 2, 3});
    CHECK(local_index_family(s, make_vec({Rat(0)}), {0}).members == std::vector<Mask>{0, 3});
    CHECK(local_index_family(s, make_vec({Rat(1, 2)}), {2}).members == std::vector<Mask>{1, 3});
  }
  SUBCASE("zero section is always present") {
    for (const Rat& d : {Rat(0), Rat(1, 2), Rat(2, 5)})
      for (long long v = -3; v <= 3; ++v)
        CHECK(local_index_family(s, make_vec({d}), {v}).has_zero_section());
  }
  SUBCASE("translation identity") {
    WindowContext ctx(spec6(), d2(Rat(1, 2), 0));
    for (long long x = -2; x <= 2; ++x)
      for (long long y = -2; y <= 2; ++y) {
        auto direct = ctx.local_family({x, y}).members;
        RatVec shifted = d2(Rat(1, 2), 0) - to_rat_vec(IVec{x, y});
        auto translated = local_index_family(spec6(), shifted, {0, 0}).members;
        CHECK(direct == translated);
      }
  }
}

TEST_CASE("closed-form singular support") {
  ActionSpec s = spec6();
  SUBCASE("half-integer shift: two horizontal lines") {
    WindowContext ctx(s, d2(Rat(1, 2), 0));
    SSRecord rec = ss_closed_form(ctx);
    REQUIRE(rec.components.size() == 2);
    for (const auto& comp : rec.components) {
      CHECK(comp.sigma_dim == 1);
      // affine hull is y = 1 or y = -1
      CHECK(comp.aff.contains(d2(Rat(7), comp.aff_point(1))));
      CHECK(abs(comp.aff_point(1)) == Rat(1));
      // covector points back toward the zonotope
      REQUIRE(comp.covector_rays.size() == 1);
      CHECK(comp.covector_rays[0](1) == -comp.aff_point(1));
    }
    CHECK(!rec.regular_value(d2(Rat(3), Rat(1))));
    CHECK(rec.regular_value(d2(Rat(3), Rat(1, 3))));
  }
  SUBCASE("integral shift: six lines and six vertex components") {
    WindowContext ctx(s, d2(0, 0));
    SSRecord rec = ss_closed_form(ctx);
    int lines = 0, points = 0;
    for (const auto& comp : rec.components) {
      if (comp.sigma_dim == 1) ++lines;
      if (comp.sigma_dim == 2) {
        ++points;
        CHECK(comp.covector_rays.size() == 2);
      }
    }
    CHECK(lines == 6);
    CHECK(points == 6);
  }
  SUBCASE("generic shift: empty") {
    WindowContext ctx(s, d2(Rat(2, 5), Rat(1, 10)));
    CHECK(ss_closed_form(ctx).components.empty());
  }
}

TEST_CASE("oracle singular support equals the closed form") {
  SUBCASE("weight (1,-1)") {
    ActionSpec s = spec2();
    for (const Rat& d : {Rat(0), Rat(1, 2), Rat(1, 5), Rat(-3, 7)}) {
      WindowContext ctx(s, make_vec({d}));
      SSRecord rec = ss_closed_form(ctx);
      for (long long v = -3; v <= 3; ++v) {
        CHECK(ss_oracle_fiber(ctx, {v}) == ss_closed_form_fiber(ctx, rec, {v}));
      }
    }
  }
  SUBCASE("weight (1,-1) at the half-integer shift, explicit fibers") {
    WindowContext ctx(spec2(), make_vec({Rat(1, 2)}));
    SSRecord rec = ss_closed_form(ctx);
    auto at0 = ss_oracle_fiber(ctx, {0});
    REQUIRE(at0.size() == 1);
    // the present covector at v=0 is the positive ray
    CHECK(ctx.fan().cones[at0[0]].witness(0) > Rat(0));
    auto at1 = ss_oracle_fiber(ctx, {1});
    REQUIRE(at1.size() == 1);
    CHECK(ctx.fan().cones[at1[0]].witness(0) < Rat(0));
    CHECK(ss_oracle_fiber(ctx, {2}).empty());
  }
  SUBCASE("N=6 k=2 spot checks") {
    ActionSpec s = spec6();
    for (const RatVec& d : {d2(Rat(1, 2), 0), d2(Rat(2, 5), Rat(1, 10))}) {
      WindowContext ctx(s, d);
      SSRecord rec = ss_closed_form(ctx);
      for (long long x = -2; x <= 2; ++x)
        for (long long y = -2; y <= 2; ++y)
          CHECK(ss_oracle_fiber(ctx, {x, y}) == ss_closed_form_fiber(ctx, rec, {x, y}));
    }
  }
}

TEST_CASE("coff verification at the intermediate level") {
  CHECK(verify_coff(spec2(), make_vec({Rat(1, 2)}), 2).ok);
  CHECK(verify_coff(spec2(), make_vec({Rat(0)}), 2).ok);
  CHECK(verify_coff(spec6(), d2(Rat(1, 2), 0), 1).ok);
}

TEST_CASE("sign patterns") {
  SUBCASE("interval case") {
    ActionSpec s = spec2();
    Polyhedron k = fiber_polytope(s, make_vec({Rat(1, 2)}));
    SignPattern sp = sign_pattern(s, k, 0, {0});
    CHECK(sp.s == std::vector<SignVec>{{0}, {1}});
    CHECK(sp.characterizations_agree);
    CHECK(sp.interior_property);
  }
  SUBCASE("mixed directions force zero") {
    ActionSpec s = spec2();
    Polyhedron k = fiber_polytope(s, make_vec({Rat(1, 2)}));
    SignPattern sp = sign_pattern(s, k, 3, {0});  // I = {1,2} is mixed on its line
    for (const auto& sv : sp.s) CHECK(sv[0] == 0);
  }
  SUBCASE("running example at level two") {
    ActionSpec s = spec_eta2();
    SignPattern sp = sign_pattern(s, example_k(), 0, {0, 0});
    std::vector<SignVec> want{{0, -1}, {1, -1}, {1, 0}, {1, 1}};
    CHECK(sp.s == want);
    CHECK(sp.characterizations_agree);
    CHECK(sp.interior_property);
  }
}

TEST_CASE("reduced probes") {
  SUBCASE("member quadrant gives the single plain term") {
    ActionSpec s = spec2();
    Polyhedron k = fiber_polytope(s, make_vec({Rat(1, 5)}));
    // I = {1,2} is in the local family at v=0 (zero section)
    ReducedProbe rp = reduced_probe(s, k, 3, {0});
    bool has_plain_origin = false;
    for (const auto& t : rp.terms)
      if (t.deg == 0 && t.top == SignVec{0}) has_plain_origin = true;
    CHECK(has_plain_origin);
  }
  SUBCASE("stalks reproduce the poset formula") {
    ActionSpec s = spec2();
    for (const Rat& dv : {Rat(1, 2), Rat(0), Rat(1, 5)}) {
      Polyhedron k = fiber_polytope(s, make_vec({dv}));
      for (long long v = -1; v <= 1; ++v) {
        IndexFamily fam = level_index_family(s, k, {v});
        for (Mask i = 0; i < 4; ++i) {
          ReducedProbe rp = reduced_probe(s, k, i, {v});
          for (Mask j = 0; j < 4; ++j) {
            GradedDims via_pattern = rp.stalk(s, j);
            GradedDims via_poset = probe_hom(fam, j, i);
            CHECK(via_pattern == via_poset);
          }
        }
      }
    }
  }
  SUBCASE("level-two stalks against the poset formula") {
    ActionSpec s = spec_eta2();
    Polyhedron k = example_k();
    IndexFamily fam = level_index_family(s, k, {0, 0});
    for (Mask i : {Mask(0), Mask(1), Mask(4), Mask(5)}) {
      ReducedProbe rp = reduced_probe(s, k, i, {0, 0});
      for (Mask j = 0; j < 16; ++j) {
        CHECK(rp.stalk(s, j) == probe_hom(fam, j, i));
      }
    }
  }
}

TEST_CASE("face subproblems") {
  SUBCASE("weight (1,-1), positive ray") {
    WindowContext ctx(spec2(), make_vec({Rat(1, 2)}));
    const Fan& fan = ctx.fan();
    size_t plus = 0;
    for (size_t i = 0; i < fan.cones.size(); ++i)
      if (fan.cones[i].dim == 1 && fan.cones[i].witness(0) > Rat(0)) plus = i;
    FaceSubproblem sub = face_subproblem(ctx, plus);
    CHECK(sub.i_sigma == 1);
    CHECK(sub.i_zero == 0);
    CHECK(sub.orbit_reps == std::vector<IVec>{{1}});
    CHECK(!sub.induced);
  }
  SUBCASE("N=6 k=2 facet subproblem is the (1,-1) action on a line") {
    WindowContext ctx(spec6(), d2(Rat(1, 2), 0));
    const Fan& fan = ctx.fan();
    size_t up = 0;
    for (size_t i = 0; i < fan.cones.size(); ++i)
      if (fan.cones[i].dim == 1 && fan.cones[i].witness(0) == Rat(0) &&
          fan.cones[i].witness(1) > Rat(0))
        up = i;
    FaceSubproblem sub = face_subproblem(ctx, up);
    CHECK(sub.i_zero == 3);  // the +-e1 weights
    REQUIRE(sub.induced);
    CHECK(sub.induced->N() == 2);
    CHECK(sub.induced->k() == 1);
    CHECK(sub.induced->quasi_symmetric());
    CHECK(sub.orbit_reps.size() == 1);
  }
  SUBCASE("faces without lattice points are errors") {
    WindowContext ctx(spec6(), d2(Rat(2, 5), Rat(1, 10)));
    const Fan& fan = ctx.fan();
    for (size_t i = 0; i < fan.cones.size(); ++i) {
      if (fan.cones[i].dim == 0) continue;
      CHECK_THROWS(face_subproblem(ctx, i));
    }
  }
}

TEST_CASE("vanishing cycles") {
  WindowContext ctx(spec2(), make_vec({Rat(1, 2)}));
  const Fan& fan = ctx.fan();
  size_t plus = 0, minus = 0;
  for (size_t i = 0; i < fan.cones.size(); ++i) {
    if (fan.cones[i].dim != 1) continue;
    if (fan.cones[i].witness(0) > Rat(0)) plus = i;
    else minus = i;
  }
  SUBCASE("positive face at vtilde = (1,0)") {
    auto vcs = vanishing_cycle_generators(ctx, plus, 1);
    const VanishingCycle* vc = nullptr;
    for (const auto& c : vcs)
      if (c.vtilde == IVec{1, 0}) vc = &c;
    REQUIRE(vc);
    CHECK(vc->i_sigma == 1);
    CHECK(vc->koszul.terms.size() == 2);
    // support [0,1] x [0, inf), mu image (-inf, 1]
    CHECK(vc->closed_support.contains(make_vec({Rat(1, 2), Rat(3)})));
    CHECK(!vc->closed_support.contains(make_vec({Rat(-1, 2), Rat(3)})));
    CHECK(vc->mu_image.contains(make_vec({Rat(1)})));
    CHECK(vc->mu_image.contains(make_vec({Rat(-5)})));
    CHECK(!vc->mu_image.contains(make_vec({Rat(11, 10)})));
    // oracle support scan agrees with the closed form
    GridBox box = default_box(vc->koszul);
    CHECK(!support_mismatch(box, vc->koszul, vc->stalk_support));
    // mu image of the closed support matches
    Polyhedron img = vc->closed_support.project(ctx.spec().mu_mat());
    CHECK(contained_in_union(img, {vc->mu_image}));
    CHECK(contained_in_union(vc->mu_image, {img}));
  }
  SUBCASE("negative face at vtilde = (0,0)") {
    auto vcs = vanishing_cycle_generators(ctx, minus, 1);
    const VanishingCycle* vc = nullptr;
    for (const auto& c : vcs)
      if (c.vtilde == IVec{0, 0}) vc = &c;
    REQUIRE(vc);
    CHECK(vc->i_sigma == 2);
    // support [0, inf) x [-1, 0], mu image [0, inf)
    CHECK(vc->closed_support.contains(make_vec({Rat(3), Rat(-1, 2)})));
    CHECK(!vc->closed_support.contains(make_vec({Rat(3), Rat(1, 2)})));
    CHECK(vc->mu_image.contains(make_vec({Rat(0)})));
    CHECK(!vc->mu_image.contains(make_vec({Rat(-1, 10)})));
    GridBox box = default_box(vc->koszul);
    CHECK(!support_mismatch(box, vc->koszul, vc->stalk_support));
  }
}

TEST_CASE("window generation") {
  ActionSpec s = spec2();
  RatVec delta = make_vec({Rat(1, 2)});
  SUBCASE("window objects stay put") {
    auto g = generate_probe_from_windows(s, delta, {0, 0});
    REQUIRE(g.terms.size() == 1);
    CHECK(g.terms[0] == std::pair<int, IVec>{0, {0, 0}});
  }
  SUBCASE("deep weights terminate inside the window") {
    for (long long a = -3; a <= 3; ++a)
      for (long long b = -3; b <= 3; ++b) {
        auto g = generate_probe_from_windows(s, delta, {a, b});
        std::vector<IVec> win = window(s, delta);
        for (const auto& [deg, w] : g.terms) {
          IVec v = s.mu(w);
          CHECK(std::find(win.begin(), win.end(), v) != win.end());
        }
      }
  }
  SUBCASE("the realized output co-represents the quadrant stalk") {
    auto g = generate_probe_from_windows(s, delta, {1, -1});
    REQUIRE(g.realized);
    GridBox box{2, 4};
    for (long long a = -2; a <= 2; ++a)
      for (long long b = -2; b <= 2; ++b) {
        IVec v = s.mu({a, b});
        if (v[0] < 0 || v[0] > 1) continue;  // window objects only
        BlockComplex lw = BlockComplex::single(2, Block::open_quadrant({a, b}));
        GradedDims h = rhom(box, *g.realized, lw);
        bool below = a <= 1 && b <= -1;
        if (below) {
          REQUIRE(h.size() == 1);
          CHECK(h.at(0) == 1);
        } else {
          CHECK(h.empty());
        }
      }
  }
  SUBCASE("N=6 k=2 generation terminates in the window") {
    ActionSpec s6 = spec6();
    RatVec d = d2(Rat(2, 5), Rat(1, 10));
    std::vector<IVec> win = window(s6, d);
    for (const IVec& w : std::vector<IVec>{{2, 0, 1, 0, 0, 0}, {0, 1, 0, 2, 1, 0}}) {
      auto g = generate_probe_from_windows(s6, d, w);
      for (const auto& [deg, t] : g.terms)
        CHECK(std::find(win.begin(), win.end(), s6.mu(t)) != win.end());
    }
  }
}

TEST_CASE("discriminant") {
  ActionSpec s = spec2();
  SUBCASE("slits of the favourite example") {
    CHECK(point_in_discriminant(s, make_vec({Rat(1, 2)}), make_vec({Rat(1, 2)})));
    CHECK(point_in_discriminant(s, make_vec({Rat(1, 2)}), make_vec({Rat(0)})));
    CHECK(point_in_discriminant(s, make_vec({Rat(1, 2)}), make_vec({Rat(1)})));
    CHECK(!point_in_discriminant(s, make_vec({Rat(1, 2)}), make_vec({Rat(3, 2)})));
    CHECK(!point_in_discriminant(s, make_vec({Rat(1, 3)}), make_vec({Rat(1, 2)})));
    Discriminant d = discriminant(s, Rat(2));
    CHECK(!d.pieces.empty());
    for (const auto& p : d.pieces) {
      // every piece pins delta to a half-integer next to its anchor
      Rat z(p.lattice_point[0]);
      bool at_left = p.piece.contains(make_vec({z - Rat(1, 2), z}));
      bool at_right = p.piece.contains(make_vec({z + Rat(1, 2), z}));
      CHECK((at_left || at_right));
      CHECK(!p.piece.contains(make_vec({z - Rat(1, 4), z})));
    }
    CHECK(d.complement_components == 1);
  }
  SUBCASE("diagonal segments away from the slabs avoid the discriminant") {
    // l - delta = 1 stays outside every slab |l - delta| <= 1/2
    RatVec p = make_vec({Rat(1, 5), Rat(6, 5)});
    RatVec q = make_vec({Rat(6, 5), Rat(11, 5)});
    CHECK(!segment_meets_discriminant(s, p, q, nullptr));
    // through a slit
    RatVec a = make_vec({Rat(1, 5), Rat(1, 5)});
    RatVec b = make_vec({Rat(6, 5), Rat(6, 5)});
    CHECK(segment_meets_discriminant(s, a, b, nullptr));
  }
}

TEST_CASE("delta stratification") {
  SUBCASE("weight (1,-1): half-integers and their gaps") {
    auto cells = delta_stratification(spec2(), Rat(2));
    int pts = 0, gaps = 0;
    for (const auto& c : cells) {
      bool on = false;
      for (int s : c.sign) on = on || s == 0;
      if (on) {
        ++pts;
        CHECK(c.window.size() == 2);
      } else {
        ++gaps;
        CHECK(c.window.size() == 1);
      }
    }
    CHECK(pts == 4);   // -3/2, -1/2, 1/2, 3/2
    CHECK(gaps == 5);
  }
  SUBCASE("N=6 k=2 strata walls are the integer grid plus diagonals") {
    auto cells = delta_stratification(spec6(), Rat(1));
    // the open cell containing (0.4, 0.1) has the three-point window
    bool found = false;
    for (const auto& c : cells) {
      if (c.point == d2(Rat(2, 5), Rat(1, 10))) found = true;
    }
    (void)found;
    // windows are locally constant: resample each open cell
    for (const auto& c : cells) {
      bool open_cell = true;
      for (int s : c.sign) open_cell = open_cell && s != 0;
      if (!open_cell) continue;
      CHECK(window(spec6(), c.point).size() == c.window.size());
    }
    CHECK(cells.size() == 17);
  }
}

TEST_CASE("schober regions") {
  SUBCASE("weight (1,-1) at delta = 1/2") {
    auto regions = schober_regions(spec2(), make_vec({Rat(1, 2)}), 4);
    REQUIRE(regions.size() == 3);
    for (const auto& r : regions) CHECK(r.families_agree);
    // the extreme regions are beyond the thickened wall
    bool has_left = false, has_right = false, has_band = false;
    for (const auto& r : regions) {
      if (r.pattern == std::vector<int>{-1}) {
        has_left = true;
        CHECK(r.region.contains(make_vec({Rat(-1)})));
        CHECK(!r.region.contains(make_vec({Rat(1, 2)})));
      }
      if (r.pattern == std::vector<int>{1}) {
        has_right = true;
        CHECK(r.region.contains(make_vec({Rat(2)})));
      }
      if (r.pattern == std::vector<int>{0}) {
        has_band = true;
        CHECK(r.region.contains(make_vec({Rat(1, 2)})));
      }
    }
    CHECK(has_left);
    CHECK(has_right);
    CHECK(has_band);
  }
  SUBCASE("generic delta has no regions") {
    CHECK(schober_regions(spec2(), make_vec({Rat(1, 5)}), 3).empty());
  }
  SUBCASE("N=6 k=2 at (1/2, 0): three regions across the horizontal band") {
    auto regions = schober_regions(spec6(), d2(Rat(1, 2), 0), 3);
    REQUIRE(regions.size() == 3);
    for (const auto& r : regions) CHECK(r.families_agree);
  }
}
