#include "mw/svg.hpp"

#include <cmath>
#include <sstream>

namespace mw {

namespace {

constexpr double kScale = 60.0;

std::string pt(const Rat& x, const Rat& y, const Rat& view) {
  // map (x, y) to viewport, y flipped
  std::ostringstream os;
  os << rat_decimal6((x + view) * Rat(60)) << "," << rat_decimal6((view - y) * Rat(60));
  return os.str();
}

}  // namespace

std::string ss_svg(const WindowContext& ctx, const SSRecord& rec, const Rat& view) {
  if (ctx.spec().k() != 2) throw std::invalid_argument("svg output is k = 2 only");
  std::ostringstream os;
  Rat side = view * Rat(2) * Rat(60);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << rat_decimal6(side)
     << "\" height=\"" << rat_decimal6(side) << "\" viewBox=\"0 0 " << rat_decimal6(side) << " "
     << rat_decimal6(side) << "\">\n";
  (void)kScale;
  // grid
  long long vr = rat_floor(view).convert_to<long long>();
  for (long long g = -vr; g <= vr; ++g) {
    os << "<line x1=\"" << rat_decimal6((Rat(g) + view) * Rat(60)) << "\" y1=\"0\" x2=\""
       << rat_decimal6((Rat(g) + view) * Rat(60)) << "\" y2=\"" << rat_decimal6(side)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"0\" y1=\"" << rat_decimal6((view - Rat(g)) * Rat(60)) << "\" x2=\""
       << rat_decimal6(side) << "\" y2=\"" << rat_decimal6((view - Rat(g)) * Rat(60))
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }
  // zonotope polygon: walk facets by angle using the fan's maximal cones
  {
    const Fan& fan = ctx.fan();
    std::vector<std::pair<double, RatVec>> verts;
    for (const auto& cone : fan.cones) {
      if (cone.dim != 2) continue;
      Zonotope face = fan.face(cone);
      RatVec v = ctx.delta() + face.shift();
      double ang = 0;
      {
        std::istringstream isx(rat_decimal6(cone.witness(0))), isy(rat_decimal6(cone.witness(1)));
        double x, y;
        isx >> x;
        isy >> y;
        ang = std::atan2(y, x);
      }
      verts.push_back({ang, v});
    }
    std::sort(verts.begin(), verts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    os << "<polygon points=\"";
    for (const auto& [a, v] : verts) os << pt(v(0), v(1), view) << " ";
    os << "\" fill=\"#ffe97f\" fill-opacity=\"0.5\" stroke=\"#b89000\"/>\n";
  }
  // jumping loci
  for (const auto& comp : rec.components) {
    if (comp.sigma_dim == 1) {
      // line through aff_point with direction aff_basis.col(0)
      RatVec d = comp.aff_basis.col(0);
      Rat lam(6);
      RatVec p0 = comp.aff_point - d * lam * view;
      RatVec p1 = comp.aff_point + d * lam * view;
      os << "<line x1=\"" << rat_decimal6((p0(0) + view) * Rat(60)) << "\" y1=\""
         << rat_decimal6((view - p0(1)) * Rat(60)) << "\" x2=\""
         << rat_decimal6((p1(0) + view) * Rat(60)) << "\" y2=\""
         << rat_decimal6((view - p1(1)) * Rat(60)) << "\" stroke=\"#3050ff\" stroke-width=\"2\"/>\n";
      // hair ticks on the covector side
      if (!comp.covector_rays.empty()) {
        RatVec xi = comp.covector_rays.front();
        for (int t = -8; t <= 8; ++t) {
          RatVec base = comp.aff_point + d * Rat(t) * view / Rat(8);
          RatVec tip = base + xi * view / Rat(12);
          os << "<line x1=\"" << rat_decimal6((base(0) + view) * Rat(60)) << "\" y1=\""
             << rat_decimal6((view - base(1)) * Rat(60)) << "\" x2=\""
             << rat_decimal6((tip(0) + view) * Rat(60)) << "\" y2=\""
             << rat_decimal6((view - tip(1)) * Rat(60))
             << "\" stroke=\"#3050ff\" stroke-width=\"1\"/>\n";
        }
      }
    } else {
      // point component: dot plus the covector cone wedge
      os << "<circle cx=\"" << rat_decimal6((comp.aff_point(0) + view) * Rat(60)) << "\" cy=\""
         << rat_decimal6((view - comp.aff_point(1)) * Rat(60))
         << "\" r=\"4\" fill=\"none\" stroke=\"#3050ff\"/>\n";
      for (const RatVec& xi : comp.covector_rays) {
        RatVec tip = comp.aff_point + xi * view / Rat(8);
        os << "<line x1=\"" << rat_decimal6((comp.aff_point(0) + view) * Rat(60)) << "\" y1=\""
           << rat_decimal6((view - comp.aff_point(1)) * Rat(60)) << "\" x2=\""
           << rat_decimal6((tip(0) + view) * Rat(60)) << "\" y2=\""
           << rat_decimal6((view - tip(1)) * Rat(60))
           << "\" stroke=\"#3050ff\" stroke-width=\"1.5\"/>\n";
      }
    }
  }
  // window points
  for (const IVec& w : ctx.window_points()) {
    os << "<circle cx=\"" << rat_decimal6((Rat(w[0]) + view) * Rat(60)) << "\" cy=\""
       << rat_decimal6((view - Rat(w[1])) * Rat(60)) << "\" r=\"5\" fill=\"#d02020\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace mw
