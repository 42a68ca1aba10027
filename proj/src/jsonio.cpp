#include "mw/jsonio.hpp"

#include <sstream>

#include "json.hpp"

namespace mw {

namespace {

std::string ivec_json(const IVec& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

std::string ratvec_json(const RatVec& v) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << "\"" << rat_str(v(i)) << "\"";
  os << "]";
  return os.str();
}

std::string mask_json(Mask m, Eigen::Index n) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (Eigen::Index i = 0; i < n; ++i)
    if (m & (Mask(1) << i)) {
      if (!first) os << ",";
      os << (i + 1);
      first = false;
    }
  os << "]";
  return os.str();
}

}  // namespace

std::string json_window(const std::vector<IVec>& w) {
  std::ostringstream os;
  os << "{\"window\":[";
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << ivec_json(w[i]);
  os << "]}";
  return os.str();
}

std::string json_qs(const QsReport& r) {
  std::ostringstream os;
  os << "{\"quasi_symmetric\":" << (r.quasi_symmetric ? "true" : "false") << ",\"lines\":[";
  for (size_t i = 0; i < r.lines.size(); ++i) {
    os << (i ? "," : "") << "[";
    for (size_t j = 0; j < r.lines[i].size(); ++j) os << (j ? "," : "") << r.lines[i][j];
    os << "]";
  }
  os << "],\"eta\":[";
  for (size_t i = 0; i < r.eta.size(); ++i) os << (i ? "," : "") << "\"" << rat_str(r.eta[i]) << "\"";
  os << "]}";
  return os.str();
}

std::string json_polyhedron(const Polyhedron& p) {
  std::ostringstream os;
  os << "{\"dim\":" << p.dim() << ",\"rows\":[";
  bool first = true;
  for (const auto& r : p.rows()) {
    if (!first) os << ",";
    first = false;
    os << "{\"a\":" << ratvec_json(r.a) << ",\"c\":\"" << rat_str(r.c) << "\",\"rel\":\""
       << (r.rel == Rel::EQ ? "eq" : (r.rel == Rel::LT ? "lt" : "le")) << "\"}";
  }
  os << "]}";
  return os.str();
}

std::string json_gkz(const ActionSpec& spec, const std::vector<GKZChamber>& chambers) {
  std::ostringstream os;
  os << "{\"chambers\":[";
  for (size_t i = 0; i < chambers.size(); ++i) {
    os << (i ? "," : "") << "{\"witness\":" << ratvec_json(chambers[i].witness)
       << ",\"cone\":" << json_polyhedron(chambers[i].cone) << ",\"index_family\":[";
    for (size_t j = 0; j < chambers[i].index_family.size(); ++j)
      os << (j ? "," : "") << mask_json(chambers[i].index_family[j], spec.N());
    os << "]}";
  }
  os << "]}";
  return os.str();
}

std::string json_family(const IndexFamily& fam) {
  std::ostringstream os;
  os << "{\"N\":" << fam.N << ",\"members\":[";
  for (size_t i = 0; i < fam.members.size(); ++i)
    os << (i ? "," : "") << mask_json(fam.members[i], fam.N);
  os << "]}";
  return os.str();
}

std::string json_ss(const WindowContext& ctx, const SSRecord& rec) {
  std::ostringstream os;
  os << "{\"components\":[";
  for (size_t i = 0; i < rec.components.size(); ++i) {
    const auto& c = rec.components[i];
    os << (i ? "," : "") << "{\"affine\":{\"point\":" << ratvec_json(c.aff_point) << ",\"basis\":[";
    for (Eigen::Index j = 0; j < c.aff_basis.cols(); ++j)
      os << (j ? "," : "") << ratvec_json(c.aff_basis.col(j));
    os << "]},\"cone\":{\"rays\":[";
    for (size_t j = 0; j < c.covector_rays.size(); ++j)
      os << (j ? "," : "") << ratvec_json(c.covector_rays[j]);
    os << "]},\"hasLattice\":" << (c.has_lattice ? "true" : "false") << "}";
  }
  os << "]}";
  return os.str();
}

std::string json_dims(const GradedDims& d) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [deg, v] : d) {
    if (!first) os << ",";
    first = false;
    os << "\"" << deg << "\":" << v;
  }
  os << "}";
  return os.str();
}

std::string json_probe(const ProbeComplex& pc, Eigen::Index n) {
  std::ostringstream os;
  os << "{\"quadrant\":" << mask_json(pc.quadrant, n) << ",\"terms\":[";
  for (size_t d = 0; d < pc.terms.size(); ++d) {
    os << (d ? "," : "") << "[";
    for (size_t t = 0; t < pc.terms[d].size(); ++t)
      os << (t ? "," : "") << mask_json(pc.terms[d][t], n);
    os << "]";
  }
  os << "]}";
  return os.str();
}

std::string json_masks(const std::vector<Mask>& ms, Eigen::Index n) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < ms.size(); ++i) os << (i ? "," : "") << mask_json(ms[i], n);
  os << "]";
  return os.str();
}

std::string json_floods(const std::vector<Flood>& fs, Eigen::Index n) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < fs.size(); ++i)
    os << (i ? "," : "") << "{\"quadrant\":" << mask_json(fs[i].quadrant, n)
       << ",\"stalk\":" << json_dims(fs[i].stalk) << "}";
  os << "]";
  return os.str();
}

std::string json_coff(const CoffReport& rep, Eigen::Index n) {
  std::ostringstream os;
  os << "{\"ok\":" << (rep.ok ? "true" : "false")
     << ",\"zero_section\":" << (rep.zero_section ? "true" : "false");
  if (rep.witness_quadrant) os << ",\"witness_quadrant\":" << mask_json(*rep.witness_quadrant, n);
  if (rep.witness_point) os << ",\"witness_point\":" << ratvec_json(*rep.witness_point);
  os << "}";
  return os.str();
}

std::string json_vanishing(const std::vector<VanishingCycle>& vcs, const ActionSpec& spec) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < vcs.size(); ++i) {
    const auto& vc = vcs[i];
    os << (i ? "," : "") << "{\"vtilde\":" << ivec_json(vc.vtilde)
       << ",\"koszul_set\":" << mask_json(vc.i_sigma, spec.N()) << ",\"terms\":[";
    for (size_t t = 0; t < vc.koszul.terms.size(); ++t) {
      os << (t ? "," : "") << "{\"deg\":" << vc.koszul.terms[t].deg << ",\"w\":[";
      for (int a = 0; a < vc.koszul.N; ++a) {
        const auto& iv = vc.koszul.terms[t].block.axes[static_cast<size_t>(a)];
        os << (a ? "," : "") << iv.lo;
      }
      os << "]}";
    }
    os << "],\"mu_image\":" << json_polyhedron(vc.mu_image) << "}";
  }
  os << "]";
  return os.str();
}

std::string json_generation(const GenerationResult& g) {
  std::ostringstream os;
  os << "{\"terms\":[";
  for (size_t i = 0; i < g.terms.size(); ++i)
    os << (i ? "," : "") << "{\"deg\":" << g.terms[i].first
       << ",\"w\":" << ivec_json(g.terms[i].second) << "}";
  os << "],\"realized_maps\":" << (g.realized ? "true" : "false") << "}";
  return os.str();
}

std::string json_transport(const TransportLog& log) {
  std::ostringstream os;
  os << "{\"valid\":" << (log.valid ? "true" : "false");
  if (!log.error.empty()) os << ",\"error\":\"" << log.error << "\"";
  os << ",\"crossings\":[";
  for (size_t i = 0; i < log.crossings.size(); ++i) {
    const auto& c = log.crossings[i];
    os << (i ? "," : "") << "{\"point\":" << ratvec_json(c.point) << ",\"component\":" << c.component
       << ",\"positive\":" << (c.positive ? "true" : "false") << "}";
  }
  os << "],\"sod\":[";
  for (size_t i = 0; i < log.sod.size(); ++i) {
    const auto& t = log.sod[i];
    os << (i ? "," : "") << "{\"crossing\":" << t.crossing << ",\"koszul_set\":[";
    bool first = true;
    for (int b = 0; b < 32; ++b)
      if (t.i_sigma & (Mask(1) << b)) {
        if (!first) os << ",";
        os << (b + 1);
        first = false;
      }
    os << "],\"generators\":[";
    for (size_t jx = 0; jx < t.generators.size(); ++jx)
      os << (jx ? "," : "") << ivec_json(t.generators[jx]);
    os << "],\"lifts\":[";
    for (size_t jx = 0; jx < t.lifts.size(); ++jx) os << (jx ? "," : "") << ivec_json(t.lifts[jx]);
    os << "]}";
  }
  os << "]}";
  return os.str();
}

std::string json_discriminant(const Discriminant& d) {
  std::ostringstream os;
  os << "{\"pieces\":[";
  for (size_t i = 0; i < d.pieces.size(); ++i) {
    os << (i ? "," : "") << "{\"normal\":" << ratvec_json(d.pieces[i].facet_normal)
       << ",\"anchor\":" << ivec_json(d.pieces[i].lattice_point)
       << ",\"piece\":" << json_polyhedron(d.pieces[i].piece) << "}";
  }
  os << "],\"complement_components\":" << d.complement_components << "}";
  return os.str();
}

std::string json_strata(const std::vector<StrataCell>& cells) {
  std::ostringstream os;
  os << "{\"cells\":[";
  for (size_t i = 0; i < cells.size(); ++i) {
    os << (i ? "," : "") << "{\"point\":" << ratvec_json(cells[i].point) << ",\"window\":[";
    for (size_t j = 0; j < cells[i].window.size(); ++j)
      os << (j ? "," : "") << ivec_json(cells[i].window[j]);
    os << "]}";
  }
  os << "]}";
  return os.str();
}

std::string json_schober(const std::vector<SchoberRegion>& regions) {
  std::ostringstream os;
  os << "{\"regions\":[";
  for (size_t i = 0; i < regions.size(); ++i) {
    const auto& r = regions[i];
    os << (i ? "," : "") << "{\"pattern\":[";
    for (size_t j = 0; j < r.pattern.size(); ++j) os << (j ? "," : "") << r.pattern[j];
    os << "],\"delta_prime\":" << ratvec_json(r.delta_prime)
       << ",\"region\":" << json_polyhedron(r.region)
       << ",\"families_agree\":" << (r.families_agree ? "true" : "false") << ",\"checked\":[";
    for (size_t j = 0; j < r.checked.size(); ++j) os << (j ? "," : "") << ivec_json(r.checked[j]);
    os << "]}";
  }
  os << "]}";
  return os.str();
}

std::vector<RatVec> parse_path_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<RatVec> out;
  for (const auto& pt : j) {
    RatVec v(static_cast<Eigen::Index>(pt.size()));
    for (size_t i = 0; i < pt.size(); ++i) {
      const auto& c = pt[i];
      if (c.is_number_integer()) v(static_cast<Eigen::Index>(i)) = Rat(c.get<long long>());
      else if (c.is_string()) v(static_cast<Eigen::Index>(i)) = parse_rat(c.get<std::string>());
      else throw std::invalid_argument("path entries must be integers or rational strings");
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace mw
