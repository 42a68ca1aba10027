// Deterministic JSON emitters and parsers for the CLI surface.

#pragma once

#include <string>
#include <vector>

#include "mw/transportlib.hpp"
#include "mw/window.hpp"

namespace mw {

std::string json_window(const std::vector<IVec>& w);
std::string json_qs(const QsReport& r);
std::string json_gkz(const ActionSpec& spec, const std::vector<GKZChamber>& chambers);
std::string json_polyhedron(const Polyhedron& p);
std::string json_family(const IndexFamily& fam);
std::string json_ss(const WindowContext& ctx, const SSRecord& rec);
std::string json_probe(const ProbeComplex& pc, Eigen::Index n);
std::string json_dims(const GradedDims& d);
std::string json_masks(const std::vector<Mask>& ms, Eigen::Index n);
std::string json_floods(const std::vector<Flood>& fs, Eigen::Index n);
std::string json_coff(const CoffReport& rep, Eigen::Index n);
std::string json_vanishing(const std::vector<VanishingCycle>& vcs, const ActionSpec& spec);
std::string json_generation(const GenerationResult& g);
std::string json_transport(const TransportLog& log);
std::string json_discriminant(const Discriminant& d);
std::string json_strata(const std::vector<StrataCell>& cells);
std::string json_schober(const std::vector<SchoberRegion>& regions);

/// Parses a JSON list of rational points: [["0","1/2"], ...].
std::vector<RatVec> parse_path_json(const std::string& text);

}  // namespace mw
