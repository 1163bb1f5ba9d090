#include "fvslab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace fvslab {

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const Cost& c) { return c.str(); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}

Json to_json(const ViolatedConstraint& c) {
  Json coef = Json::array();
  for (auto [v, k] : c.coefficients) coef.push_back({v, k});
  Json out{{"family", to_string(c.kind)}, {"witness", c.vertices}};
  if (!c.edges.empty()) out["edges"] = c.edges;
  out["coefficients"] = std::move(coef);
  out["lhs"] = c.lhs.str();
  out["rhs"] = c.rhs.str();
  return out;
}

Json to_json(const CutLogEntry& e) {
  Json out{{"iteration", e.iteration}, {"family", to_string(e.cut.kind)}, {"witness", e.cut.vertices}};
  if (!e.cut.edges.empty()) out["edges"] = e.cut.edges;
  out["lhs"] = e.cut.lhs.str();
  out["rhs"] = e.cut.rhs.str();
  return out;
}

std::string cut_log_lines(const std::vector<CutLogEntry>& log) {
  std::string out;
  for (const auto& e : log) out += to_json(e).dump() + "\n";
  return out;
}

Json to_json(const PrimalDualResult& r) {
  Json raises = Json::array();
  for (const DualRaise& d : r.certificate.raises) {
    Json item{{"kind", to_string(d.kind)}, {"set", d.set}, {"epsilon", d.amount.str()}, {"chosen", d.chosen}};
    if (!d.cycle.empty()) item["cycle"] = d.cycle;
    raises.push_back(std::move(item));
  }
  Json deletes = Json::array();
  for (const auto& s : r.reverse_delete) deletes.push_back({{"vertex", s.vertex}, {"removed", s.removed}});
  Json load = Json::array();
  for (const Rational& l : r.certificate.load) load.push_back(l.str());
  return {{"fvs", r.fvs},
          {"primal_cost", r.primal_cost.str()},
          {"dual_value", r.dual_value.str()},
          {"insertion_order", r.insertion_order},
          {"raises", std::move(raises)},
          {"reverse_delete", std::move(deletes)},
          {"load", std::move(load)}};
}

Json to_json(const CertificateReport& r) {
  return {{"dual_feasible", r.dual_feasible},
          {"minimal_per_iteration", r.minimal_per_iteration},
          {"density_bound", r.density_bound},
          {"ratio", r.ratio},
          {"recomputed_dual", r.recomputed_dual.str()},
          {"failures", r.failures}};
}

Json to_json(const IterativeRoundingResult& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"picked", s.picked}, {"x", s.x_value.str()}, {"lp", s.lp_value.str()}, {"minimal_resolve", s.minimal_resolve}});
  }
  return {{"set", r.set},
          {"cost", r.cost.str()},
          {"first_lp", r.first_lp.str()},
          {"within_factor", r.within_factor},
          {"steps", std::move(steps)}};
}

Json to_json(const ExtremePointReport& r) {
  return {{"graph", r.graph_id},
          {"kind", to_string(r.kind)},
          {"objective", to_json(r.objective)},
          {"point", to_json(r.point)},
          {"is_vertex", r.is_vertex},
          {"is_minimal", r.is_minimal},
          {"max_x", r.max_x.str()},
          {"threshold", to_string(r.threshold)}};
}

Json to_json(const TightSetReport& r) {
  Json sets = Json::array();
  for (VertexMask m : r.family.sets) sets.push_back(mask_to_set(m));
  return {{"applicable", r.applicable}, {"is_vertex", r.is_vertex}, {"tight_sets", std::move(sets)}, {"failures", r.failures}};
}

Json to_json(const IntegralityGap& g) {
  Json out{{"lp", g.lp.str()}, {"ip", g.ip.str()}};
  out["ratio"] = g.ratio ? Json(g.ratio->str()) : Json(nullptr);
  return out;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void RunReport::check(std::string name, bool passed, std::string detail, bool soft) {
  assertions.push_back({std::move(name), passed, std::move(detail), soft});
}

bool RunReport::hard_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed || a.soft; });
}

bool RunReport::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

Json RunReport::to_json() const {
  Json checks = Json::array();
  for (const auto& a : assertions) {
    checks.push_back({{"name", a.name}, {"passed", a.passed}, {"soft", a.soft}, {"detail", a.detail}});
  }
  Json out{{"command", command}, {"input_digest", input_digest}, {"parameters", parameters}};
  out["seed"] = seed ? Json(*seed) : Json(nullptr);
  out["results"] = results;
  out["assertions"] = std::move(checks);
  out["passed"] = hard_passed();
  out["wall_seconds"] = wall_seconds;
  return out;
}

std::string format_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << cells[c];
      if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size() + 2, ' ');
    }
    os << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  return os.str();
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << command << "  digest " << (input_digest.empty() ? "-" : input_digest);
  if (seed) os << "  seed " << *seed;
  os << "  " << wall_seconds << "s\n";
  if (!assertions.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& a : assertions) rows.push_back({a.passed ? "PASS" : (a.soft ? "NOTE" : "FAIL"), a.name, a.detail});
    os << format_table({"status", "check", "detail"}, rows);
  }
  for (const auto& [key, value] : results.items()) os << key << ": " << value.dump() << '\n';
  os << (hard_passed() ? "passed" : "FAILED") << '\n';
  return os.str();
}

}  // namespace fvslab
