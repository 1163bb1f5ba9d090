#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fvslab/formulations.hpp"

namespace fvslab {

enum class RaiseKind { WholeResidual, SemiDisjointCycle };

std::string to_string(RaiseKind k);

/// One dual raise: y_S (whole residual) or z_C (semi-disjoint cycle) grows by `amount`.
struct DualRaise {
  RaiseKind kind = RaiseKind::WholeResidual;
  VertexSet set;               // S_i, sorted
  std::vector<VertexId> cycle;  // cycle order, SemiDisjointCycle only
  Rational amount;             // >= 0; zero when a vertex of S_i was already tight
  VertexId chosen = -1;        // vertex that became tight and entered F
};

struct DualCertificate {
  std::vector<DualRaise> raises;
  /// Dual load per vertex: sum over raises of coefficient * amount.
  std::vector<Rational> load;
};

struct ReverseDeleteStep {
  VertexId vertex = -1;
  bool removed = false;
};

struct PrimalDualResult {
  VertexSet fvs;
  std::vector<VertexId> insertion_order;  // every vertex ever added, in order
  DualCertificate certificate;
  std::vector<ReverseDeleteStep> reverse_delete;
  Rational primal_cost;
  Rational dual_value;
};

/// Primal-dual 2-approximation for FVS on the vertex costs of g. Infinite-cost
/// vertices never become tight. Throws PreconditionError if some cycle has
/// only infinite-cost vertices.
PrimalDualResult primal_dual_fvs(const Graph& g);

struct CertificateReport {
  bool dual_feasible = false;          // loads <= costs, equality on every inserted vertex
  bool minimal_per_iteration = false;  // F_{>=i} cap S_i minimal FVS of G[S_i]
  bool density_bound = false;          // sum_{F cap S_i}(d_{S_i} - 1) <= 2 b(S_i) on whole-residual raises
  bool ratio = false;                  // primal <= 2 dual
  Rational recomputed_dual;
  std::vector<std::string> failures;

  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Recomputes everything from g and the raise list. Returns the report; use
/// require_certificate to turn a failure into VerificationError.
CertificateReport verify_certificate(const Graph& g, const PrimalDualResult& result);
void require_certificate(const Graph& g, const PrimalDualResult& result);

enum class Problem { Fvs, Pfds, Mc2pt };

std::string to_string(Problem p);

struct ExactSolution {
  VertexSet set;
  Rational value;
};

/// Exact optimum by include/exclude search over vertices. Caps:
/// brute_force_vertices for FVS/PFDS, mc2pt_brute_vertices for MC2PT (vertex
/// costs as weights). nullopt when no finite-cost solution exists.
std::optional<ExactSolution> brute_force(const Graph& g, Problem problem, const Caps& caps = {});

/// Cheapest F over finite-cost vertices of the subdivided graph such that no
/// cycle of H - F passes through a terminal.
std::optional<ExactSolution> brute_force_sfvs(const SfvsInstance& inst, const Caps& caps = {});

struct RoundingStep {
  VertexId picked = -1;
  Rational x_value;
  Rational lp_value;       // orientation LP optimum of the residual graph
  bool minimal_resolve = false;
};

struct IterativeRoundingResult {
  VertexSet set;
  Rational cost;
  Rational first_lp;
  std::vector<RoundingStep> steps;
  bool within_factor = false;  // cost <= 3 * first_lp
};

/// Repeatedly solve the orientation LP, delete a vertex with x >= 1/3 (largest,
/// lowest index on ties), until a pseudoforest remains. Throws
/// VerificationError with a report if no such vertex exists even at a
/// certified minimal vertex.
IterativeRoundingResult iterative_rounding_pfds(const Graph& g);

}  // namespace fvslab
