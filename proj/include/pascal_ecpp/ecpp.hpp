#pragma once

#include <functional>
#include <optional>

#include "pascal_ecpp/certificate.hpp"
#include "pascal_ecpp/cm.hpp"

namespace pascal_ecpp {

struct ProofConfig {
  // 0 means adaptive: max(10^4, 50 * decimal digits of the node).
  std::uint32_t smooth_bound = 0;
  // Cap on |d| during escalation; 0 means the whole table.
  Int discriminant_limit = 0;
  // Drop discriminants whose |d| has a prime factor above this (<= 0: keep
  // all). Keeps the square-root cache effective.
  long discriminant_prime_limit = 1000;
  // Nodes at or below this are finished by trial division.
  Int small_prime_threshold = Int(1000000000);
  int prp_bases = 20;
  int retry_limit = 32;
  int factor_effort = 1;
  int max_candidates_per_step = 8;
  Int initial_d_limit = 5000;
  unsigned long seed = 0;
  int jobs = 1;
  std::function<void(const std::string&)> log;
};

// A successful iteration step waiting to become a graph edge: discriminant
// d gave trace u, order m = f * s_prime with f fully factored and s_prime a
// probable prime above the fourth-root bound of the parent.
struct CandidateEdge {
  size_t record_index = 0;
  Int d, u, m;
  FactoredInteger f;
  Int s_prime;
};

// Node of the discriminant graph G(n): an intermediate probable prime with
// its own discriminant budget and enumeration cursor.
struct GraphNode {
  Int s;
  long digits = 0;
  int depth = 0;
  Int d_limit;
  DiscriminantCursor cursor;
  long insert_index = 0;
  long parent = -1;
  CertStep parent_step;  // the edge that created this node (parent >= 0)
  SqrtCache cache;
  bool closed = false;
};

// Selection order: fewer decimal digits, then lower d_limit, then insertion
// order. Strict total order (insert_index is unique).
struct NodePriority {
  long digits = 0;
  Int d_limit;
  long insert_index = 0;
  bool operator<(const NodePriority& o) const;
};
NodePriority priority(const GraphNode& node);

struct AtkinStepResult {
  enum class Kind { Candidates, Exhausted, Composite };
  Kind kind;
  std::vector<CandidateEdge> candidates;
  Int witness;  // Composite: node.s is certainly composite
};

// One iteration step: enumerate discriminants from the node's cursor up to
// its d_limit, solve Cornacchia via the node's square-root cache, factor
// both orders n+1±u, and collect qualifying edges (several per step).
// Exhausted = the window is spent; the driver raises d_limit.
AtkinStepResult atkin_step(GraphNode& node, const ProofConfig& cfg,
                           const DiscriminantTable& table,
                           const std::vector<size_t>& view);

struct BuildOutcome {
  enum class Kind { Step, No, Composite };
  Kind kind;
  CertStep step;  // Step
  Int witness;    // Composite
};

// Hilbert root, CM curve pair, then the point test on the curve and (on a
// No) its twist. Double No abandons the candidate; only an arithmetic
// contradiction means composite.
BuildOutcome build_curves_and_prove(const CandidateEdge& edge,
                                    const Int& s_parent,
                                    const DiscriminantRecord& rec,
                                    const ProofConfig& cfg, Rng& rng);

struct ProveResult {
  enum class Status { Proved, Composite, Stuck };
  Status status = Status::Stuck;
  Certificate cert;  // Proved
  Int witness;       // Composite
  long nodes_expanded = 0;
};

// The full downrun: maintain G(n), expand the highest-priority open node,
// finish when a node falls to trial-division range, and assemble the
// certificate along the successful path in reverse order.
ProveResult prove(const Int& n, const ProofConfig& cfg,
                  const DiscriminantTable& table);

}  // namespace pascal_ecpp
