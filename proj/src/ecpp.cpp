#include "pascal_ecpp/ecpp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

namespace pascal_ecpp {

bool NodePriority::operator<(const NodePriority& o) const {
  if (digits != o.digits) return digits < o.digits;
  if (d_limit != o.d_limit) return d_limit < o.d_limit;
  return insert_index < o.insert_index;
}

NodePriority priority(const GraphNode& node) {
  return NodePriority{node.digits, node.d_limit, node.insert_index};
}

namespace {

std::uint32_t smooth_bound_for(const ProofConfig& cfg, long digits) {
  if (cfg.smooth_bound) return cfg.smooth_bound;
  long adaptive = 50 * digits;
  return static_cast<std::uint32_t>(std::max(adaptive, 10000L));
}

// Split an order's bounded factorization into (s', f) if it qualifies:
// s' a probable prime above the fourth-root bound, f = m/s' >= 2 fully
// factored. nullopt otherwise.
std::optional<CandidateEdge> qualify(const Int& m, FactoredInteger fac,
                                     const Int& bound) {
  Int s_prime;
  FactoredInteger f;
  f.cofactor = 1;
  if (fac.cofactor > 1) {
    if (!fac.cofactor_is_prp) return std::nullopt;
    s_prime = fac.cofactor;
    f.factors = std::move(fac.factors);
  } else if (!fac.factors.empty()) {
    auto& back = fac.factors.back();
    s_prime = back.first;
    if (--back.second == 0) fac.factors.pop_back();
    f.factors = std::move(fac.factors);
  } else {
    return std::nullopt;
  }
  if (s_prime <= bound) return std::nullopt;
  f.value = m / s_prime;
  if (f.value < 2) return std::nullopt;  // no descent from f = 1
  if (f.reassemble() != f.value) return std::nullopt;
  CandidateEdge edge;
  edge.m = m;
  edge.f = std::move(f);
  edge.s_prime = std::move(s_prime);
  return edge;
}

struct BatchItem {
  size_t record_index;
  Int d;
  Int sqrt_d;
};

// Candidates from one discriminant: Cornacchia, then both orders.
std::vector<CandidateEdge> scan_one(const BatchItem& item, const Int& s,
                                    const Int& bound, std::uint32_t b_smooth,
                                    int effort) {
  std::vector<CandidateEdge> out;
  auto uv = cornacchia(item.d, s, item.sqrt_d);
  if (!uv) return out;
  const Int& u = uv->first;
  for (int sign = 0; sign < 2; ++sign) {
    Int m = s + 1;
    if (sign == 0)
      m -= u;
    else
      m += u;
    auto edge = qualify(m, bounded_factor(m, b_smooth, effort), bound);
    if (edge) {
      edge->record_index = item.record_index;
      edge->d = item.d;
      edge->u = u;
      out.push_back(std::move(*edge));
    }
  }
  return out;
}

}  // namespace

AtkinStepResult atkin_step(GraphNode& node, const ProofConfig& cfg,
                           const DiscriminantTable& table,
                           const std::vector<size_t>& view) {
  if (node.s <= cfg.small_prime_threshold)
    throw std::invalid_argument("atkin_step: node below the trial-division threshold");

  const Int bound = fourth_root_bound(node.s);
  const std::uint32_t b_smooth = smooth_bound_for(cfg, node.digits);
  constexpr size_t kBatch = 32;

  AtkinStepResult result{AtkinStepResult::Kind::Exhausted, {}, Int(0)};
  try {
    for (;;) {
      // Serial pass: pick the next window of discriminants and resolve their
      // square roots through the node's cache (the cache is single-writer).
      std::vector<BatchItem> batch;
      while (batch.size() < kBatch) {
        auto idx = next_d(table, view, node.cursor, node.s, node.d_limit);
        if (!idx) break;
        const DiscriminantRecord& rec = table.at(*idx);
        BatchItem item;
        item.record_index = *idx;
        item.d = rec.d;
        item.sqrt_d = sqrt_of_discriminant(rec.d, rec.abs_factors, node.s,
                                           node.cache);
        batch.push_back(std::move(item));
      }
      if (batch.empty()) break;

      // Factor the orders of the whole window, in parallel when asked to.
      std::vector<std::vector<CandidateEdge>> found(batch.size());
      const int jobs = std::max(1, cfg.jobs);
      if (jobs == 1 || batch.size() == 1) {
        for (size_t i = 0; i < batch.size(); ++i)
          found[i] = scan_one(batch[i], node.s, bound, b_smooth,
                              cfg.factor_effort);
      } else {
        std::vector<std::thread> workers;
        const size_t nworkers = std::min<size_t>(jobs, batch.size());
        for (size_t w = 0; w < nworkers; ++w) {
          workers.emplace_back([&, w]() {
            for (size_t i = w; i < batch.size(); i += nworkers)
              found[i] = scan_one(batch[i], node.s, bound, b_smooth,
                                  cfg.factor_effort);
          });
        }
        for (auto& t : workers) t.join();
      }
      for (auto& edges : found)
        for (auto& e : edges) result.candidates.push_back(std::move(e));

      if (result.candidates.size() >=
          static_cast<size_t>(cfg.max_candidates_per_step))
        break;
    }
  } catch (const composite_modulus& cm) {
    return AtkinStepResult{AtkinStepResult::Kind::Composite, {}, cm.witness};
  } catch (const factor_found& ff) {
    return AtkinStepResult{AtkinStepResult::Kind::Composite, {}, ff.factor};
  }

  if (!result.candidates.empty())
    result.kind = AtkinStepResult::Kind::Candidates;
  return result;
}

BuildOutcome build_curves_and_prove(const CandidateEdge& edge,
                                    const Int& s_parent,
                                    const DiscriminantRecord& rec,
                                    const ProofConfig& cfg, Rng& rng) {
  BuildOutcome out{BuildOutcome::Kind::No, {}, Int(0)};
  try {
    auto root = hilbert_root(s_parent, rec, rng);
    if (!root) return out;  // abandoned: the class polynomial would not split
    CurvePair pair = curve_pair(s_parent, *root, edge.u, rng);
    for (int which = 0; which < 2; ++which) {
      const CurveSpec& curve = which == 0 ? pair.curve : pair.twist;
      ProofOutcome po =
          proof_step(curve, edge.m, edge.f.value, rng, cfg.retry_limit);
      switch (po.kind) {
        case ProofOutcome::Kind::Yes: {
          CertStep st;
          st.s = edge.s_prime;
          st.a = curve.a();
          st.b = curve.b();
          st.x = po.witness.x();
          st.y = po.witness.y();
          st.f = edge.f;
          out.kind = BuildOutcome::Kind::Step;
          out.step = std::move(st);
          return out;
        }
        case ProofOutcome::Kind::Composite:
          out.kind = BuildOutcome::Kind::Composite;
          out.witness = po.factor;
          return out;
        case ProofOutcome::Kind::No:
        case ProofOutcome::Kind::RetryLimit:
          break;  // try the twist, then abandon
      }
    }
  } catch (const composite_modulus& cm) {
    out.kind = BuildOutcome::Kind::Composite;
    out.witness = cm.witness;
  } catch (const factor_found& ff) {
    out.kind = BuildOutcome::Kind::Composite;
    out.witness = ff.factor;
  } catch (const degenerate_j&) {
    out.kind = BuildOutcome::Kind::No;  // cannot use this root; abandon
  }
  return out;
}

namespace {

Certificate assemble(const Int& n, const std::vector<GraphNode>& nodes,
                     long base_id) {
  Certificate cert;
  cert.n = n;
  long cur = base_id;
  while (nodes[cur].parent >= 0) {
    cert.steps.push_back(nodes[cur].parent_step);
    cur = nodes[cur].parent;
  }
  for (size_t i = 0; i < cert.steps.size(); ++i)
    cert.steps[i].index = static_cast<int>(i) + 1;
  return cert;
}

}  // namespace

ProveResult prove(const Int& n, const ProofConfig& cfg,
                  const DiscriminantTable& table) {
  if (cfg.small_prime_threshold < (Int(1) << 20))
    throw std::invalid_argument("prove: small_prime_threshold must be >= 2^20");
  if (n <= cfg.small_prime_threshold)
    throw std::invalid_argument("prove: n must exceed small_prime_threshold");

  ProveResult result;
  Rng rng(cfg.seed);
  auto log = [&cfg](const std::string& s) {
    if (cfg.log) cfg.log(s);
  };

  if (auto wit = prp_witness(n, cfg.prp_bases, rng)) {
    result.status = ProveResult::Status::Composite;
    result.witness = *wit;
    return result;
  }

  const std::vector<size_t> view =
      table.admissible(cfg.discriminant_prime_limit);
  if (view.empty())
    throw std::runtime_error("prove: discriminant table is empty after the S filter");
  Int cap = -table.at(view.back()).d;
  if (cfg.discriminant_limit > 0 && cfg.discriminant_limit < cap)
    cap = cfg.discriminant_limit;

  std::vector<GraphNode> nodes;
  std::map<Int, long> node_by_s;
  std::map<NodePriority, long> open;

  auto insert_node = [&](Int s, int depth, long parent, CertStep step) {
    GraphNode node;
    node.s = std::move(s);
    node.digits = decimal_digits(node.s);
    node.depth = depth;
    node.d_limit = std::min(cfg.initial_d_limit, cap);
    node.insert_index = static_cast<long>(nodes.size());
    node.parent = parent;
    node.parent_step = std::move(step);
    node_by_s.emplace(node.s, node.insert_index);
    open.emplace(priority(node), node.insert_index);
    nodes.push_back(std::move(node));
  };

  insert_node(n, 0, -1, CertStep{});

  while (!open.empty()) {
    const NodePriority key = open.begin()->first;
    const long id = open.begin()->second;
    GraphNode& node = nodes[id];

    if (node.s <= cfg.small_prime_threshold) {
      if (trial_division_prime(node.s)) {
        log("node " + std::to_string(id) + " digits=" +
            std::to_string(node.digits) + " proved by trial division");
        result.status = ProveResult::Status::Proved;
        result.cert = assemble(n, nodes, id);
        return result;
      }
      // A probable prime that was actually composite; drop the node.
      log("node " + std::to_string(id) + " failed trial division");
      open.erase(open.begin());
      node.closed = true;
      continue;
    }

    ++result.nodes_expanded;
    AtkinStepResult step = atkin_step(node, cfg, table, view);

    if (step.kind == AtkinStepResult::Kind::Composite) {
      if (node.depth == 0) {
        result.status = ProveResult::Status::Composite;
        result.witness = step.witness;
        return result;
      }
      log("node " + std::to_string(id) + " exposed composite; dropped");
      open.erase(open.begin());
      node.closed = true;
      continue;
    }

    if (step.kind == AtkinStepResult::Kind::Exhausted) {
      open.erase(open.begin());
      if (node.d_limit >= cap) {
        log("node " + std::to_string(id) + " digits=" +
            std::to_string(node.digits) + " exhausted at |D| <= " +
            cap.get_str());
        node.closed = true;
      } else {
        node.d_limit = std::min(Int(node.d_limit * 4), cap);
        open.emplace(priority(node), id);
        log("node " + std::to_string(id) + " digits=" +
            std::to_string(node.digits) + " raised D limit to " +
            node.d_limit.get_str());
      }
      continue;
    }

    // insert_node grows the vector; keep what the loop needs by value.
    const Int node_s = node.s;
    const int node_depth = node.depth;
    const long node_digits = node.digits;
    bool node_composite = false;
    for (const CandidateEdge& edge : step.candidates) {
      if (node_by_s.count(edge.s_prime)) continue;  // already a node
      BuildOutcome built = build_curves_and_prove(
          edge, node_s, table.at(edge.record_index), cfg, rng);
      if (built.kind == BuildOutcome::Kind::Composite) {
        if (node_depth == 0) {
          result.status = ProveResult::Status::Composite;
          result.witness = built.witness;
          return result;
        }
        node_composite = true;
        break;
      }
      if (built.kind == BuildOutcome::Kind::No) {
        log("node " + std::to_string(id) + " D=" + edge.d.get_str() +
            " abandoned (both curves said no)");
        continue;
      }
      log("node " + std::to_string(id) + " digits=" +
          std::to_string(node_digits) + " D=" + edge.d.get_str() +
          " -> child digits=" + std::to_string(decimal_digits(edge.s_prime)));
      insert_node(edge.s_prime, node_depth + 1, id, std::move(built.step));
    }
    if (node_composite) {
      log("node " + std::to_string(id) + " exposed composite; dropped");
      open.erase(key);
      nodes[id].closed = true;
      continue;
    }
    // Node stays open at the same priority; its cursor has advanced.
  }

  result.status = ProveResult::Status::Stuck;
  return result;
}

}  // namespace pascal_ecpp
