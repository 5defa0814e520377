#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pbpo/graph.hpp"
#include "pbpo/limits.hpp"
#include "pbpo/matching.hpp"

namespace pbpo {

// ---------------------------------------------------------------------------
// Pushout-only and pullback-only engines

/// rho : L -> R. Rewriting glues R into the host along an injective match.
struct ToyPoRule {
  GraphMorphism rho;
};

/// rho : R' -> L' (read right to left). Rewriting pulls the host's typing
/// back along rho, which can delete and duplicate elements.
struct ToyPbRule {
  GraphMorphism rho;
};

struct ToyStep {
  GraphPtr result;
  LimitResult square;  // legs i_G, i_R (pushout) or the two projections (pullback)
};

/// Throws ErrorKind::not_injective unless m is injective.
ToyStep toypo_step(const ToyPoRule& rule, const GraphMorphism& m);
/// Throws ErrorKind::typing_mismatch unless cod(alpha) = cod(rho).
ToyStep toypb_step(const ToyPbRule& rule, const GraphMorphism& alpha);

// ---------------------------------------------------------------------------
// PBPO+

/// The rule diagram
///
///   L <-l-- K --r--> R
///   |tL     |tK
///   v       v
///   L' <-lp- K'
///
/// with tL injective and the left square a pullback (K is the part of K'
/// lying over tL(L)).
struct PbpoRule {
  std::string name;
  GraphMorphism l;   // K -> L
  GraphMorphism r;   // K -> R
  GraphMorphism tL;  // L -> L'
  GraphMorphism tK;  // K -> K'
  GraphMorphism lp;  // K' -> L'

  const GraphPtr& L() const { return l.cod_ptr(); }
  const GraphPtr& K() const { return l.dom_ptr(); }
  const GraphPtr& R() const { return r.cod_ptr(); }
  const GraphPtr& Lp() const { return tL.cod_ptr(); }
  const GraphPtr& Kp() const { return tK.cod_ptr(); }
};

/// Morphism validity, shape, shared lattice, injective tL, and that the left
/// square commutes and is a pullback.
ValidationReport validate_rule(const PbpoRule& rule);

/// How r : K -> R is built from the completed interface K: K elements are
/// identified by merge classes, fresh elements are added, and node or edge
/// labels may be raised.
struct RSpec {
  struct Merge {
    std::string into;                  // id of the merged element in R
    std::vector<std::string> members;  // K ids
  };
  std::vector<Merge> node_merges;
  std::vector<Merge> edge_merges;
  std::vector<GraphRecord::NodeRecord> fresh_nodes;
  std::vector<GraphRecord::EdgeRecord> fresh_edges;  // endpoints are R node ids
  std::map<std::string, std::string> node_labels;    // R node id -> label, must not lower the join
  std::map<std::string, std::string> edge_labels;
};

/// K := preimage of tL under lp, with the induced l and tK; R from r_spec.
/// Throws ErrorKind::r_spec_ill_formed, ErrorKind::not_injective, or
/// ErrorKind::invalid_rule.
PbpoRule complete_rule(std::string name, const GraphMorphism& tL, const GraphMorphism& lp, const RSpec& r_spec);

/// The full diagram of one step.
///
///   K ---------r--------> R
///   :u                    |w
///   v                     v
///   L --m--> G_L <-gL-- G_K --gR--> G_R
///   ||        |alpha     |up
///   L --tL--> L' <--lp-- K'
struct RewriteTrace {
  PbpoRule rule;
  std::size_t step_index;
  GraphMorphism m;      // L -> G_L
  GraphMorphism alpha;  // G_L -> L'
  GraphMorphism gL;     // G_K -> G_L
  GraphMorphism up;     // G_K -> K'
  GraphMorphism u;      // K -> G_K
  GraphMorphism gR;     // G_K -> G_R
  GraphMorphism w;      // R -> G_R

  const GraphPtr& GL() const { return m.cod_ptr(); }
  const GraphPtr& GK() const { return gL.dom_ptr(); }
  const GraphPtr& GR() const { return gR.cod_ptr(); }
};

/// Re-checks every square of the trace: the match square and the middle
/// square are pullbacks, the right square is a pushout, tK = up . u, and u
/// is injective when tL is.
ValidationReport verify_trace(const RewriteTrace& trace);

struct StepResult {
  GraphPtr result;
  RewriteTrace trace;
};

/// One PBPO+ step at a strong match.
///
/// G_K is the pullback of (alpha, lp). u is obtained by pulling m back along
/// gL and identifying the result with K through the rule's left square; the
/// step fails with ErrorKind::internal_mediator_failure if that does not
/// give tK = up . u. G_R is the pushout of (u, r). Elements of G_R keep the
/// host id they descend from when that is unambiguous; elements created by
/// r are prefixed "s<step_index>:".
/// Throws ErrorKind::strong_match_failure if match is not a strong match
/// for rule.tL.
StepResult pbpo_step(const PbpoRule& rule, const Match& match, std::size_t step_index = 0);

enum class Strategy {
  /// First rule in list order that has a match, at its first match.
  first_rule_first_match,
};

struct NormalizeResult {
  GraphPtr graph;
  std::vector<RewriteTrace> steps;
  std::vector<std::size_t> rule_indices;  // which rule fired at each step
  bool fixpoint = false;
};

/// Rewrites until no rule matches or max_steps steps were taken. on_step,
/// when given, sees every step as it happens.
NormalizeResult normalize(const GraphPtr& g, std::span<const PbpoRule> rules,
                          Strategy strategy = Strategy::first_rule_first_match, std::size_t max_steps = 10000,
                          const std::function<void(const RewriteTrace&, const GraphPtr& before)>& on_step = {});

}  // namespace pbpo
