#include "pbpo/rewrite.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "pbpo/error.hpp"

namespace pbpo {
namespace {

bool maps_equal(const GraphMorphism& f, const GraphMorphism& g) {
  return std::ranges::equal(f.node_map(), g.node_map()) && std::ranges::equal(f.edge_map(), g.edge_map());
}

std::uint64_t pair_key(Index a, Index b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

}  // namespace

ToyStep toypo_step(const ToyPoRule& rule, const GraphMorphism& m) {
  if (!m.is_injective()) throw Error(ErrorKind::not_injective, "ToyPO matches must be injective");
  auto po = pushout(Span{m, rule.rho});
  auto result = po.object;
  return {result, std::move(po)};
}

ToyStep toypb_step(const ToyPbRule& rule, const GraphMorphism& alpha) {
  if (!same_graph(alpha.cod_ptr(), rule.rho.cod_ptr()))
    throw Error(ErrorKind::typing_mismatch, "adherence does not land in the rule's type graph");
  auto pb = pullback(Cospan{alpha, rule.rho});
  auto result = pb.object;
  return {result, std::move(pb)};
}

ValidationReport validate_rule(const PbpoRule& rule) {
  ValidationReport report;
  const std::pair<const char*, const GraphMorphism*> parts[] = {
      {"l", &rule.l}, {"r", &rule.r}, {"tL", &rule.tL}, {"tK", &rule.tK}, {"lp", &rule.lp}};
  for (const auto& [name, f] : parts) report.merge(validate_morphism(*f), std::string(name) + ": ");

  bool shaped = true;
  auto shape = [&](bool ok, const char* what) {
    if (!ok) {
      report.add("shape", "", what);
      shaped = false;
    }
  };
  shape(same_graph(rule.l.dom_ptr(), rule.r.dom_ptr()), "l and r do not share K");
  shape(same_graph(rule.l.dom_ptr(), rule.tK.dom_ptr()), "l and tK do not share K");
  shape(same_graph(rule.l.cod_ptr(), rule.tL.dom_ptr()), "l does not land in the domain of tL");
  shape(same_graph(rule.tL.cod_ptr(), rule.lp.cod_ptr()), "tL and lp do not share L'");
  shape(same_graph(rule.tK.cod_ptr(), rule.lp.dom_ptr()), "tK does not land in the domain of lp");

  const GraphPtr graphs[] = {rule.L(), rule.K(), rule.R(), rule.Lp(), rule.Kp()};
  for (const auto& g : graphs)
    if (!same_lattice(g->lattice(), rule.L()->lattice())) report.add("lattice", "", "rule graphs use different lattices");

  if (!rule.tL.is_injective()) report.add("tL-not-injective", "", "context typing tL must be injective");
  if (!shaped || !report.ok()) return report;

  if (!maps_equal(compose(rule.l, rule.tL), compose(rule.tK, rule.lp))) {
    report.add("left-square-commutation", "", "tL . l differs from lp . tK");
    return report;
  }
  if (!is_pullback_square(PullbackSquare{rule.l, rule.tK, Cospan{rule.tL, rule.lp}}))
    report.add("left-square-pullback", "", "K is not the preimage of tL(L) under lp");
  return report;
}

PbpoRule complete_rule(std::string name, const GraphMorphism& tL, const GraphMorphism& lp, const RSpec& spec) {
  if (!same_graph(tL.cod_ptr(), lp.cod_ptr()))
    throw Error(ErrorKind::invalid_rule, "tL and lp must share their codomain");
  auto pre = preimage(tL, lp);
  const auto& K = *pre.graph;
  const auto& lat = K.lattice();
  auto ill = [](const std::string& msg) { return Error(ErrorKind::r_spec_ill_formed, msg); };

  // Nodes: K nodes grouped by merge classes, then fresh nodes.
  std::vector<std::string> node_target(K.node_count());
  for (Index i = 0; i < K.node_count(); ++i) node_target[i] = K.node(i).id;
  std::set<std::string> merged;
  for (const auto& mg : spec.node_merges) {
    if (mg.members.empty()) throw ill("empty node merge into '" + mg.into + "'");
    for (const auto& id : mg.members) {
      auto idx = K.find_node(id);
      if (!idx) throw ill("node merge mentions '" + id + "', which is not in K");
      if (!merged.insert(id).second) throw ill("node '" + id + "' is merged twice");
      node_target[*idx] = mg.into;
    }
  }
  LabeledGraph R(K.lattice_ptr());
  std::vector<Index> r_nodes(K.node_count());
  std::unordered_map<std::string, std::vector<Label>> class_labels;
  std::vector<std::string> class_order;
  for (Index i = 0; i < K.node_count(); ++i) {
    auto& labels = class_labels[node_target[i]];
    if (labels.empty()) class_order.push_back(node_target[i]);
    labels.push_back(K.node(i).label);
  }
  for (const auto& id : class_order) {
    Label label = lat.join(class_labels[id]);
    if (auto it = spec.node_labels.find(id); it != spec.node_labels.end()) {
      auto raised = lat.find(it->second);
      if (!raised) throw ill("unknown label '" + it->second + "' for node '" + id + "'");
      if (!lat.leq(label, *raised)) throw ill("label of node '" + id + "' would go down along r");
      label = *raised;
    }
    if (R.find_node(id)) throw ill("node id '" + id + "' used for two R nodes");
    R.add_node(id, label);
  }
  for (Index i = 0; i < K.node_count(); ++i) r_nodes[i] = R.node_index(node_target[i]);
  for (const auto& n : spec.fresh_nodes) {
    if (R.find_node(n.id)) throw ill("fresh node '" + n.id + "' clashes with an existing R node");
    auto label = n.label ? lat.find(*n.label) : std::optional<Label>(lat.top());
    if (!label) throw ill("unknown label for fresh node '" + n.id + "'");
    R.add_node(n.id, *label);
  }
  for (const auto& [id, _] : spec.node_labels)
    if (!R.find_node(id)) throw ill("relabeled node '" + id + "' is not in R");

  // Edges: same recipe; merged edges must agree on endpoints in R.
  std::vector<std::string> edge_target(K.edge_count());
  for (Index i = 0; i < K.edge_count(); ++i) edge_target[i] = K.edge(i).id;
  std::set<std::string> merged_edges;
  for (const auto& mg : spec.edge_merges) {
    if (mg.members.empty()) throw ill("empty edge merge into '" + mg.into + "'");
    for (const auto& id : mg.members) {
      auto idx = K.find_edge(id);
      if (!idx) throw ill("edge merge mentions '" + id + "', which is not in K");
      if (!merged_edges.insert(id).second) throw ill("edge '" + id + "' is merged twice");
      edge_target[*idx] = mg.into;
    }
  }
  std::vector<Index> r_edges(K.edge_count());
  std::unordered_map<std::string, Index> edge_class;
  for (Index i = 0; i < K.edge_count(); ++i) {
    const auto& e = K.edge(i);
    Index s = r_nodes[e.src], t = r_nodes[e.tgt];
    auto it = edge_class.find(edge_target[i]);
    if (it == edge_class.end()) {
      std::vector<Label> labels;
      for (Index j = 0; j < K.edge_count(); ++j)
        if (edge_target[j] == edge_target[i]) labels.push_back(K.edge(j).label);
      Label label = lat.join(labels);
      if (auto lit = spec.edge_labels.find(edge_target[i]); lit != spec.edge_labels.end()) {
        auto raised = lat.find(lit->second);
        if (!raised || !lat.leq(label, *raised)) throw ill("bad label for edge '" + edge_target[i] + "'");
        label = *raised;
      }
      if (R.find_edge(edge_target[i])) throw ill("edge id '" + edge_target[i] + "' used twice in R");
      it = edge_class.emplace(edge_target[i], R.add_edge(edge_target[i], s, t, label)).first;
    } else if (R.edge(it->second).src != s || R.edge(it->second).tgt != t) {
      throw ill("merged edges into '" + edge_target[i] + "' have different endpoints in R");
    }
    r_edges[i] = it->second;
  }
  for (const auto& e : spec.fresh_edges) {
    if (R.find_edge(e.id)) throw ill("fresh edge '" + e.id + "' clashes with an existing R edge");
    auto s = R.find_node(e.src), t = R.find_node(e.tgt);
    if (!s || !t) throw ill("fresh edge '" + e.id + "' has an endpoint outside R");
    auto label = e.label ? lat.find(*e.label) : std::optional<Label>(lat.top());
    if (!label) throw ill("unknown label for fresh edge '" + e.id + "'");
    R.add_edge(e.id, *s, *t, *label);
  }

  auto Rp = share(std::move(R));
  PbpoRule rule{std::move(name), pre.to_pattern, GraphMorphism(pre.graph, Rp, std::move(r_nodes), std::move(r_edges)),
                tL, pre.inclusion, lp};
  if (auto report = validate_rule(rule); !report.ok())
    throw Error(ErrorKind::invalid_rule, "completed rule '" + rule.name + "' is invalid: " + report.to_string());
  return rule;
}

ValidationReport verify_trace(const RewriteTrace& t) {
  ValidationReport report;
  const auto& rule = t.rule;
  auto guard = [&](const char* what, auto&& check) {
    try {
      if (!check()) report.add(what, "", "check failed");
    } catch (const Error& e) {
      report.add(what, "", e.what());
    }
  };
  guard("match-square-pullback", [&] {
    return is_pullback_square(PullbackSquare{identity(rule.L()), t.m, Cospan{rule.tL, t.alpha}});
  });
  guard("middle-square-pullback", [&] { return is_pullback_square(PullbackSquare{t.gL, t.up, Cospan{t.alpha, rule.lp}}); });
  guard("right-square-pushout", [&] { return is_pushout_square(PushoutSquare{Span{t.u, rule.r}, t.gR, t.w}); });
  guard("tK-factorization", [&] { return maps_equal(compose(t.u, t.up), rule.tK); });
  guard("u-commutes", [&] { return maps_equal(compose(t.u, t.gL), compose(rule.l, t.m)); });
  if (rule.tL.is_injective() && !t.u.is_injective()) report.add("u-not-injective", "", "u must be injective when tL is");
  return report;
}

StepResult pbpo_step(const PbpoRule& rule, const Match& match, std::size_t step_index) {
  if (!same_graph(match.typing.dom_ptr(), rule.L()) || !same_graph(match.typing.cod_ptr(), rule.Lp()) ||
      !maps_equal(match.typing, rule.tL))
    throw Error(ErrorKind::strong_match_failure, "match was made for a different context typing");
  std::optional<Match> checked;
  try {
    checked = check_strong_match(rule.tL, match.alpha);
  } catch (const Error& e) {
    throw Error(ErrorKind::strong_match_failure, e.what());
  }
  if (!checked || !same_graph(checked->m.cod_ptr(), match.m.cod_ptr()) || !maps_equal(checked->m, match.m))
    throw Error(ErrorKind::strong_match_failure, "adherence does not establish a strong match for m");

  // Deletion and duplication: G_K is the pullback of (alpha, lp).
  auto mid = pullback(Cospan{match.alpha, rule.lp});
  const auto& gL = mid.left_leg;
  const auto& up = mid.right_leg;

  // u: pull m back along gL, then identify the result with K through the
  // rule's left square (P -> K sends x to the k with l(k) = pL(x) and
  // tK(k) = up(pG(x))).
  auto along = pullback(Cospan{match.m, gL});
  const auto& P = *along.object;
  const auto& K = *rule.K();
  std::unordered_map<std::uint64_t, Index> k_nodes, k_edges;
  for (Index k = 0; k < K.node_count(); ++k) k_nodes.emplace(pair_key(rule.l.node(k), rule.tK.node(k)), k);
  for (Index k = 0; k < K.edge_count(); ++k) k_edges.emplace(pair_key(rule.l.edge(k), rule.tK.edge(k)), k);
  std::vector<Index> psi_nodes(P.node_count()), psi_edges(P.edge_count());
  auto mediator_failure = [&](const std::string& why) {
    return Error(ErrorKind::internal_mediator_failure, "rule '" + rule.name + "': " + why);
  };
  for (Index x = 0; x < P.node_count(); ++x) {
    auto it = k_nodes.find(pair_key(along.left_leg.node(x), up.node(along.right_leg.node(x))));
    if (it == k_nodes.end()) throw mediator_failure("pulled-back node has no counterpart in K");
    psi_nodes[x] = it->second;
  }
  for (Index x = 0; x < P.edge_count(); ++x) {
    auto it = k_edges.find(pair_key(along.left_leg.edge(x), up.edge(along.right_leg.edge(x))));
    if (it == k_edges.end()) throw mediator_failure("pulled-back edge has no counterpart in K");
    psi_edges[x] = it->second;
  }
  GraphMorphism psi(along.object, rule.K(), std::move(psi_nodes), std::move(psi_edges));
  if (!psi.is_isomorphism()) throw mediator_failure("pulling m back along gL does not reproduce K");
  auto u = compose(inverse(psi), along.right_leg);
  if (!maps_equal(compose(u, up), rule.tK)) throw mediator_failure("tK != up . u");
  if (rule.tL.is_injective() && !u.is_injective()) throw mediator_failure("u is not injective");

  // Identification and addition: G_R is the pushout of (u, r).
  const std::string prefix = "s" + std::to_string(step_index) + ":";
  auto po = pushout(Span{u, rule.r}, prefix);
  const auto& raw = *po.object;
  const auto& GK = *mid.object;
  const auto& GL = *match.m.cod_ptr();

  // Name G_R elements after the host element they descend from, unless two
  // of them would descend from the same one (duplication).
  auto pick_names = [&](auto count, auto&& raw_id, auto&& host_id) {
    std::vector<std::string> names(count);
    std::map<std::string, int> uses;
    for (Index i = 0; i < count; ++i) {
      names[i] = host_id(i);
      if (!names[i].empty()) ++uses[names[i]];
    }
    std::set<std::string> taken;
    for (Index i = 0; i < count; ++i)
      if (!names[i].empty() && uses[names[i]] == 1) taken.insert(names[i]);
    for (Index i = 0; i < count; ++i) {
      if (!names[i].empty() && uses[names[i]] == 1) continue;
      std::string id = raw_id(i);
      while (taken.contains(id)) id += "'";
      taken.insert(id);
      names[i] = id;
    }
    return names;
  };
  auto node_names = pick_names(
      static_cast<Index>(raw.node_count()), [&](Index i) { return raw.node(i).id; },
      [&](Index i) -> std::string {
        const auto& origin = po.node_trace.at(raw.node(i).id).front();
        if (origin.side != 0) return {};
        return GL.node(gL.node(GK.node_index(origin.id))).id;
      });
  auto edge_names = pick_names(
      static_cast<Index>(raw.edge_count()), [&](Index i) { return raw.edge(i).id; },
      [&](Index i) -> std::string {
        const auto& origin = po.edge_trace.at(raw.edge(i).id).front();
        if (origin.side != 0) return {};
        return GL.edge(gL.edge(GK.edge_index(origin.id))).id;
      });
  std::map<std::string, std::string> node_renaming, edge_renaming;
  for (Index i = 0; i < raw.node_count(); ++i) node_renaming[raw.node(i).id] = node_names[i];
  for (Index i = 0; i < raw.edge_count(); ++i) edge_renaming[raw.edge(i).id] = edge_names[i];
  auto renamed = rename(po.object, node_renaming, edge_renaming);

  RewriteTrace trace{rule,
                     step_index,
                     match.m,
                     match.alpha,
                     gL,
                     up,
                     u,
                     compose(po.left_leg, renamed.iso),
                     compose(po.right_leg, renamed.iso)};
  if (auto report = verify_trace(trace); !report.ok())
    throw mediator_failure("step diagram fails verification: " + report.to_string());
  return {renamed.graph, std::move(trace)};
}

NormalizeResult normalize(const GraphPtr& g, std::span<const PbpoRule> rules, Strategy,
                          std::size_t max_steps,
                          const std::function<void(const RewriteTrace&, const GraphPtr&)>& on_step) {
  for (const auto& rule : rules)
    if (auto report = validate_rule(rule); !report.ok())
      throw Error(ErrorKind::invalid_rule, "rule '" + rule.name + "': " + report.to_string());

  NormalizeResult result{g, {}, {}, false};
  auto first_match = [&](const GraphPtr& host) -> std::optional<std::pair<std::size_t, Match>> {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      auto matches = find_strong_matches(rules[i].tL, host);
      if (!matches.empty()) return std::make_pair(i, std::move(matches.front()));
    }
    return std::nullopt;
  };
  while (true) {
    auto next = first_match(result.graph);
    if (!next) {
      result.fixpoint = true;
      break;
    }
    if (result.steps.size() >= max_steps) break;
    auto step = pbpo_step(rules[next->first], next->second, result.steps.size());
    if (on_step) on_step(step.trace, result.graph);
    result.graph = step.result;
    result.steps.push_back(std::move(step.trace));
    result.rule_indices.push_back(next->first);
  }
  return result;
}

}  // namespace pbpo
