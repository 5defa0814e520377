#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace oracle {

using pbpo::GraphMorphism;
using pbpo::GraphPtr;
using pbpo::Index;
using pbpo::LabeledGraph;

// ---------------------------------------------------------------------------
// Orders

Order::Order(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& pairs)
    : names_(std::move(names)), leq_(names_.size(), std::vector<char>(names_.size(), 0)) {
  for (int i = 0; i < size(); ++i) leq_[i][i] = 1;
  for (const auto& [a, b] : pairs) leq_[index(a)][index(b)] = 1;
  for (int k = 0; k < size(); ++k)
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (leq_[i][k] && leq_[k][j]) leq_[i][j] = 1;
}

int Order::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  throw std::out_of_range("oracle order: unknown element " + name);
}

int Order::meet(int a, int b) const {
  int best = -1;
  for (int c = 0; c < size(); ++c) {
    if (!le(c, a) || !le(c, b)) continue;
    if (best < 0 || le(best, c)) best = c;
  }
  // A genuine meet is above every other lower bound.
  for (int c = 0; c < size(); ++c)
    if (best >= 0 && le(c, a) && le(c, b) && !le(c, best)) return -1;
  return best;
}

int Order::join(int a, int b) const {
  int best = -1;
  for (int c = 0; c < size(); ++c) {
    if (!le(a, c) || !le(b, c)) continue;
    if (best < 0 || le(c, best)) best = c;
  }
  for (int c = 0; c < size(); ++c)
    if (best >= 0 && le(a, c) && le(b, c) && !le(best, c)) return -1;
  return best;
}

Order bdd_order(const std::vector<std::string>& vars) {
  std::vector<std::string> names = vars;
  for (auto s : {"0", "1", "VAR", "BOOL", "TOP", "BOT"}) names.emplace_back(s);
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"BOT", "0"}, {"BOT", "1"}, {"0", "BOOL"}, {"1", "BOOL"}, {"BOOL", "TOP"}, {"VAR", "TOP"}, {"BOT", "VAR"}};
  for (const auto& v : vars) {
    pairs.emplace_back("BOT", v);
    pairs.emplace_back(v, "VAR");
  }
  return Order(names, pairs);
}

Order diamond_order() { return Order({"BOT", "a", "b", "TOP"}, {{"BOT", "a"}, {"BOT", "b"}, {"a", "TOP"}, {"b", "TOP"}}); }

// ---------------------------------------------------------------------------
// Raw graphs

RawGraph raw(const LabeledGraph& g, const Order& order) {
  RawGraph r;
  for (const auto& n : g.nodes()) {
    r.node_ids.push_back(n.id);
    r.node_labels.push_back(order.index(g.lattice().element(n.label)));
  }
  for (const auto& e : g.edges()) {
    r.edge_ids.push_back(e.id);
    r.edges.push_back({static_cast<int>(e.src), static_cast<int>(e.tgt), order.index(g.lattice().element(e.label))});
  }
  return r;
}

RawHom raw(const GraphMorphism& f) {
  RawHom h;
  for (auto v : f.node_map()) h.nodes.push_back(static_cast<int>(v));
  for (auto e : f.edge_map()) h.edges.push_back(static_cast<int>(e));
  return h;
}

std::vector<RawHom> naive_homs(const RawGraph& g, const RawGraph& h, const Order& order, bool injective,
                               std::size_t limit) {
  std::vector<RawHom> out;
  const int n = g.nodes(), k = h.nodes();
  std::vector<int> map(n, 0);
  std::vector<char> used(k, 0);
  // Every node map whose labels fit, then every edge choice over it.
  auto emit = [&] {
    std::vector<std::vector<int>> choices(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
      const auto& ge = g.edges[e];
      for (int f = 0; f < h.edge_count(); ++f) {
        const auto& he = h.edges[f];
        if (he.src == map[ge.src] && he.tgt == map[ge.tgt] && order.le(ge.label, he.label)) choices[e].push_back(f);
      }
      if (choices[e].empty()) return;
    }
    std::vector<int> pick(g.edge_count(), 0);
    while (out.size() <= limit) {
      RawHom hom{map, {}};
      for (int e = 0; e < g.edge_count(); ++e) hom.edges.push_back(choices[e][pick[e]]);
      if (!injective || std::set<int>(hom.edges.begin(), hom.edges.end()).size() == hom.edges.size())
        out.push_back(hom);
      int e = g.edge_count() - 1;
      while (e >= 0 && ++pick[e] == static_cast<int>(choices[e].size())) pick[e--] = 0;
      if (e < 0) break;
    }
  };
  auto place = [&](auto&& self, int v) -> void {
    if (out.size() > limit) return;
    if (v == n) {
      emit();
      return;
    }
    for (int w = 0; w < k; ++w) {
      if (!order.le(g.node_labels[v], h.node_labels[w]) || (injective && used[w])) continue;
      map[v] = w;
      // Give up early when an edge between placed nodes has no image.
      bool edges_ok = true;
      for (const auto& ge : g.edges) {
        if (std::max(ge.src, ge.tgt) != v) continue;
        bool found = false;
        for (const auto& he : h.edges)
          found = found || (he.src == map[ge.src] && he.tgt == map[ge.tgt] && order.le(ge.label, he.label));
        edges_ok = edges_ok && found;
      }
      if (!edges_ok) continue;
      used[w] = 1;
      self(self, v + 1);
      used[w] = 0;
    }
  };
  place(place, 0);
  return out;
}

RawHom compose(const RawHom& f, const RawHom& g) {
  RawHom h;
  for (int v : f.nodes) h.nodes.push_back(g.nodes[v]);
  for (int e : f.edges) h.edges.push_back(g.edges[e]);
  return h;
}

bool oracle_isomorphic(const RawGraph& a, const RawGraph& b) {
  if (a.nodes() != b.nodes() || a.edge_count() != b.edge_count()) return false;
  const int n = a.nodes();
  // Edge multiplicities per (src, tgt, label).
  auto counts = [](const RawGraph& g) {
    std::map<std::tuple<int, int, int>, int> c;
    for (const auto& e : g.edges) ++c[{e.src, e.tgt, e.label}];
    return c;
  };
  auto ca = counts(a), cb = counts(b);
  auto degree = [](const RawGraph& g) {
    std::vector<std::pair<int, int>> d(g.nodes());
    for (const auto& e : g.edges) {
      ++d[e.src].first;
      ++d[e.tgt].second;
    }
    return d;
  };
  auto da = degree(a), db = degree(b);
  std::vector<std::set<int>> labels_a(n), labels_b(n);
  std::vector<int> map(n, -1), used(n, 0);
  auto multiplicity = [](const std::map<std::tuple<int, int, int>, int>& c, int s, int t) {
    std::map<int, int> out;
    for (auto it = c.lower_bound({s, t, -1}); it != c.end() && std::get<0>(it->first) == s && std::get<1>(it->first) == t;
         ++it)
      out[std::get<2>(it->first)] = it->second;
    return out;
  };
  std::function<bool(int)> extend = [&](int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || a.node_labels[v] != b.node_labels[w] || da[v] != db[w]) continue;
      bool ok = true;
      for (int u = 0; u <= v && ok; ++u) {
        const int mu = u == v ? w : map[u];
        ok = multiplicity(ca, v, u) == multiplicity(cb, w, mu) && multiplicity(ca, u, v) == multiplicity(cb, mu, w);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      if (extend(v + 1)) return true;
      used[w] = 0;
      map[v] = -1;
    }
    return false;
  };
  return extend(0);
}

RawGraph pair_construction(const RawGraph& B, const RawGraph& C, const RawHom& f, const RawHom& g,
                           const Order& order) {
  RawGraph P;
  std::map<std::pair<int, int>, int> index;
  for (int b = 0; b < B.nodes(); ++b)
    for (int c = 0; c < C.nodes(); ++c)
      if (f.nodes[b] == g.nodes[c]) {
        index[{b, c}] = P.nodes();
        P.node_ids.push_back(B.node_ids[b] + "|" + C.node_ids[c]);
        P.node_labels.push_back(order.meet(B.node_labels[b], C.node_labels[c]));
      }
  for (int b = 0; b < B.edge_count(); ++b)
    for (int c = 0; c < C.edge_count(); ++c)
      if (f.edges[b] == g.edges[c]) {
        const auto& eb = B.edges[b];
        const auto& ec = C.edges[c];
        P.edge_ids.push_back(B.edge_ids[b] + "|" + C.edge_ids[c]);
        P.edges.push_back({index.at({eb.src, ec.src}), index.at({eb.tgt, ec.tgt}), order.meet(eb.label, ec.label)});
      }
  return P;
}

namespace {

// Number of homomorphisms g -> h whose node and edge images pass the
// filters, counting no further than `stop`.
int count_filtered(const RawGraph& g, const RawGraph& h, const Order& order,
                   const std::function<bool(int, int)>& node_ok, const std::function<bool(int, int)>& edge_ok,
                   int stop) {
  const int n = g.nodes();
  std::vector<int> map(n, 0);
  int found = 0;
  auto edges_fit = [&]() -> long {
    long ways = 1;
    for (int e = 0; e < g.edge_count() && ways; ++e) {
      const auto& ge = g.edges[e];
      long options = 0;
      for (int f = 0; f < h.edge_count(); ++f) {
        const auto& he = h.edges[f];
        options += he.src == map[ge.src] && he.tgt == map[ge.tgt] && order.le(ge.label, he.label) && edge_ok(e, f);
      }
      ways *= options;
      if (ways > stop) ways = stop;
    }
    return ways;
  };
  auto place = [&](auto&& self, int v) -> void {
    if (found >= stop) return;
    if (v == n) {
      found += static_cast<int>(edges_fit());
      return;
    }
    for (int w = 0; w < h.nodes() && found < stop; ++w) {
      if (!order.le(g.node_labels[v], h.node_labels[w]) || !node_ok(v, w)) continue;
      map[v] = w;
      self(self, v + 1);
    }
  };
  place(place, 0);
  return std::min(found, stop);
}

}  // namespace

int pullback_failures(const RawGraph& P, const RawHom& p1, const RawHom& p2, const RawGraph& B, const RawGraph& C,
                      const RawHom& f, const RawHom& g, const RawGraph& Q, const Order& order, std::size_t& pairs,
                      std::size_t budget) {
  const auto to_b = naive_homs(Q, B, order, false, budget);
  const auto to_c = naive_homs(Q, C, order, false, budget);
  if (to_b.size() > budget || to_c.size() > budget) return -1;
  std::map<RawHom, std::vector<const RawHom*>> by_image;
  for (const auto& b : to_c) by_image[compose(b, g)].push_back(&b);
  std::size_t examined = 0;
  for (const auto& a : to_b) {
    auto it = by_image.find(compose(a, f));
    if (it != by_image.end()) examined += it->second.size();
  }
  if (examined > budget) return -1;
  int failures = 0;
  for (const auto& a : to_b) {
    auto it = by_image.find(compose(a, f));
    if (it == by_image.end()) continue;
    for (const RawHom* b : it->second) {
      ++pairs;
      const int mediators = count_filtered(
          Q, P, order, [&](int v, int w) { return p1.nodes[w] == a.nodes[v] && p2.nodes[w] == b->nodes[v]; },
          [&](int e, int k) { return p1.edges[k] == a.edges[e] && p2.edges[k] == b->edges[e]; }, 2);
      failures += mediators != 1;
    }
  }
  return failures;
}

int pushout_failures(const RawGraph& P, const RawHom& i, const RawHom& j, const RawGraph& B, const RawGraph& C,
                     const RawHom& a, const RawHom& b, const RawGraph& Q, const Order& order, std::size_t& pairs,
                     std::size_t budget) {
  const auto from_b = naive_homs(B, Q, order, false, budget);
  const auto from_c = naive_homs(C, Q, order, false, budget);
  if (from_b.size() > budget || from_c.size() > budget) return -1;
  std::map<RawHom, std::vector<const RawHom*>> by_image;
  for (const auto& g : from_c) by_image[compose(b, g)].push_back(&g);
  std::size_t examined = 0;
  for (const auto& f : from_b) {
    auto it = by_image.find(compose(a, f));
    if (it != by_image.end()) examined += it->second.size();
  }
  if (examined > budget) return -1;
  int failures = 0;
  for (const auto& f : from_b) {
    auto it = by_image.find(compose(a, f));
    if (it == by_image.end()) continue;
    for (const RawHom* g : it->second) {
      ++pairs;
      // h must send i(x) to f(x) and j(y) to g(y).
      auto node_ok = [&](int w, int q) {
        for (int x = 0; x < B.nodes(); ++x)
          if (i.nodes[x] == w && f.nodes[x] != q) return false;
        for (int y = 0; y < C.nodes(); ++y)
          if (j.nodes[y] == w && g->nodes[y] != q) return false;
        return true;
      };
      auto edge_ok = [&](int e, int q) {
        for (int x = 0; x < B.edge_count(); ++x)
          if (i.edges[x] == e && f.edges[x] != q) return false;
        for (int y = 0; y < C.edge_count(); ++y)
          if (j.edges[y] == e && g->edges[y] != q) return false;
        return true;
      };
      failures += count_filtered(P, Q, order, node_ok, edge_ok, 2) != 1;
    }
  }
  return failures;
}

bool is_bipartite(int nodes, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(nodes);
  for (auto [s, t] : edges) {
    if (s == t) return false;
    adj[s].push_back(t);
    adj[t].push_back(s);
  }
  std::vector<int> colour(nodes, -1);
  for (int start = 0; start < nodes; ++start) {
    if (colour[start] >= 0) continue;
    colour[start] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          q.push(w);
        } else if (colour[w] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// DOT

namespace {

struct Token {
  enum Kind { id, punct, arrow, end } kind;
  std::string text;
};

std::vector<Token> lex(const std::string& s, std::string& error) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      std::string text;
      ++i;
      while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\' && i + 1 < s.size()) text += s[i++];
        text += s[i++];
      }
      if (i == s.size()) {
        error = "unterminated string";
        return {};
      }
      ++i;
      out.push_back({Token::id, text});
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-') {
      if (c == '-' && i + 1 < s.size() && (s[i + 1] == '>' || s[i + 1] == '-')) {
        out.push_back({Token::arrow, s.substr(i, 2)});
        i += 2;
        continue;
      }
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '.' ||
                              (s[j] == '-' && j == i)))
        ++j;
      out.push_back({Token::id, s.substr(i, j - i)});
      i = j;
    } else if (std::string("{}[];,=:").find(c) != std::string::npos) {
      out.push_back({Token::punct, std::string(1, c)});
      ++i;
    } else {
      error = std::string("unexpected character '") + c + "'";
      return {};
    }
  }
  out.push_back({Token::end, ""});
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct DotParser {
  std::vector<Token> t;
  std::size_t p = 0;
  DotSummary& out;

  const Token& peek() const { return t[p]; }
  bool is(const char* punct) const { return t[p].kind == Token::punct && t[p].text == punct; }
  bool keyword(const char* kw) const { return t[p].kind == Token::id && lower(t[p].text) == kw; }
  void expect(const char* punct) {
    if (!is(punct)) throw std::runtime_error(std::string("expected '") + punct + "' near '" + t[p].text + "'");
    ++p;
  }
  std::string id() {
    if (t[p].kind != Token::id) throw std::runtime_error("expected an identifier near '" + t[p].text + "'");
    return t[p++].text;
  }

  void graph() {
    if (keyword("strict")) ++p;
    if (keyword("digraph")) {
      out.directed = true;
    } else if (!keyword("graph")) {
      throw std::runtime_error("expected graph or digraph");
    }
    ++p;
    if (peek().kind == Token::id) ++p;
    expect("{");
    statements();
    expect("}");
    if (peek().kind != Token::end) throw std::runtime_error("trailing input after graph");
  }

  void statements() {
    while (!is("}") && peek().kind != Token::end) {
      statement();
      if (is(";")) ++p;
    }
  }

  std::map<std::string, std::string> attr_lists() {
    std::map<std::string, std::string> attrs;
    while (is("[")) {
      ++p;
      while (!is("]")) {
        auto k = id();
        expect("=");
        attrs[k] = id();
        if (is(";") || is(",")) ++p;
      }
      ++p;
    }
    return attrs;
  }

  void node_id() {
    id();
    if (is(":")) {
      ++p;
      id();
      if (is(":")) {
        ++p;
        id();
      }
    }
  }

  void subgraph() {
    if (keyword("subgraph")) {
      ++p;
      if (peek().kind == Token::id) {
        if (peek().text.rfind("cluster", 0) == 0) ++out.clusters;
        ++p;
      }
    }
    expect("{");
    statements();
    expect("}");
  }

  void statement() {
    if (keyword("graph") || keyword("node") || keyword("edge")) {
      ++p;
      if (!is("[")) throw std::runtime_error("attribute statement without attributes");
      attr_lists();
      return;
    }
    const bool sub = keyword("subgraph") || is("{");
    if (sub) {
      subgraph();
    } else {
      id();
      if (is("=")) {
        ++p;
        id();
        return;
      }
      --p;
      node_id();
    }
    if (peek().kind == Token::arrow) {
      while (peek().kind == Token::arrow) {
        if ((peek().text == "->") != out.directed) throw std::runtime_error("edge operator does not fit graph kind");
        ++p;
        if (keyword("subgraph") || is("{"))
          subgraph();
        else
          node_id();
      }
      auto attrs = attr_lists();
      ++out.edge_statements;
      if (attrs.contains("style") && attrs["style"] == "dashed") ++out.dashed_edges;
      return;
    }
    if (!sub) {
      attr_lists();
      ++out.node_statements;
    }
  }
};

}  // namespace

DotSummary parse_dot(const std::string& text) {
  DotSummary summary;
  auto tokens = lex(text, summary.error);
  if (!summary.error.empty()) return summary;
  try {
    DotParser parser{tokens, 0, summary};
    parser.graph();
    summary.ok = true;
  } catch (const std::exception& e) {
    summary.error = e.what();
  }
  return summary;
}

// ---------------------------------------------------------------------------
// BDD checks

namespace {

bool is_bool(const std::string& s) { return s == "0" || s == "1"; }
bool is_var(const std::string& s) {
  return !is_bool(s) && s != "VAR" && s != "BOOL" && s != "TOP" && s != "BOT";
}

struct Children {
  int lo = -1, hi = -1;
};

std::vector<Children> children(const LabeledGraph& g) {
  std::vector<Children> out(g.node_count());
  for (const auto& e : g.edges()) {
    const auto& l = g.lattice().element(e.label);
    if (l == "0") out[e.src].lo = static_cast<int>(e.tgt);
    if (l == "1") out[e.src].hi = static_cast<int>(e.tgt);
  }
  return out;
}

}  // namespace

bool oracle_valid_bdd(const LabeledGraph& g, std::string* why) {
  auto bad = [&](std::string reason) {
    if (why) *why = std::move(reason);
    return false;
  };
  const auto& lat = g.lattice();
  const int n = static_cast<int>(g.node_count());
  std::vector<int> indeg(n, 0), zeros(n, 0), ones(n, 0), outdeg(n, 0);
  for (const auto& e : g.edges()) {
    const auto& l = lat.element(e.label);
    if (!is_bool(l)) return bad("edge " + e.id + " labeled " + l);
    ++indeg[e.tgt];
    ++outdeg[e.src];
    (l == "0" ? zeros : ones)[e.src]++;
  }
  if (std::count(indeg.begin(), indeg.end(), 0) != 1) return bad("not a single root");
  for (int v = 0; v < n; ++v) {
    const auto& l = lat.element(g.node(v).label);
    if (outdeg[v] == 0) {
      if (!is_bool(l)) return bad("leaf " + g.node(v).id + " labeled " + l);
    } else {
      if (!is_var(l)) return bad("internal node " + g.node(v).id + " labeled " + l);
      if (outdeg[v] != 2 || zeros[v] != 1 || ones[v] != 1) return bad("node " + g.node(v).id + " out-degree");
    }
  }
  // Path walk with the variables seen so far; a revisit on the stack is a cycle.
  auto kids = children(g);
  std::vector<int> on_stack(n, 0);
  std::function<bool(int, std::set<std::string>&)> walk = [&](int v, std::set<std::string>& seen) -> bool {
    if (on_stack[v]) return bad("cycle");
    const auto& l = lat.element(g.node(v).label);
    if (is_var(l) && !seen.insert(l).second) return bad("variable " + l + " repeated");
    on_stack[v] = 1;
    bool ok = true;
    for (int c : {kids[v].lo, kids[v].hi})
      if (ok && c >= 0) ok = walk(c, seen);
    on_stack[v] = 0;
    if (is_var(l)) seen.erase(l);
    return ok;
  };
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) {
      std::set<std::string> seen;
      if (!walk(v, seen)) return false;
    }
  return true;
}

bool oracle_reduced(const LabeledGraph& g) {
  auto kids = children(g);
  std::map<int, std::string> memo;
  std::function<std::string(int)> shape = [&](int v) -> std::string {
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    std::string s = g.lattice().element(g.node(v).label);
    if (kids[v].lo >= 0) s += "(" + shape(kids[v].lo) + "," + shape(kids[v].hi) + ")";
    return memo[v] = s;
  };
  std::set<std::string> seen;
  for (int v = 0; v < static_cast<int>(g.node_count()); ++v) {
    if (kids[v].lo >= 0 && kids[v].lo == kids[v].hi) return false;
    if (!seen.insert(shape(v)).second) return false;
  }
  return true;
}

bool oracle_eval(const LabeledGraph& g, const std::vector<std::string>& vars, std::size_t assignment) {
  auto kids = children(g);
  std::vector<int> indeg(g.node_count(), 0);
  for (const auto& e : g.edges()) ++indeg[e.tgt];
  int v = static_cast<int>(std::find(indeg.begin(), indeg.end(), 0) - indeg.begin());
  while (kids[v].lo >= 0) {
    const auto& l = g.lattice().element(g.node(v).label);
    const std::size_t pos = std::find(vars.begin(), vars.end(), l) - vars.begin();
    const bool bit = (assignment >> (vars.size() - 1 - pos)) & 1;
    v = bit ? kids[v].hi : kids[v].lo;
  }
  return g.lattice().element(g.node(v).label) == "1";
}

// ---------------------------------------------------------------------------
// Random instances

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

namespace {

int random_above(Rng& rng, const Order& order, int x) {
  std::vector<int> up;
  for (int y = 0; y < order.size(); ++y)
    if (order.le(x, y)) up.push_back(y);
  return up[uniform(rng, 0, static_cast<int>(up.size()) - 1)];
}

int random_below(Rng& rng, const Order& order, int x) {
  std::vector<int> down;
  for (int y = 0; y < order.size(); ++y)
    if (order.le(y, x)) down.push_back(y);
  return down[uniform(rng, 0, static_cast<int>(down.size()) - 1)];
}

}  // namespace

LabeledGraph random_graph(Rng& rng, const pbpo::LatticePtr& lattice, const std::vector<std::string>& labels,
                          int max_nodes, int max_edges, const std::string& prefix) {
  LabeledGraph g(lattice);
  const int n = uniform(rng, 1, max_nodes);
  auto label = [&] { return labels[uniform(rng, 0, static_cast<int>(labels.size()) - 1)]; };
  for (int i = 0; i < n; ++i) g.add_node(prefix + std::to_string(i), std::string_view(label()));
  const int m = uniform(rng, 0, max_edges);
  for (int i = 0; i < m; ++i)
    g.add_edge(prefix + "e" + std::to_string(i), static_cast<Index>(uniform(rng, 0, n - 1)),
               static_cast<Index>(uniform(rng, 0, n - 1)), lattice->at(label()));
  return g;
}

GraphMorphism random_morphism_from(Rng& rng, const GraphPtr& A, const Order& order, int max_nodes, int max_edges,
                                   const std::string& prefix) {
  const auto& lat = A->lattice();
  const int an = static_cast<int>(A->node_count());
  // Node slots: an A node either opens a slot or joins an earlier one.
  std::vector<int> node_slot(an);
  std::vector<int> slot_label;
  for (int v = 0; v < an; ++v) {
    const int label = order.index(lat.element(A->node(v).label));
    const bool merge = !slot_label.empty() && (static_cast<int>(slot_label.size()) >= max_nodes || uniform(rng, 0, 3) == 0);
    if (merge) {
      int s = uniform(rng, 0, static_cast<int>(slot_label.size()) - 1);
      node_slot[v] = s;
      slot_label[s] = order.join(slot_label[s], label);
    } else {
      node_slot[v] = static_cast<int>(slot_label.size());
      slot_label.push_back(label);
    }
  }
  const int extra = uniform(rng, 0, std::max(0, max_nodes - static_cast<int>(slot_label.size())));
  for (int i = 0; i < extra; ++i) slot_label.push_back(uniform(rng, 0, order.size() - 1));
  if (slot_label.empty()) slot_label.push_back(uniform(rng, 0, order.size() - 1));

  struct Slot {
    int src, tgt, label;
  };
  std::vector<Slot> edges;
  std::vector<int> edge_slot(A->edge_count());
  for (Index e = 0; e < A->edge_count(); ++e) {
    const auto& ae = A->edge(e);
    const int s = node_slot[ae.src], t = node_slot[ae.tgt];
    const int label = order.index(lat.element(ae.label));
    std::vector<int> same;
    for (int k = 0; k < static_cast<int>(edges.size()); ++k)
      if (edges[k].src == s && edges[k].tgt == t) same.push_back(k);
    if (!same.empty() && uniform(rng, 0, 2) == 0) {
      int k = same[uniform(rng, 0, static_cast<int>(same.size()) - 1)];
      edge_slot[e] = k;
      edges[k].label = order.join(edges[k].label, label);
    } else {
      edge_slot[e] = static_cast<int>(edges.size());
      edges.push_back({s, t, label});
    }
  }
  const int nb = static_cast<int>(slot_label.size());
  while (static_cast<int>(edges.size()) < max_edges && uniform(rng, 0, 2) == 0)
    edges.push_back({uniform(rng, 0, nb - 1), uniform(rng, 0, nb - 1), uniform(rng, 0, order.size() - 1)});

  LabeledGraph B(A->lattice_ptr());
  for (int s = 0; s < nb; ++s) B.add_node(prefix + std::to_string(s), std::string_view(order.name(random_above(rng, order, slot_label[s]))));
  for (int k = 0; k < static_cast<int>(edges.size()); ++k)
    B.add_edge(prefix + "e" + std::to_string(k), static_cast<Index>(edges[k].src), static_cast<Index>(edges[k].tgt),
               lat.at(order.name(random_above(rng, order, edges[k].label))));
  std::vector<Index> nm(node_slot.begin(), node_slot.end()), em(edge_slot.begin(), edge_slot.end());
  return GraphMorphism(A, pbpo::share(std::move(B)), nm, em);
}

GraphMorphism random_morphism_into(Rng& rng, const GraphPtr& D, const Order& order, int max_nodes, int max_edges,
                                   const std::string& prefix) {
  const auto& lat = D->lattice();
  const int dn = static_cast<int>(D->node_count());
  LabeledGraph B(D->lattice_ptr());
  std::vector<Index> nm, em;
  const int n = uniform(rng, 1, max_nodes);
  std::vector<std::vector<int>> over(dn);
  for (int i = 0; i < n; ++i) {
    const int d = uniform(rng, 0, dn - 1);
    over[d].push_back(i);
    nm.push_back(static_cast<Index>(d));
    B.add_node(prefix + std::to_string(i),
               std::string_view(order.name(random_below(rng, order, order.index(lat.element(D->node(d).label))))));
  }
  const int attempts = uniform(rng, 0, 2 * max_edges);
  for (int a = 0; a < attempts && static_cast<int>(B.edge_count()) < max_edges && D->edge_count() > 0; ++a) {
    const Index e = static_cast<Index>(uniform(rng, 0, static_cast<int>(D->edge_count()) - 1));
    const auto& de = D->edge(e);
    if (over[de.src].empty() || over[de.tgt].empty()) continue;
    const int s = over[de.src][uniform(rng, 0, static_cast<int>(over[de.src].size()) - 1)];
    const int t = over[de.tgt][uniform(rng, 0, static_cast<int>(over[de.tgt].size()) - 1)];
    B.add_edge(prefix + "e" + std::to_string(B.edge_count()), static_cast<Index>(s), static_cast<Index>(t),
               lat.at(order.name(random_below(rng, order, order.index(lat.element(de.label))))));
    em.push_back(e);
  }
  return GraphMorphism(pbpo::share(std::move(B)), D, nm, em);
}

Shuffled shuffle_ids(Rng& rng, const LabeledGraph& g, const std::string& prefix) {
  std::vector<Index> nodes(g.node_count()), edges(g.edge_count());
  std::iota(nodes.begin(), nodes.end(), 0);
  std::iota(edges.begin(), edges.end(), 0);
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::shuffle(edges.begin(), edges.end(), rng);
  Shuffled out;
  LabeledGraph h(g.lattice_ptr());
  std::vector<Index> position(g.node_count());
  for (Index k = 0; k < nodes.size(); ++k) {
    const auto& n = g.node(nodes[k]);
    const std::string id = prefix + "v" + std::to_string(k);
    position[nodes[k]] = h.add_node(id, n.label);
    out.nodes[n.id] = id;
  }
  for (Index k = 0; k < edges.size(); ++k) {
    const auto& e = g.edge(edges[k]);
    const std::string id = prefix + "e" + std::to_string(k);
    h.add_edge(id, position[e.src], position[e.tgt], e.label);
    out.edges[e.id] = id;
  }
  out.graph = pbpo::share(std::move(h));
  return out;
}

}  // namespace oracle
