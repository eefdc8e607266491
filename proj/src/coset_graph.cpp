#include "vst/coset_graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "vst/error.hpp"

namespace vst {

std::vector<std::size_t> Digraph::out_degrees() const {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [s, t] : arcs) ++deg[s];
  return deg;
}

std::vector<std::size_t> Digraph::in_degrees() const {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [s, t] : arcs) ++deg[t];
  return deg;
}

void Digraph::check() const {
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].first >= n || arcs[i].second >= n) {
      throw Error(Errc::structural, "arc " + std::to_string(i) + " references a vertex outside 0.." +
                                        std::to_string(n == 0 ? 0 : n - 1));
    }
  }
}

std::optional<std::size_t> Digraph::regular_degree() const {
  if (n == 0) return std::nullopt;
  auto out = out_degrees();
  auto in = in_degrees();
  for (std::size_t v = 0; v < n; ++v) {
    if (out[v] != out[0] || in[v] != out[0]) return std::nullopt;
  }
  return out[0];
}

std::size_t Digraph::require_regular() const {
  check();
  if (n == 0) throw Error(Errc::validation, "digraph has no vertices");
  auto out = out_degrees();
  auto in = in_degrees();
  for (std::size_t v = 0; v < n; ++v) {
    if (out[v] != out[0] || in[v] != out[0]) {
      throw Error(Errc::validation, "digraph is not regular: vertex " + std::to_string(v) + " has out-degree " +
                                        std::to_string(out[v]) + " and in-degree " + std::to_string(in[v]) +
                                        ", expected " + std::to_string(out[0]));
    }
  }
  return out[0];
}

namespace {

std::size_t reach_count(std::size_t n, const std::vector<std::vector<Vertex>>& adj) {
  std::vector<bool> seen(n, false);
  std::deque<Vertex> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count;
}

}  // namespace

bool strongly_connected(const Digraph& g) {
  if (g.n == 0) return false;
  std::vector<std::vector<Vertex>> fwd(g.n), bwd(g.n);
  for (const auto& [s, t] : g.arcs) {
    fwd[s].push_back(t);
    bwd[t].push_back(s);
  }
  return reach_count(g.n, fwd) == g.n && reach_count(g.n, bwd) == g.n;
}

CosetGraph::CosetGraph(Group group, std::vector<Element> generators, std::vector<Element> subgroup,
                       std::vector<Element> representatives, LabeledGraph labels)
    : group_(std::move(group)),
      generators_(std::move(generators)),
      subgroup_(std::move(subgroup)),
      reps_(std::move(representatives)),
      labels_(std::move(labels)) {}

std::optional<Vertex> CosetGraph::vertex_of(const Element& g) const {
  auto rep = coset_canonicalize(group_, g, subgroup_);
  auto it = std::lower_bound(reps_.begin(), reps_.end(), rep);
  if (it == reps_.end() || *it != rep) return std::nullopt;
  return static_cast<Vertex>(it - reps_.begin());
}

bool validate_coset_condition(const Group& group, std::span<const Element> delta, std::span<const Element> h) {
  std::set<Element> left, right;
  const Element id = group.identity();
  std::span<const Element> hs = h;
  std::vector<Element> trivial{id};
  if (hs.empty()) hs = trivial;
  for (const auto& d : delta) {
    for (const auto& x : hs) {
      left.insert(group.compose(d, x));
      right.insert(group.compose(x, d));
    }
  }
  return left == right;
}

CosetGraph build_cayley_coset_graph(const GroupSpec& spec, std::size_t cap) {
  Group group(spec.kind);
  if (spec.generators.empty()) throw Error(Errc::input, "generator list Delta is empty");
  for (const auto& g : spec.generators) group.check(g);
  auto h = validate_subgroup(group, spec.subgroup);
  if (!validate_coset_condition(group, spec.generators, h)) {
    throw Error(Errc::ill_defined_edges,
                "ill-defined edges: Delta*H != H*Delta, so (gH, g*delta*H) depends on the coset representative");
  }
  auto table = enumerate_group(spec, cap);
  if (table.size() % h.size() != 0) {
    throw Error(Errc::internal, "group order is not a multiple of the subgroup order");
  }

  // Partition the table into left cosets and pick the least member of each.
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> coset_of(table.size(), unassigned);
  std::vector<Element> reps;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (coset_of[i] != unassigned) continue;
    Element best = table[i];
    std::vector<std::size_t> members;
    for (const auto& x : h) {
      auto m = group.compose(table[i], x);
      auto idx = table.index_of(m);
      if (idx == ElementTable::npos) throw Error(Errc::internal, "coset member missing from the group table");
      members.push_back(idx);
      if (m < best) best = std::move(m);
    }
    for (auto m : members) coset_of[m] = reps.size();
    reps.push_back(std::move(best));
  }

  std::vector<std::size_t> order(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return reps[a] < reps[b]; });
  std::vector<Vertex> vertex_of_coset(reps.size());
  std::vector<Element> sorted;
  sorted.reserve(reps.size());
  for (std::size_t v = 0; v < order.size(); ++v) {
    vertex_of_coset[order[v]] = static_cast<Vertex>(v);
    sorted.push_back(reps[order[v]]);
  }

  LabeledGraph labels;
  labels.n = sorted.size();
  labels.d = spec.generators.size();
  labels.next.resize(labels.n * labels.d);
  for (std::size_t v = 0; v < labels.n; ++v) {
    for (std::size_t j = 0; j < labels.d; ++j) {
      auto idx = table.index_of(group.compose(sorted[v], spec.generators[j]));
      labels.next[v * labels.d + j] = vertex_of_coset[coset_of[idx]];
    }
  }

  if (!strongly_connected(as_digraph(labels))) {
    throw Error(Errc::not_connected, "not connected: the coset graph is not strongly connected");
  }
  return CosetGraph(std::move(group), spec.generators, std::move(h), std::move(sorted), std::move(labels));
}

Digraph as_digraph(const LabeledGraph& g) {
  Digraph out;
  out.n = g.n;
  out.arcs.reserve(g.n * g.d);
  for (std::size_t v = 0; v < g.n; ++v) {
    for (std::size_t j = 0; j < g.d; ++j) {
      out.arcs.emplace_back(static_cast<Vertex>(v), g.next[v * g.d + j]);
    }
  }
  return out;
}

Digraph as_digraph(const CosetGraph& g) { return as_digraph(g.labels()); }

std::string arc_dump(const CosetGraph& g) {
  std::ostringstream out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t j = 0; j < g.degree(); ++j) {
      out << v << ' ' << g.target(static_cast<Vertex>(v), static_cast<std::uint32_t>(j)) << ' ' << j << '\n';
    }
  }
  return out.str();
}

std::string arc_dump(const Digraph& g) {
  std::ostringstream out;
  std::vector<std::size_t> rank(g.n, 0);
  for (const auto& [s, t] : g.arcs) out << s << ' ' << t << ' ' << rank[s]++ << '\n';
  return out.str();
}

std::vector<Element> petersen_stabilizer() {
  std::vector<Element> out;
  std::vector<std::uint32_t> p{0, 1, 2, 3, 4};
  do {
    bool fixes = (p[0] == 0 || p[0] == 1) && (p[1] == 0 || p[1] == 1);
    if (fixes) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

GroupSpec petersen_spec() {
  GroupSpec spec;
  spec.kind = GroupKind{PermutationKind{5}};
  for (const char* c : {"(13)(24)", "(13)(25)", "(14)(25)"}) {
    spec.generators.push_back(Permutation::from_cycles(c, 5).images());
  }
  spec.subgroup = petersen_stabilizer();
  return spec;
}

ConjugationCheck petersen_conjugation_check(const Permutation& x, const Permutation& delta) {
  ConjugationCheck out;
  out.conjugate = delta.inverse().then(x).then(delta);
  out.matches_expected = out.conjugate == Permutation::from_cycles("(12)(345)", 5);
  const auto& img = out.conjugate.images();
  out.in_stabilizer = (img[0] == 0 || img[0] == 1) && (img[1] == 0 || img[1] == 1);

  Group s5(GroupKind{PermutationKind{5}});
  auto b = petersen_stabilizer();
  auto canon = [&](const Permutation& p) { return coset_canonicalize(s5, p.images(), b); };
  out.cosets_merge = canon(x.then(delta)) == canon(delta);
  out.cosets_distinct = canon(x) != canon(Permutation::identity(5));
  return out;
}

}  // namespace vst
