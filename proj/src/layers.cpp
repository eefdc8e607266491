#include "vst/layers.hpp"

#include <algorithm>
#include <deque>
#include <thread>

#include "vst/error.hpp"

namespace vst {

std::uint64_t LayerProfile::distance_sum() const {
  std::uint64_t s = 0;
  for (std::size_t k = 1; k < n.size(); ++k) s += k * n[k];
  return s;
}

std::uint64_t LayerProfile::pair_distance_sum() const {
  std::uint64_t s = 0;
  for (std::size_t k = 1; k < big_n.size(); ++k) s += k * big_n[k];
  return s;
}

namespace {

struct OutLists {
  std::vector<std::size_t> start;
  std::vector<Vertex> targets;

  explicit OutLists(const Digraph& g) : start(g.n + 1, 0) {
    for (const auto& [s, t] : g.arcs) ++start[s + 1];
    for (std::size_t v = 0; v < g.n; ++v) start[v + 1] += start[v];
    targets.resize(g.arcs.size());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    // Arc order is preserved within each tail's list.
    for (const auto& [s, t] : g.arcs) targets[fill[s]++] = t;
  }
};

std::vector<std::int64_t> distances(const OutLists& adj, std::size_t n, Vertex source) {
  std::vector<std::int64_t> dist(n, -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto i = adj.start[v]; i < adj.start[v + 1]; ++i) {
      auto w = adj.targets[i];
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::uint64_t> histogram(const std::vector<std::int64_t>& dist) {
  std::vector<std::uint64_t> h;
  for (auto x : dist) {
    if (x < 0) throw Error(Errc::not_connected, "not connected: some vertex is unreachable");
    if (static_cast<std::size_t>(x) >= h.size()) h.resize(static_cast<std::size_t>(x) + 1, 0);
    ++h[static_cast<std::size_t>(x)];
  }
  return h;
}

void accumulate(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& h) {
  if (h.size() > into.size()) into.resize(h.size(), 0);
  for (std::size_t k = 0; k < h.size(); ++k) into[k] += h[k];
}

// Per-source histograms, computed in contiguous chunks per worker.
std::vector<std::vector<std::uint64_t>> all_histograms(const Digraph& g, unsigned jobs) {
  OutLists adj(g);
  std::vector<std::vector<std::uint64_t>> out(g.n);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(g.n)));
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) out[s] = histogram(distances(adj, g.n, static_cast<Vertex>(s)));
  };
  if (jobs == 1) {
    work(0, g.n);
    return out;
  }
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> pool;
    std::size_t chunk = (g.n + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      std::size_t lo = t * chunk, hi = std::min(g.n, lo + chunk);
      pool.emplace_back([&, t, lo, hi] {
        try {
          work(lo, hi);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

LayerProfile make_profile(const Digraph& g, Vertex base, const std::vector<std::vector<std::uint64_t>>& hists,
                          std::size_t degree) {
  LayerProfile p;
  p.vertices = g.n;
  p.degree = degree;
  p.n = hists[base];
  p.diameter = p.n.size() - 1;
  for (const auto& h : hists) accumulate(p.big_n, h);
  p.theta = average_diameter_bound(p);
  return p;
}

}  // namespace

std::vector<std::int64_t> bfs_distances(const Digraph& g, Vertex source) {
  g.check();
  if (source >= g.n) throw Error(Errc::structural, "source vertex out of range");
  return distances(OutLists(g), g.n, source);
}

LayerProfile layer_profile(const Digraph& g, Vertex base, unsigned jobs) {
  auto d = g.require_regular();
  if (base >= g.n) throw Error(Errc::structural, "base vertex out of range");
  if (!strongly_connected(g)) throw Error(Errc::not_connected, "not connected: digraph is not strongly connected");
  return make_profile(g, base, all_histograms(g, jobs), d);
}

LayerProfile layer_profile(const CosetGraph& g, Vertex base, unsigned jobs) {
  auto dg = as_digraph(g);
  if (base >= dg.n) throw Error(Errc::structural, "base vertex out of range");
  auto hists = all_histograms(dg, jobs);
  for (std::size_t v = 0; v < hists.size(); ++v) {
    if (hists[v] != hists[base]) {
      throw Error(Errc::internal, "coset graph distance profile differs between vertices " + std::to_string(base) +
                                      " and " + std::to_string(v));
    }
  }
  return make_profile(dg, base, hists, g.degree());
}

std::uint64_t average_diameter_bound(const LayerProfile& profile) {
  if (profile.degree == 0) throw Error(Errc::validation, "degree must be positive");
  auto s = profile.distance_sum();
  return (s + profile.degree - 1) / profile.degree;
}

std::vector<Vertex> ball(const Digraph& g, Vertex v, std::size_t r) {
  auto dist = bfs_distances(g, v);
  std::vector<Vertex> out;
  for (std::size_t u = 0; u < dist.size(); ++u) {
    if (dist[u] >= 0 && static_cast<std::size_t>(dist[u]) <= r) out.push_back(static_cast<Vertex>(u));
  }
  return out;
}

std::vector<Vertex> layer(const Digraph& g, Vertex v, std::size_t r) {
  auto dist = bfs_distances(g, v);
  std::vector<Vertex> out;
  for (std::size_t u = 0; u < dist.size(); ++u) {
    if (dist[u] >= 0 && static_cast<std::size_t>(dist[u]) == r) out.push_back(static_cast<Vertex>(u));
  }
  return out;
}

}  // namespace vst
