#pragma once

// Reference computations for tests. Nothing here uses the library's graph,
// word or scheduling code: adjacency is built straight from arithmetic.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

namespace oracle {

struct Adj {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<std::vector<std::uint32_t>> out;  // out[v][j]
};

inline Adj cyclic(std::uint32_t m, const std::vector<std::uint32_t>& gens) {
  Adj a{m, gens.size(), std::vector<std::vector<std::uint32_t>>(m)};
  for (std::uint32_t v = 0; v < m; ++v) {
    for (auto g : gens) a.out[v].push_back((v + g) % m);
  }
  return a;
}

// Bit strings of length k; generator j flips bit j.
inline Adj hypercube(std::uint32_t k) {
  const std::uint32_t n = 1u << k;
  Adj a{n, k, std::vector<std::vector<std::uint32_t>>(n)};
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t j = 0; j < k; ++j) a.out[v].push_back(v ^ (1u << j));
  }
  return a;
}

// 2-subsets of {0..4}, adjacent when disjoint.
inline Adj petersen() {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) pairs.emplace_back(i, j);
  }
  Adj a{pairs.size(), 3, std::vector<std::vector<std::uint32_t>>(pairs.size())};
  for (std::size_t u = 0; u < pairs.size(); ++u) {
    for (std::size_t v = 0; v < pairs.size(); ++v) {
      auto [a1, b1] = pairs[u];
      auto [a2, b2] = pairs[v];
      if (a1 != a2 && a1 != b2 && b1 != a2 && b1 != b2) a.out[u].push_back(static_cast<std::uint32_t>(v));
    }
  }
  return a;
}

inline std::vector<int> distances(const Adj& a, std::uint32_t src) {
  std::vector<int> dist(a.n, -1);
  std::deque<std::uint32_t> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (auto v : a.out[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

// n_k from vertex 0.
inline std::vector<std::uint64_t> layer_counts(const Adj& a, std::uint32_t src = 0) {
  auto dist = distances(a, src);
  std::vector<std::uint64_t> n(*std::max_element(dist.begin(), dist.end()) + 1, 0);
  for (int x : dist) ++n[x];
  return n;
}

// All-pairs count per distance.
inline std::vector<std::uint64_t> pair_counts(const Adj& a) {
  std::vector<std::uint64_t> big;
  for (std::uint32_t s = 0; s < a.n; ++s) {
    for (int x : distances(a, s)) {
      if (x < 0) return {};
      if (big.size() <= static_cast<std::size_t>(x)) big.resize(x + 1, 0);
      ++big[x];
    }
  }
  return big;
}

// ceil(sum over ordered pairs of distance / (n d)), from all-pairs BFS.
inline std::uint64_t theta_all_pairs(const Adj& a) {
  std::uint64_t sum = 0;
  for (std::uint32_t s = 0; s < a.n; ++s) {
    for (int x : distances(a, s)) sum += static_cast<std::uint64_t>(x);
  }
  const auto nd = a.n * a.d;
  return (sum + nd - 1) / nd;
}

// Girth of a symmetric digraph read as an undirected simple graph: for each
// edge {u, v}, the shortest u-v path avoiding that edge, plus one.
inline int girth(const Adj& a) {
  int best = 1 << 30;
  for (std::uint32_t u = 0; u < a.n; ++u) {
    for (auto v : a.out[u]) {
      if (v <= u) continue;
      std::vector<int> dist(a.n, -1);
      std::deque<std::uint32_t> q{u};
      dist[u] = 0;
      while (!q.empty()) {
        auto x = q.front();
        q.pop_front();
        for (auto y : a.out[x]) {
          if ((x == u && y == v) || (x == v && y == u) || dist[y] >= 0) continue;
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
      }
      if (dist[v] > 0) best = std::min(best, dist[v] + 1);
    }
  }
  return best;
}

using Word = std::vector<std::uint32_t>;

// Every shortest generator word from 0 to each vertex.
inline std::vector<std::vector<Word>> all_shortest_words(const Adj& a) {
  auto dist = distances(a, 0);
  std::vector<std::vector<Word>> words(a.n);
  words[0].push_back({});
  std::vector<std::uint32_t> order(a.n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return dist[x] < dist[y]; });
  for (auto u : order) {
    for (std::uint32_t j = 0; j < a.d; ++j) {
      auto v = a.out[u][j];
      if (dist[v] != dist[u] + 1) continue;
      for (const auto& w : words[u]) {
        auto x = w;
        x.push_back(j);
        words[v].push_back(std::move(x));
      }
    }
  }
  return words;
}

// Minimum over every choice of shortest words of the largest generator count.
inline std::uint64_t psi_brute_force(const Adj& a) {
  auto words = all_shortest_words(a);
  std::uint64_t best = UINT64_MAX;
  std::vector<std::uint64_t> count(a.d, 0);
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t v) {
    if (v == a.n) {
      best = std::min(best, *std::max_element(count.begin(), count.end()));
      return;
    }
    for (const auto& w : words[v]) {
      for (auto j : w) ++count[j];
      rec(v + 1);
      for (auto j : w) --count[j];
    }
  };
  rec(0);
  return best;
}

// Minimum makespan by breadth-first search over progress vectors: at each
// time step any set of words whose next letters use distinct labels advances.
// Identical words are interchangeable, so progress is kept sorted within each
// run of equal words.
inline std::uint32_t min_makespan(const std::vector<Word>& words, std::size_t d) {
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!words[i].empty()) live.push_back(i);
  }
  std::sort(live.begin(), live.end(), [&](auto x, auto y) { return words[x] < words[y]; });
  using State = std::vector<std::uint8_t>;
  auto canonical = [&](State s) {
    for (std::size_t lo = 0; lo < live.size();) {
      std::size_t hi = lo + 1;
      while (hi < live.size() && words[live[hi]] == words[live[lo]]) ++hi;
      std::sort(s.begin() + lo, s.begin() + hi);
      lo = hi;
    }
    return s;
  };
  State start(live.size(), 0), goal(live.size());
  for (std::size_t k = 0; k < live.size(); ++k) goal[k] = static_cast<std::uint8_t>(words[live[k]].size());
  std::set<State> seen{start};
  std::vector<State> frontier{start};
  for (std::uint32_t t = 0;; ++t) {
    for (const auto& s : frontier) {
      if (s == goal) return t;
    }
    std::vector<State> next;
    for (const auto& s : frontier) {
      std::vector<std::vector<std::size_t>> by_label(d);
      for (std::size_t k = 0; k < live.size(); ++k) {
        if (s[k] < goal[k]) by_label[words[live[k]][s[k]]].push_back(k);
      }
      // Each label advances one of its waiting words, or none.
      std::function<void(std::size_t, State&)> pick = [&](std::size_t label, State& cur) {
        if (label == d) {
          auto c = canonical(cur);
          if (seen.insert(c).second) next.push_back(std::move(c));
          return;
        }
        pick(label + 1, cur);
        for (auto k : by_label[label]) {
          ++cur[k];
          pick(label + 1, cur);
          --cur[k];
        }
      };
      State cur = s;
      pick(0, cur);
    }
    frontier = std::move(next);
    if (frontier.empty()) return UINT32_MAX;
  }
}

// Random d-regular digraph on n vertices: a union of d random permutations,
// arc order shuffled so that arc position says nothing about the factor.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> random_regular_arcs(std::size_t n, std::size_t d,
                                                                                std::mt19937_64& rng) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  std::vector<std::uint32_t> perm(n);
  for (std::size_t k = 0; k < d; ++k) {
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::uint32_t v = 0; v < n; ++v) arcs.emplace_back(v, perm[v]);
  }
  std::shuffle(arcs.begin(), arcs.end(), rng);
  return arcs;
}

}  // namespace oracle
