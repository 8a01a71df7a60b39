#pragma once

// Test-only reference implementations. They work from raw (src, dst, weight)
// triples and share no code with the library's snapshot or iteration path.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

struct WeightedEdge {
  std::size_t src;
  std::size_t dst;
  double weight;
};

// Solves (I - d P^T) x = (1 - d) e_root on the nodes touched by `edges`.
// Rows of P are weight-normalized; rows without out-edges point at the root.
// Returns a dense vector over 0..n-1 (untouched nodes are 0).
inline std::vector<double> rooted_pagerank_dense(std::size_t n, const std::vector<WeightedEdge>& edges, bool directed,
                                                 std::size_t root, double damping) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  std::vector<bool> active(n, false);
  for (const auto& e : edges) {
    if (e.src == e.dst) continue;
    w[e.src][e.dst] += e.weight;
    if (!directed) w[e.dst][e.src] += e.weight;
    active[e.src] = active[e.dst] = true;
  }
  if (!active[root]) throw std::invalid_argument("root inactive");
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) ids.push_back(i);
  }
  const std::size_t m = ids.size();
  std::size_t r = 0;
  while (ids[r] != root) ++r;

  // P[i][j] over compacted ids
  std::vector<std::vector<double>> P(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += w[ids[i]][ids[j]];
    if (row == 0.0) {
      P[i][r] = 1.0;
    } else {
      for (std::size_t j = 0; j < m; ++j) P[i][j] = w[ids[i]][ids[j]] / row;
    }
  }
  // A = I - d P^T, b = (1-d) e_r; Gaussian elimination with partial pivoting.
  std::vector<std::vector<double>> A(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) A[i][j] = (i == j ? 1.0 : 0.0) - damping * P[j][i];
    A[i][m] = (i == r) ? (1.0 - damping) : 0.0;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < m; ++i) {
      if (std::abs(A[i][col]) > std::abs(A[pivot][col])) pivot = i;
    }
    std::swap(A[col], A[pivot]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == col) continue;
      const double f = A[i][col] / A[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j <= m; ++j) A[i][j] -= f * A[col][j];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) x[ids[i]] = A[i][m] / A[i][i];
  return x;
}

// Candidates (root excluded, touched nodes only) ordered by score desc then id asc.
inline std::vector<std::size_t> ranked_ids(const std::vector<double>& scores, const std::vector<bool>& active,
                                           std::size_t root) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (active[i] && i != root) out.push_back(i);
  }
  std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return out;
}

struct SlotEdge {
  std::size_t src;
  std::size_t dst;
  double weight;
  int slot;
};

// Brute-force top-p vote for `query` across slots. Candidate order:
// votes desc, mean position asc, id asc. Rankings are based on exact dense
// solves, so near-ties may order differently from an iterative solver; callers
// compare winners, not full orders.
inline std::vector<std::size_t> brute_force_vote(std::size_t n, const std::vector<SlotEdge>& edges, int slots,
                                                 bool directed, std::size_t query, std::size_t p, double damping) {
  std::map<std::size_t, std::tuple<std::size_t, std::size_t, std::size_t>> tally;  // votes, appearances, pos sum
  for (int k = 0; k < slots; ++k) {
    std::vector<WeightedEdge> slot_edges;
    std::vector<bool> active(n, false);
    for (const auto& e : edges) {
      if (e.slot != k || e.src == e.dst) continue;
      slot_edges.push_back({e.src, e.dst, e.weight});
      active[e.src] = active[e.dst] = true;
    }
    if (!active[query]) continue;
    const auto scores = rooted_pagerank_dense(n, slot_edges, directed, query, damping);
    const auto order = ranked_ids(scores, active, query);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      auto& [votes, appearances, sum] = tally[order[pos]];
      appearances += 1;
      sum += pos + 1;
      if (pos < p) votes += 1;
    }
  }
  std::vector<std::size_t> out;
  for (const auto& [id, _] : tally) out.push_back(id);
  std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    const auto& [va, na, sa] = tally[a];
    const auto& [vb, nb, sb] = tally[b];
    if (va != vb) return va > vb;
    if (sa * nb != sb * na) return sa * nb < sb * na;
    return a < b;
  });
  return out;
}

}  // namespace oracle
