#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hiertie/graph.hpp"
#include "oracle/dense_oracle.hpp"

namespace testsupport {

inline std::string vertex_label(std::size_t i) { return fmt::format("v{:03d}", i); }

struct RandomGraph {
  std::size_t n = 0;
  bool directed = true;
  std::vector<oracle::WeightedEdge> edges;  // raw triples, indices are vertex_label order
  hiertie::TemporalEdgeList list;
};

// Seeded random weighted graph, every edge on one date. Node i is labelled
// vertex_label(i); the ring edge i -> i+1 keeps every node present so NodeId i
// corresponds to raw index i.
inline RandomGraph random_graph(std::uint64_t seed, std::size_t n, double density, bool directed,
                                hiertie::Date when = hiertie::Date{2001, 3, 5}) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  RandomGraph g;
  g.n = n;
  g.directed = directed;
  hiertie::TemporalEdgeListBuilder builder(directed);
  auto add = [&](std::size_t u, std::size_t v, std::uint64_t w) {
    g.edges.push_back({u, v, static_cast<double>(w)});
    builder.add(vertex_label(u), vertex_label(v), when, w);
  };
  for (std::size_t u = 0; u + 1 < n; ++u) {
    // sometimes only the reverse ring edge, so directed graphs get dangling nodes and sinks
    if (!directed || unit() < 0.8) add(u, u + 1, 1 + rng() % 5);
    else add(u + 1, u, 1 + rng() % 5);
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && unit() < density) add(u, v, 1 + rng() % 9);
    }
  }
  g.list = std::move(builder).build();
  return g;
}

}  // namespace testsupport
