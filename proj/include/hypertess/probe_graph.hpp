#pragma once

#include <cstdint>
#include <vector>

#include "hypertess/measure.hpp"
#include "hypertess/parallel.hpp"

namespace hypertess {

// Euclidean lattice h*Z^d restricted to the open window disc ||x|| < tanh R;
// axis-neighbor edges are open when no sampled hyperplane crosses them.
struct ProbeGraph {
  int d = 2;
  double spacing = 0.0;
  double rho = 0.0;
  int half_extent = 0;              // lattice coordinates range over [-M, M]
  std::vector<int> lattice;         // d integers per node
  std::vector<int> plus, minus;     // d neighbor ids per node, -1 if absent
  std::vector<std::uint8_t> open;   // d flags per node, edge to the plus neighbor

  std::size_t node_count() const { return lattice.size() / static_cast<std::size_t>(d); }
  Vector position(int node) const;
  // node at the given lattice coordinates, or -1
  int node_at(const std::vector<int>& z) const;
  bool edge_open(int node, int axis) const { return open[static_cast<std::size_t>(node) * d + axis] != 0; }

  // component label per node, labels numbered by smallest member
  std::vector<int> labels() const;
  int component_count() const;

  std::vector<int> index;  // dense box index -> node id or -1
};

ProbeGraph build_probe_graph(const ProcessSample& sample, double h, Execution exec = Execution::parallel);

namespace reference {
// every edge against every hyperplane, single thread
ProbeGraph build_probe_graph(const ProcessSample& sample, double h);
}  // namespace reference

}  // namespace hypertess
