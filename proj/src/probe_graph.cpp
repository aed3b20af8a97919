#include "hypertess/probe_graph.hpp"

#include <cmath>
#include <deque>
#include <omp.h>

#include "hypertess/errors.hpp"

namespace hypertess {

namespace {

int g_jobs = 0;

ProbeGraph lattice_nodes(const ProcessSample& sample, double h) {
  const int d = sample.d;
  double rho = sample.window_rho();
  if (!(h > 0.0 && h < rho / 4.0)) throw UsageError("build_probe_graph: need 0 < h < tanh(R)/4");
  ProbeGraph g;
  g.d = d;
  g.spacing = h;
  g.rho = rho;
  g.half_extent = static_cast<int>(std::floor(rho / h));
  const long side = 2L * g.half_extent + 1;
  double box = std::pow(static_cast<double>(side), d);
  if (box > 6e7) throw UsageError("build_probe_graph: lattice too fine for this dimension");
  const long total = static_cast<long>(box);
  g.index.assign(static_cast<std::size_t>(total), -1);
  std::vector<int> z(d);
  const double rho2 = rho * rho;
  for (long b = 0; b < total; ++b) {
    long rest = b;
    double n2 = 0.0;
    for (int a = d - 1; a >= 0; --a) {
      z[a] = static_cast<int>(rest % side) - g.half_extent;
      rest /= side;
      double x = h * z[a];
      n2 += x * x;
    }
    if (!(n2 < rho2)) continue;
    g.index[b] = static_cast<int>(g.lattice.size() / d);
    g.lattice.insert(g.lattice.end(), z.begin(), z.end());
  }
  const std::size_t n = g.node_count();
  g.plus.assign(n * d, -1);
  g.minus.assign(n * d, -1);
  g.open.assign(n * d, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<int> w(g.lattice.begin() + v * d, g.lattice.begin() + (v + 1) * d);
    for (int a = 0; a < d; ++a) {
      w[a] += 1;
      int up = g.node_at(w);
      w[a] -= 1;
      if (up >= 0) {
        g.plus[v * d + a] = up;
        g.minus[static_cast<std::size_t>(up) * d + a] = static_cast<int>(v);
      }
    }
  }
  return g;
}

}  // namespace

void set_jobs(int j) {
  g_jobs = j;
  if (j > 0) omp_set_num_threads(j);
}

int jobs() { return g_jobs > 0 ? g_jobs : omp_get_max_threads(); }

Vector ProbeGraph::position(int node) const {
  Vector x(d);
  for (int a = 0; a < d; ++a) x[a] = spacing * lattice[static_cast<std::size_t>(node) * d + a];
  return x;
}

int ProbeGraph::node_at(const std::vector<int>& z) const {
  const long side = 2L * half_extent + 1;
  long b = 0;
  for (int a = 0; a < d; ++a) {
    if (z[a] < -half_extent || z[a] > half_extent) return -1;
    b = b * side + (z[a] + half_extent);
  }
  return index[static_cast<std::size_t>(b)];
}

std::vector<int> ProbeGraph::labels() const {
  const std::size_t n = node_count();
  std::vector<int> lab(n, -1);
  std::deque<int> queue;
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (lab[s] >= 0) continue;
    lab[s] = next;
    queue.push_back(static_cast<int>(s));
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int a = 0; a < d; ++a) {
        int up = plus[static_cast<std::size_t>(v) * d + a];
        if (up >= 0 && edge_open(v, a) && lab[up] < 0) {
          lab[up] = next;
          queue.push_back(up);
        }
        int dn = minus[static_cast<std::size_t>(v) * d + a];
        if (dn >= 0 && edge_open(dn, a) && lab[dn] < 0) {
          lab[dn] = next;
          queue.push_back(dn);
        }
      }
    }
    ++next;
  }
  return lab;
}

int ProbeGraph::component_count() const {
  std::vector<int> lab = labels();
  int m = -1;
  for (int l : lab) m = l > m ? l : m;
  return m + 1;
}

ProbeGraph build_probe_graph(const ProcessSample& sample, double h, Execution exec) {
  ProbeGraph g = lattice_nodes(sample, h);
  const int d = g.d;
  const std::size_t n = g.node_count();
  // lattice lines: maximal runs of plus-neighbors along one axis
  std::vector<std::pair<int, int>> starts;  // (axis, first node)
  for (int a = 0; a < d; ++a)
    for (std::size_t v = 0; v < n; ++v)
      if (g.minus[v * d + a] < 0 && g.plus[v * d + a] >= 0) starts.emplace_back(a, static_cast<int>(v));
  const auto& planes = sample.hyperplanes;
  const long nlines = static_cast<long>(starts.size());

  auto run_line = [&](long li) {
    const int a = starts[li].first;
    std::vector<int> run{starts[li].second};
    while (true) {
      int up = g.plus[static_cast<std::size_t>(run.back()) * d + a];
      if (up < 0) break;
      run.push_back(up);
    }
    const long edges = static_cast<long>(run.size()) - 1;
    std::vector<std::uint8_t> blocked(static_cast<std::size_t>(edges), 0);
    Vector x0 = g.position(run[0]);
    for (const Hyperplane& H : planes) {
      double ua = H.normal()[a];
      double slope = ua * h;
      auto check = [&](long k) {
        if (k < 0 || k >= edges || blocked[k]) return;
        if (segment_crosses(H, g.position(run[k]), g.position(run[k + 1]))) blocked[k] = 1;
      };
      if (std::fabs(slope) < 1e-10) {
        for (long k = 0; k < edges; ++k) check(k);
        continue;
      }
      double v0 = H.normal().dot(x0) - H.offset();
      double kstar = -v0 / slope;
      if (kstar < -3.0 || kstar > edges + 3.0) continue;
      long k0 = static_cast<long>(std::floor(kstar));
      for (long k = k0 - 2; k <= k0 + 2; ++k) check(k);
    }
    for (long k = 0; k < edges; ++k)
      g.open[static_cast<std::size_t>(run[k]) * d + a] = blocked[k] ? 0 : 1;
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long li = 0; li < nlines; ++li) run_line(li);
  } else {
    for (long li = 0; li < nlines; ++li) run_line(li);
  }
  return g;
}

namespace reference {

ProbeGraph build_probe_graph(const ProcessSample& sample, double h) {
  ProbeGraph g = lattice_nodes(sample, h);
  const int d = g.d;
  const std::size_t n = g.node_count();
  for (std::size_t v = 0; v < n; ++v) {
    for (int a = 0; a < d; ++a) {
      int up = g.plus[v * d + a];
      if (up < 0) continue;
      Vector x = g.position(static_cast<int>(v)), y = g.position(up);
      bool clear = true;
      for (const Hyperplane& H : sample.hyperplanes)
        if (segment_crosses(H, x, y)) {
          clear = false;
          break;
        }
      g.open[v * d + a] = clear ? 1 : 0;
    }
  }
  return g;
}

}  // namespace reference

}  // namespace hypertess
