#include "hypertess/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypertess {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double normalize_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

bool Arc::contains(double angle) const {
  if (length >= kTwoPi) return true;
  double off = normalize_angle(angle - start);
  return off > 0.0 && off < length;
}

std::vector<Arc> uncovered_arcs(const std::vector<std::pair<double, double>>& caps) {
  // covered intervals on [0, 2pi), split at the seam
  std::vector<std::pair<double, double>> iv;
  for (const auto& [c, w] : caps) {
    if (!(w > 0.0)) continue;
    if (w >= std::numbers::pi) return {};
    double a = normalize_angle(c - w);
    double b = a + 2.0 * w;
    if (b <= kTwoPi) {
      iv.emplace_back(a, b);
    } else {
      iv.emplace_back(a, kTwoPi);
      iv.emplace_back(0.0, b - kTwoPi);
    }
  }
  if (iv.empty()) return {Arc{0.0, kTwoPi}};
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& p : iv) {
    if (!merged.empty() && p.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, p.second);
    else
      merged.push_back(p);
  }
  std::vector<Arc> gaps;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    double a = merged[i].second, b = merged[i + 1].first;
    if (b > a) gaps.push_back(Arc{a, b - a});
  }
  // gap across the seam
  double tail = merged.back().second, head = merged.front().first;
  double wrap = (kTwoPi - tail) + head;
  if (wrap > 0.0) gaps.push_back(Arc{normalize_angle(tail), wrap});
  return gaps;
}

int find_arc(const std::vector<Arc>& arcs, double angle) {
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].contains(angle)) return static_cast<int>(i);
  return -1;
}

}  // namespace hypertess
