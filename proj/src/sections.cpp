#include "hypertess/sections.hpp"

#include <cmath>

#include "hypertess/errors.hpp"

namespace hypertess {

double omega(int j) {
  if (j < 1) throw UsageError("omega: j must be >= 1");
  return sphere_area(j);
}

namespace {
void check_dims(int d, int k) {
  if (d < 2 || k < 1 || k >= d) throw UsageError("section constant: need 1 <= k < d");
}
}  // namespace

double section_constant(int d, int k) {
  check_dims(d, k);
  return omega(d + 1) * omega(k) / (omega(d) * omega(k + 1));
}

double section_constant_gamma_form(int d, int k) {
  check_dims(d, k);
  return std::tgamma(0.5 * d) * std::tgamma(0.5 * (k + 1)) / (std::tgamma(0.5 * (d + 1)) * std::tgamma(0.5 * k));
}

std::vector<Hyperplane> induce_on_kplane(const ProcessSample& sample, int k) {
  if (k < 2 || k >= sample.d) throw UsageError("induce_on_kplane: need 2 <= k < d");
  std::vector<Hyperplane> out;
  for (const Hyperplane& H : sample.hyperplanes) {
    Vector p = H.normal().head(k);
    double n = p.norm();
    if (n < 1e-15) continue;  // trace parallel to the plane
    double t = H.offset() / n;
    if (!(t < 1.0)) continue;
    out.emplace_back(p / n, t);
  }
  return out;
}

ProcessSample induced_sample(const ProcessSample& sample, int k) {
  ProcessSample s;
  s.d = k;
  s.gamma = section_constant(sample.d, k) * sample.gamma;
  s.window_radius = sample.window_radius;
  s.seed = sample.seed;
  const double rho = sample.window_rho();
  for (const Hyperplane& H : induce_on_kplane(sample, k))
    if (H.offset() < rho) s.hyperplanes.push_back(H);
  return s;
}

EstimateReport verify_section_intensity(int d, int k, double gamma, double r, long n, std::uint64_t seed,
                                        Execution exec) {
  if (k < 2 || k >= d) throw UsageError("verify_section_intensity: need 2 <= k < d");
  if (!(r > 0.0)) throw UsageError("verify_section_intensity: r must be positive");
  if (n < 2) throw UsageError("verify_section_intensity: n must be >= 2");
  const double R = r + 0.5;
  const double rr = std::tanh(r);
  std::vector<long> counts(n, 0);
  std::vector<std::vector<double>> offsets(n);
  auto one = [&](long i) {
    ProcessSample s = sample_process(d, gamma, R, derive_seed(seed, static_cast<std::uint64_t>(i)));
    for (const Hyperplane& H : induce_on_kplane(s, k))
      if (H.offset() < rr) {
        ++counts[i];
        offsets[i].push_back(H.offset());
      }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  Moments m;
  std::vector<double> pooled;
  for (long i = 0; i < n; ++i) {
    m.add(static_cast<double>(counts[i]));
    pooled.insert(pooled.end(), offsets[i].begin(), offsets[i].end());
  }
  EstimateReport rep;
  rep.name = "section_intensity";
  rep.parameters = {{"d", d}, {"k", k}, {"gamma", gamma}, {"r", r}, {"R", R}};
  rep.estimate = m.mean();
  rep.standard_error = m.se();
  rep.target = section_constant(d, k) * gamma * mu_hit_ball(k, r);
  rep.n = n;
  rep.seed = seed;
  const double Gr = cosh_power_integral(k - 1, r);
  double ks = pooled.empty() ? 0.0 : ks_distance(pooled, [k, Gr](double t) {
    return cosh_power_integral(k - 1, std::atanh(t)) / Gr;
  });
  rep.extras = {{"dispersion", m.mean() > 0.0 ? m.variance() / m.mean() : 0.0},
                {"ks_offsets", ks},
                {"offset_count", static_cast<double>(pooled.size())}};
  return rep;
}

}  // namespace hypertess
