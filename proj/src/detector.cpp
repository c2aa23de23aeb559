#include "jamwatch/detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "jamwatch/error.hpp"

namespace jamwatch {

std::string_view to_string(ScoreKind k) {
  return k == ScoreKind::ReconstructionError ? "reconstruction_error" : "class_probability";
}

namespace {

void require_nonempty(std::span<const double> trusted, std::span<const double> jammed) {
  if (trusted.empty() || jammed.empty()) throw ArgumentError("sweep needs non-empty trusted and jammed score sets");
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

}  // namespace

std::vector<double> default_grid(std::span<const double> trusted, std::span<const double> jammed, ScoreKind kind,
                                 std::size_t points) {
  require_nonempty(trusted, jammed);
  if (points < 2) throw ArgumentError("grid needs at least 2 points");
  if (kind == ScoreKind::ClassProbability) return linspace(0.0, 1.0, points);

  const auto [tmin, tmax] = std::minmax_element(trusted.begin(), trusted.end());
  const auto [jmin, jmax] = std::minmax_element(jammed.begin(), jammed.end());
  const double lo = std::min(*tmin, *jmin), hi = std::max(*tmax, *jmax);
  if (lo > 0) {
    auto g = linspace(std::log(lo / 1.25), std::log(hi * 1.25), points);
    for (double& v : g) v = std::exp(v);
    return g;
  }
  const double margin = hi > lo ? 0.05 * (hi - lo) : 1.0;
  return linspace(lo - margin, hi + margin, points);
}

SweepCurve sweep(std::span<const double> trusted, std::span<const double> jammed, std::span<const double> grid,
                 ScoreKind kind) {
  require_nonempty(trusted, jammed);
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ArgumentError("threshold grid must be strictly increasing");

  std::vector<double> t(trusted.begin(), trusted.end()), j(jammed.begin(), jammed.end());
  std::sort(t.begin(), t.end());
  std::sort(j.begin(), j.end());
  const auto n0 = static_cast<double>(t.size()), n1 = static_cast<double>(j.size());

  SweepCurve c;
  c.score_kind = kind;
  c.points.reserve(grid.size());
  for (double tau : grid) {
    // count(score < tau) is the lower_bound position in sorted order
    const auto t_below = std::lower_bound(t.begin(), t.end(), tau) - t.begin();
    const auto j_below = std::lower_bound(j.begin(), j.end(), tau) - j.begin();
    c.points.push_back({tau, static_cast<double>(static_cast<std::ptrdiff_t>(t.size()) - t_below) / n0,
                        static_cast<double>(j_below) / n1});
  }
  return c;
}

SweepCurve sweep(std::span<const double> trusted, std::span<const double> jammed, ScoreKind kind) {
  const auto grid = default_grid(trusted, jammed, kind);
  return sweep(trusted, jammed, grid, kind);
}

std::optional<Interval> zero_error_interval(const SweepCurve& curve) {
  std::optional<Interval> out;
  for (const auto& p : curve.points) {
    if (p.p_fa != 0.0 || p.p_md != 0.0) continue;
    if (!out) out = Interval{p.tau, p.tau};
    else out->hi = p.tau;
  }
  return out;
}

std::optional<Interval> separating_interval(std::span<const double> trusted, std::span<const double> jammed) {
  require_nonempty(trusted, jammed);
  const double max_t = *std::max_element(trusted.begin(), trusted.end());
  const double min_j = *std::min_element(jammed.begin(), jammed.end());
  if (max_t < min_j) return Interval{max_t, min_j};
  return std::nullopt;
}

std::string to_csv(const SweepCurve& curve) {
  std::string out = "tau,p_fa,p_md\n";
  char line[96];
  for (const auto& p : curve.points) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", p.tau, p.p_fa, p.p_md);
    out += line;
  }
  return out;
}

}  // namespace jamwatch
