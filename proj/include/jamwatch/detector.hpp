#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jamwatch {

enum class Decision { H0, H1 };

/// H1 (jammed) when score >= tau.
constexpr Decision decide(double score, double tau) { return score >= tau ? Decision::H1 : Decision::H0; }

enum class ScoreKind { ReconstructionError, ClassProbability };

std::string_view to_string(ScoreKind k);

struct SweepPoint {
  double tau = 0;
  double p_fa = 0;  // fraction of trusted scores >= tau
  double p_md = 0;  // fraction of jammed scores < tau
};

struct SweepCurve {
  std::vector<SweepPoint> points;
  ScoreKind score_kind = ScoreKind::ReconstructionError;
};

/// 512 thresholds by default. Class probabilities get a linear grid over
/// [0, 1]; reconstruction errors a log grid from min/1.25 to max*1.25 of the
/// pooled scores (linear with a 5% margin if any score is <= 0).
std::vector<double> default_grid(std::span<const double> trusted, std::span<const double> jammed,
                                 ScoreKind kind, std::size_t points = 512);

/// Throws ArgumentError for empty score sets or a grid that is not strictly
/// increasing.
SweepCurve sweep(std::span<const double> trusted, std::span<const double> jammed, std::span<const double> grid,
                 ScoreKind kind);
SweepCurve sweep(std::span<const double> trusted, std::span<const double> jammed, ScoreKind kind);

struct Interval {
  double lo = 0;
  double hi = 0;
};

/// First and last grid threshold with p_fa = p_md = 0, if any.
std::optional<Interval> zero_error_interval(const SweepCurve& curve);

/// Exact error-free threshold set (max trusted, min jammed] when the scores
/// are separated; nullopt otherwise.
std::optional<Interval> separating_interval(std::span<const double> trusted, std::span<const double> jammed);

/// "tau,p_fa,p_md" with 17 significant digits.
std::string to_csv(const SweepCurve& curve);

}  // namespace jamwatch
