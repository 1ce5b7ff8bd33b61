#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ptspec/basis.hpp"
#include "ptspec/matrix.hpp"
#include "ptspec/model.hpp"
#include "ptspec/perturb.hpp"

namespace ptspec {

struct SweepConfig {
  Model which = Model::Cubic12;
  double gMin = 0.0;
  double gMax = 6.0;
  double initialStep = 0.02;
  TruncationScheme trunc{50};
  /// Smallest accepted eigenvector overlap before the step is halved.
  double overlapThreshold = 0.7;
  /// |Im E| <= imagTol * max(1, |E|) counts as real.
  double imagTol = 1e-7;
  /// Every branch of the levels n <= maxLevel is tracked.
  int maxLevel = 6;
  int maxRefinements = 8;
  /// Bisection steps when locating an exceptional point.
  int bisectionSteps = 12;
  /// Keep eigenvectors in the branch samples.
  bool keepVectors = false;
  /// Worker threads for diagonalization; 0 reads PTSPEC_THREADS, then the
  /// hardware concurrency.
  unsigned threads = 0;
};

enum class SampleStatus { Real, ComplexPaired, Broken };

struct BranchSample {
  double g = 0.0;
  Complex value;
  SampleStatus status = SampleStatus::Real;
  /// Conjugate partner when complexPaired and the partner is tracked.
  std::optional<LevelLabel> partner;
  ComplexVector vector;
};

struct Branch {
  LevelLabel label;
  std::vector<BranchSample> samples;  // strictly increasing g

  Parity parity() const { return label.parity; }
};

struct SweepResult {
  SweepConfig config;
  std::vector<Branch> branches;  // sorted by (n, k)
  std::size_t refinements = 0;
  std::size_t brokenSamples = 0;
};

/// Diagonalizes both parity blocks along the g grid and follows every branch
/// of levels 0..maxLevel. Branch labels come from the perturbative labelling
/// at small g; later samples are matched by Hermitian eigenvector overlap.
/// The grid always starts at g = 0; samples below gMin are dropped from the
/// result. Throws InvalidArgument for invalid configurations.
SweepResult run_sweep(const SweepConfig& cfg);

enum class CrossingKind { RealCrossing, ExceptionalPoint, MultiBranch };

struct CrossingEvent {
  CrossingKind kind = CrossingKind::RealCrossing;
  double g = 0.0;
  double halfWidth = 0.0;
  LevelLabel a;
  LevelLabel b;
  /// 1-based rank by Re E among the tracked branches at the last sample
  /// before the event.
  int rankA = 0;
  int rankB = 0;
  /// Exceptional points: true when a real pair turns into a complex pair.
  bool entering = true;
  /// Exceptional points: |Im E| ~ sqrtCoefficient * sqrt(|g - g_c|).
  double sqrtCoefficient = 0.0;
  /// Multi-branch events: every branch involved.
  std::vector<LevelLabel> members;
};

/// Exceptional points (same parity, located by bisection on the block and a
/// square-root fit) and real crossings (opposite parity, sign change of the
/// real difference). Sorted by g.
std::vector<CrossingEvent> detect_crossings(const SweepResult& sweep);

struct ConvergenceRow {
  int truncation = 0;
  std::vector<Complex> values;  // lowest levelCount, sorted by (Re, Im)
  /// max |E_N - E_previous N|; absent for the first truncation.
  std::optional<double> change;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Smallest truncation whose change is below the tolerance.
  std::optional<int> convergedAt;
};

ConvergenceTable convergence_study(Model which, double g, std::size_t levelCount, const std::vector<int>& truncations,
                                   double tolerance = 1e-8);

struct OnsetEntry {
  LevelLabel a;
  LevelLabel b;
  double g = 0.0;
};

/// First exceptional point of every same-parity pair of branches with levels
/// in [minLevel, maxLevel], sorted by the larger level, then g.
std::vector<OnsetEntry> onset_trend(const std::vector<CrossingEvent>& events, int minLevel, int maxLevel);
std::vector<OnsetEntry> onset_trend(Model which, int minLevel, int maxLevel, SweepConfig cfg);

/// Threads used for a requested count (0: PTSPEC_THREADS or hardware).
unsigned resolve_threads(unsigned requested);

}  // namespace ptspec
