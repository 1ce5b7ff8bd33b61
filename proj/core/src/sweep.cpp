#include "ptspec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>

#include "ptspec/eigen.hpp"
#include "ptspec/hamiltonian.hpp"

namespace ptspec {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PTSPEC_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

bool is_real(Complex z, double imagTol) { return std::abs(z.imag()) <= imagTol * std::max(1.0, std::abs(z)); }

bool label_less(const LevelLabel& a, const LevelLabel& b) { return a.n != b.n ? a.n < b.n : a.k < b.k; }

struct Block {
  Parity parity = Parity::Even;
  std::optional<ExactOperatorMatrix> w;
  std::vector<EnergySeries> series;  // one per tracked branch, label order
};

struct Solve {
  double g = 0.0;
  Spectrum spectrum;
  std::vector<std::size_t> candidates;  // indices with vectors
};

Solve solve(const Block& block, double g, std::size_t vectorCount) {
  Solve s;
  s.g = g;
  EigenOptions opt;
  opt.wantVectors = true;
  opt.vectorCount = vectorCount;
  s.spectrum = eigenvalues(build_block(*block.w, g), opt);
  for (std::size_t i = 0; i < s.spectrum.values.size(); ++i)
    if (s.spectrum.has_vector(i)) s.candidates.push_back(i);
  return s;
}

Complex dot(const ComplexVector& a, const ComplexVector& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Norm of the projection of unit v onto span{a, b} (a, b unit).
double projection_norm(const ComplexVector& v, const ComplexVector& a, const ComplexVector& b) {
  Complex ab = dot(a, b);
  double det = 1.0 - std::norm(ab);
  if (det < 1e-12) return std::abs(dot(a, v));
  Complex x = dot(a, v), y = dot(b, v);
  // b^H G^-1 b for the Gram matrix G = [[1, ab], [conj(ab), 1]]
  double q = (std::norm(x) + std::norm(y) - 2.0 * (std::conj(x) * ab * y).real()) / det;
  return std::sqrt(std::max(0.0, q));
}

struct Tracker {
  const Block& block;
  const SweepConfig& cfg;
  std::size_t vectorCount;
  std::vector<Branch> branches;
  std::vector<ComplexVector> current;  // latest vector per branch
  std::size_t refinements = 0;
  std::size_t broken = 0;

  Tracker(const Block& b, const SweepConfig& c) : block(b), cfg(c) {
    const std::size_t tracked = b.series.size();
    vectorCount = tracked + std::max<std::size_t>(6, tracked / 2);
    for (const auto& s : b.series) branches.push_back({s.label, {}});
    current.resize(tracked);
  }

  void record(const Solve& s, const std::vector<std::size_t>& assign, const std::vector<bool>& brokenFlags) {
    const auto& w = s.spectrum.values;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      BranchSample smp;
      smp.g = s.g;
      smp.value = w[assign[i]];
      if (brokenFlags[i]) {
        smp.status = SampleStatus::Broken;
        ++broken;
      } else if (!is_real(smp.value, cfg.imagTol)) {
        smp.status = SampleStatus::ComplexPaired;
        for (std::size_t j = 0; j < branches.size(); ++j)
          if (j != i && std::abs(w[assign[j]] - std::conj(smp.value)) <= 1e-8 * std::max(1.0, std::abs(smp.value)))
            smp.partner = branches[j].label;
      }
      current[i] = s.spectrum.vectors[assign[i]];
      if (cfg.keepVectors) smp.vector = current[i];
      branches[i].samples.push_back(std::move(smp));
    }
  }

  // Lower label of a conjugate pair carries Im > 0.
  void order_pairs(const Solve& s, std::vector<std::size_t>& assign) {
    const auto& w = s.spectrum.values;
    for (std::size_t i = 0; i < assign.size(); ++i)
      for (std::size_t j = i + 1; j < assign.size(); ++j) {
        Complex a = w[assign[i]], b = w[assign[j]];
        if (is_real(a, cfg.imagTol) || std::abs(a - std::conj(b)) > 1e-8 * std::max(1.0, std::abs(a))) continue;
        if (a.imag() < 0.0) std::swap(assign[i], assign[j]);
      }
  }

  void seed(const Solve& s) {
    // Greedy nearest match to the series predictions.
    struct Cand {
      double dist;
      std::size_t branch, cand;
    };
    std::vector<Cand> all;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const double pred = evaluate_series(block.series[i], s.g, 8);
      for (std::size_t c : s.candidates) all.push_back({std::abs(s.spectrum.values[c] - pred), i, c});
    }
    std::stable_sort(all.begin(), all.end(), [](const Cand& a, const Cand& b) { return a.dist < b.dist; });
    std::vector<std::size_t> assign(branches.size(), SIZE_MAX);
    std::vector<bool> used(s.spectrum.values.size(), false);
    for (const auto& c : all) {
      if (assign[c.branch] != SIZE_MAX || used[c.cand]) continue;
      assign[c.branch] = c.cand;
      used[c.cand] = true;
    }
    order_pairs(s, assign);
    record(s, assign, std::vector<bool>(branches.size(), false));
  }

  // Returns the assignment and per-branch match quality.
  std::pair<std::vector<std::size_t>, std::vector<double>> match(const Solve& s) const {
    const auto& vecs = s.spectrum.vectors;
    const auto& w = s.spectrum.values;
    struct Cand {
      double overlap;
      std::size_t branch, cand;
    };
    std::vector<Cand> all;
    for (std::size_t i = 0; i < branches.size(); ++i)
      for (std::size_t c : s.candidates) all.push_back({std::abs(dot(current[i], vecs[c])), i, c});
    std::stable_sort(all.begin(), all.end(), [](const Cand& a, const Cand& b) { return a.overlap > b.overlap; });
    std::vector<std::size_t> assign(branches.size(), SIZE_MAX);
    std::vector<double> quality(branches.size(), 0.0);
    std::vector<bool> used(w.size(), false);
    for (const auto& c : all) {
      if (assign[c.branch] != SIZE_MAX || used[c.cand]) continue;
      assign[c.branch] = c.cand;
      quality[c.branch] = c.overlap;
      used[c.cand] = true;
    }
    // Near a coalescence single vectors rotate fast; the two-dimensional
    // invariant subspace does not.
    for (std::size_t i = 0; i < branches.size(); ++i) {
      if (quality[i] >= cfg.overlapThreshold) continue;
      const std::size_t c = assign[i];
      std::size_t partner = SIZE_MAX;
      double best = 0.0;
      for (std::size_t k : s.candidates) {
        if (k == c) continue;
        double d = std::abs(w[k] - w[c]);
        if (partner == SIZE_MAX || d < best) {
          partner = k;
          best = d;
        }
      }
      bool paired = partner != SIZE_MAX && (std::abs(w[partner] - std::conj(w[c])) <= 1e-8 * std::max(1.0, std::abs(w[c])) ||
                                            best < 0.1);
      if (paired) quality[i] = std::max(quality[i], projection_norm(current[i], vecs[c], vecs[partner]));
    }
    return {assign, quality};
  }

  // True when an eigenvalue without a vector lies closer to a poorly matched
  // branch than the candidate it was given.
  bool outside_window(const Solve& s, const std::vector<std::size_t>& assign, const std::vector<double>& quality) const {
    const auto& w = s.spectrum.values;
    if (s.candidates.size() == w.size()) return false;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      if (quality[i] >= cfg.overlapThreshold) continue;
      const Complex prev = branches[i].samples.back().value;
      const double given = std::abs(w[assign[i]] - prev);
      for (std::size_t k = 0; k < w.size(); ++k)
        if (!s.spectrum.has_vector(k) && std::abs(w[k] - prev) < given) return true;
    }
    return false;
  }

  void advance(double g, const Solve* presolved, int depth) {
    Solve fresh;
    if (!presolved) {
      fresh = solve(block, g, vectorCount);
      presolved = &fresh;
    }
    auto [assign, quality] = match(*presolved);
    double worst = *std::min_element(quality.begin(), quality.end());
    // Complex pairs can push a tracked real level past the lowest
    // vectorCount by real part; widen the window before refining.
    while (worst < cfg.overlapThreshold && outside_window(*presolved, assign, quality)) {
      vectorCount *= 2;
      fresh = solve(block, g, vectorCount);
      presolved = &fresh;
      std::tie(assign, quality) = match(*presolved);
      worst = *std::min_element(quality.begin(), quality.end());
    }
    if (worst < cfg.overlapThreshold && depth < cfg.maxRefinements) {
      ++refinements;
      const double mid = 0.5 * (branches[0].samples.back().g + g);
      advance(mid, nullptr, depth + 1);
      Solve keep = *presolved;
      advance(g, &keep, depth + 1);
      return;
    }
    std::vector<bool> brokenFlags(branches.size(), false);
    if (worst < cfg.overlapThreshold) {
      // Nearest-eigenvalue fallback for the branches that failed.
      std::vector<bool> used(presolved->spectrum.values.size(), false);
      for (std::size_t i = 0; i < branches.size(); ++i)
        if (quality[i] >= cfg.overlapThreshold) used[assign[i]] = true;
      for (std::size_t i = 0; i < branches.size(); ++i) {
        if (quality[i] >= cfg.overlapThreshold) continue;
        brokenFlags[i] = true;
        const Complex prev = branches[i].samples.back().value;
        std::size_t best = SIZE_MAX;
        for (std::size_t c : presolved->candidates)
          if (!used[c] && (best == SIZE_MAX || std::abs(presolved->spectrum.values[c] - prev) <
                                                   std::abs(presolved->spectrum.values[best] - prev)))
            best = c;
        assign[i] = best;
        used[best] = true;
      }
    }
    order_pairs(*presolved, assign);
    record(*presolved, assign, brokenFlags);
  }
};

std::vector<double> make_grid(const SweepConfig& cfg) {
  std::vector<double> grid;
  const double seed = std::min(cfg.initialStep, 0.02);
  if (seed < cfg.initialStep) grid.push_back(seed);
  for (long i = 1;; ++i) {
    double g = cfg.initialStep * static_cast<double>(i);
    if (g >= cfg.gMin - 1e-12) break;
    grid.push_back(g);
  }
  for (long i = 0;; ++i) {
    double g = cfg.gMin + cfg.initialStep * static_cast<double>(i);
    if (g > cfg.gMax + 1e-9 * cfg.initialStep) break;
    if (g > 0.0 && (grid.empty() || g > grid.back() + 1e-12)) grid.push_back(std::min(g, cfg.gMax));
  }
  return grid;
}

void validate(const SweepConfig& cfg) {
  if (!(cfg.gMin >= 0.0) || !(cfg.gMax > cfg.gMin) || !std::isfinite(cfg.gMax))
    throw InvalidArgument("sweep needs 0 <= gMin < gMax (the spectrum is even in g)");
  if (!(cfg.initialStep > 0.0) || !std::isfinite(cfg.initialStep)) throw InvalidArgument("initialStep must be > 0");
  if (!(cfg.overlapThreshold > 0.0 && cfg.overlapThreshold < 1.0))
    throw InvalidArgument("overlapThreshold must lie in (0, 1)");
  if (!(cfg.imagTol > 0.0)) throw InvalidArgument("imagTol must be > 0");
  if (cfg.maxLevel < 0) throw InvalidArgument("maxLevel must be >= 0");
  if (cfg.trunc.maxTotalQuanta < cfg.maxLevel + 2)
    throw InvalidArgument("truncation too small for the tracked levels");
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const unsigned threads = resolve_threads(cfg.threads);

  std::vector<Block> blocks(2);
  blocks[0].parity = Parity::Even;
  blocks[1].parity = Parity::Odd;
  SeriesOptions opt;
  opt.floatFallback = true;
  for (int n = 0; n <= cfg.maxLevel; ++n)
    for (auto& s : effective_series(cfg.which, n, 8, opt)) blocks[s.label.parity == Parity::Even ? 0 : 1].series.push_back(s);
  parallel_for(2, threads, [&](std::size_t b) { blocks[b].w = build_exact_W(cfg.which, blocks[b].parity, cfg.trunc); });

  const std::vector<double> grid = make_grid(cfg);
  std::vector<Tracker> trackers;
  for (const auto& b : blocks) trackers.emplace_back(b, cfg);

  // g = 0: unperturbed values.
  for (auto& t : trackers)
    for (std::size_t i = 0; i < t.branches.size(); ++i) {
      BranchSample smp;
      smp.value = 2.0 * (t.branches[i].label.n + 1);
      t.branches[i].samples.push_back(smp);
    }

  // Grid solves run in parallel chunks; matching is a sequential pass.
  const std::size_t chunk = std::max<std::size_t>(threads * 2, 1);
  bool seeded = false;
  for (std::size_t start = 0; start < grid.size(); start += chunk) {
    const std::size_t stop = std::min(grid.size(), start + chunk);
    std::vector<Solve> solved((stop - start) * 2);
    parallel_for(solved.size(), threads, [&](std::size_t i) {
      const std::size_t b = i % 2;
      solved[i] = solve(blocks[b], grid[start + i / 2], trackers[b].vectorCount);
    });
    for (std::size_t i = start; i < stop; ++i)
      for (std::size_t b = 0; b < 2; ++b) {
        const Solve& s = solved[(i - start) * 2 + b];
        if (!seeded) trackers[b].seed(s);
        else trackers[b].advance(s.g, &s, 0);
      }
    seeded = true;
  }

  SweepResult out;
  out.config = cfg;
  for (auto& t : trackers) {
    out.refinements += t.refinements;
    out.brokenSamples += t.broken;
    for (auto& br : t.branches) {
      Branch kept{br.label, {}};
      for (auto& s : br.samples)
        if (s.g >= cfg.gMin - 1e-12) kept.samples.push_back(std::move(s));
      out.branches.push_back(std::move(kept));
    }
  }
  std::stable_sort(out.branches.begin(), out.branches.end(),
                   [](const Branch& a, const Branch& b) { return label_less(a.label, b.label); });
  return out;
}

namespace {

// Re E of a branch at g by linear interpolation between samples.
double real_at(const Branch& b, double g) {
  const auto& s = b.samples;
  auto it = std::lower_bound(s.begin(), s.end(), g, [](const BranchSample& x, double v) { return x.g < v; });
  if (it == s.end()) return s.back().value.real();
  if (it == s.begin() || it->g == g) return it->value.real();
  auto prev = it - 1;
  double t = (g - prev->g) / (it->g - prev->g);
  return prev->value.real() + t * (it->value.real() - prev->value.real());
}

int rank_at(const std::vector<Branch>& all, std::size_t who, double g) {
  const double mine = real_at(all[who], g);
  int rank = 1;
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (j == who) continue;
    double other = real_at(all[j], g);
    if (other < mine || (other == mine && label_less(all[j].label, all[who].label))) ++rank;
  }
  return rank;
}

bool paired_with(const BranchSample& s, const LevelLabel& other) {
  return s.status == SampleStatus::ComplexPaired && s.partner && *s.partner == other;
}

}  // namespace

std::vector<CrossingEvent> detect_crossings(const SweepResult& sweep) {
  const SweepConfig& cfg = sweep.config;
  const auto& all = sweep.branches;
  std::vector<CrossingEvent> events;

  std::map<int, ExactOperatorMatrix> w;  // keyed by parity
  auto block_at = [&](Parity p, double g) {
    auto it = w.find(static_cast<int>(p));
    if (it == w.end()) it = w.emplace(static_cast<int>(p), build_exact_W(cfg.which, p, cfg.trunc)).first;
    return eigenvalues(build_block(it->second, g)).values;
  };

  // Exceptional points, per parity.
  for (Parity p : {Parity::Even, Parity::Odd}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].parity() == p) idx.push_back(i);
    if (idx.empty()) continue;
    const std::size_t samples = all[idx[0]].samples.size();
    for (std::size_t s = 1; s < samples; ++s) {
      std::vector<CrossingEvent> step;
      for (std::size_t x = 0; x < idx.size(); ++x)
        for (std::size_t y = x + 1; y < idx.size(); ++y) {
          const Branch& A = all[idx[x]];
          const Branch& B = all[idx[y]];
          const bool before = paired_with(A.samples[s - 1], B.label);
          const bool after = paired_with(A.samples[s], B.label);
          if (before == after) continue;
          const bool entering = after;
          double lo = A.samples[s - 1].g, hi = A.samples[s].g;
          const double mean_lo = 0.5 * (A.samples[s - 1].value.real() + B.samples[s - 1].value.real());
          const double mean_hi = 0.5 * (A.samples[s].value.real() + B.samples[s].value.real());
          // Complex side keeps the latest |Im| for the square-root fit.
          double complex_g = entering ? hi : lo;
          double complex_im = std::abs((entering ? A.samples[s] : A.samples[s - 1]).value.imag());
          const double g0 = lo, g1 = hi;
          for (int it = 0; it < cfg.bisectionSteps; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double target = mean_lo + (mean_hi - mean_lo) * (mid - g0) / (g1 - g0);
            auto values = block_at(p, mid);
            Complex nearest = values[0];
            for (const auto& v : values)
              if (std::abs(v.real() - target) < std::abs(nearest.real() - target)) nearest = v;
            const bool complex_mid = !is_real(nearest, cfg.imagTol);
            if (complex_mid) {
              complex_g = mid;
              complex_im = std::abs(nearest.imag());
            }
            if (complex_mid == entering) hi = mid;
            else lo = mid;
          }
          CrossingEvent ev;
          ev.kind = CrossingKind::ExceptionalPoint;
          ev.a = A.label;
          ev.b = B.label;
          ev.entering = entering;
          const double mid = 0.5 * (lo + hi);
          ev.g = mid;
          ev.halfWidth = 0.5 * (hi - lo);
          // Square-root model through the bracket end and the outer sample.
          const double far_g = entering ? A.samples[s].g : A.samples[s - 1].g;
          const double far_im = std::abs((entering ? A.samples[s] : A.samples[s - 1]).value.imag());
          const double i1 = complex_im * complex_im, i2 = far_im * far_im;
          if (far_g != complex_g && i2 != i1) {
            const double gc = (complex_g * i2 - far_g * i1) / (i2 - i1);
            if (std::abs(gc - mid) <= std::max(hi - lo, 1e-12) * 4.0 + ev.halfWidth) {
              ev.g = gc;
              ev.halfWidth = std::max(ev.halfWidth, std::abs(gc - mid));
              ev.sqrtCoefficient = far_im / std::sqrt(std::abs(far_g - gc));
            }
          }
          const double g_before = entering ? A.samples[s - 1].g : A.samples[s].g;
          ev.rankA = rank_at(all, idx[x], g_before);
          ev.rankB = rank_at(all, idx[y], g_before);
          step.push_back(ev);
        }
      // Two coalescences on top of each other within one step.
      std::vector<bool> merged(step.size(), false);
      for (std::size_t i = 0; i < step.size(); ++i) {
        if (merged[i]) continue;
        CrossingEvent multi;
        multi.kind = CrossingKind::MultiBranch;
        multi.members = {step[i].a, step[i].b};
        for (std::size_t j = i + 1; j < step.size(); ++j) {
          if (merged[j] || step[j].entering != step[i].entering) continue;
          if (std::abs(step[j].g - step[i].g) > 2.0 * cfg.initialStep) continue;
          bool shares = false;
          for (const auto& m : multi.members)
            if (m == step[j].a || m == step[j].b) shares = true;
          if (!shares) continue;
          merged[j] = true;
          for (const auto& m : {step[j].a, step[j].b})
            if (std::find(multi.members.begin(), multi.members.end(), m) == multi.members.end())
              multi.members.push_back(m);
        }
        if (multi.members.size() > 2) {
          multi.g = step[i].g;
          multi.halfWidth = cfg.initialStep;
          multi.a = multi.members[0];
          multi.b = multi.members[1];
          multi.entering = step[i].entering;
          events.push_back(multi);
        } else {
          events.push_back(step[i]);
        }
      }
    }
  }

  // Real crossings between opposite parities on their shared samples.
  for (std::size_t x = 0; x < all.size(); ++x) {
    if (all[x].parity() != Parity::Even) continue;
    std::map<double, std::size_t> at_x;
    for (std::size_t s = 0; s < all[x].samples.size(); ++s) at_x[all[x].samples[s].g] = s;
    for (std::size_t y = 0; y < all.size(); ++y) {
      if (all[y].parity() != Parity::Odd) continue;
      const Branch& A = all[x];
      const Branch& B = all[y];
      bool have_prev = false;
      double prev_g = 0.0, prev_d = 0.0;
      for (const auto& sb : B.samples) {
        auto it = at_x.find(sb.g);
        if (it == at_x.end()) continue;
        const BranchSample& sa = A.samples[it->second];
        const bool both_real = sa.status == SampleStatus::Real && sb.status == SampleStatus::Real;
        const double d = sa.value.real() - sb.value.real();
        const double tol = 1e-8 * std::max(1.0, std::abs(sa.value));
        if (!both_real) {
          have_prev = false;
          continue;
        }
        if (std::abs(d) <= tol) continue;  // degenerate: keep the last decided sign
        if (have_prev && (d > 0) != (prev_d > 0)) {
          CrossingEvent ev;
          ev.kind = CrossingKind::RealCrossing;
          ev.g = prev_g + (sb.g - prev_g) * prev_d / (prev_d - d);
          ev.halfWidth = 0.5 * (sb.g - prev_g);
          const bool a_first = label_less(A.label, B.label);
          ev.a = a_first ? A.label : B.label;
          ev.b = a_first ? B.label : A.label;
          ev.rankA = rank_at(all, a_first ? x : y, prev_g);
          ev.rankB = rank_at(all, a_first ? y : x, prev_g);
          events.push_back(ev);
        }
        have_prev = true;
        prev_g = sb.g;
        prev_d = d;
      }
    }
  }

  std::stable_sort(events.begin(), events.end(), [](const CrossingEvent& a, const CrossingEvent& b) {
    if (a.g != b.g) return a.g < b.g;
    return label_less(a.a, b.a);
  });
  return events;
}

ConvergenceTable convergence_study(Model which, double g, std::size_t levelCount, const std::vector<int>& truncations,
                                   double tolerance) {
  if (!std::is_sorted(truncations.begin(), truncations.end()) ||
      std::adjacent_find(truncations.begin(), truncations.end()) != truncations.end())
    throw InvalidArgument("truncations must be strictly ascending");
  if (!std::isfinite(g)) throw InvalidArgument("coupling must be finite");
  ConvergenceTable table;
  for (int n : truncations) {
    if (n < 0) throw InvalidArgument("truncation must be non-negative");
    std::vector<Complex> values;
    for (Parity p : {Parity::Even, Parity::Odd}) {
      if (sector_size(p, {n}) == 0) continue;
      auto sp = eigenvalues(build_block({which, g, p, {n}}));
      values.insert(values.end(), sp.values.begin(), sp.values.end());
    }
    std::stable_sort(values.begin(), values.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    if (values.size() < levelCount) throw InvalidArgument("truncation smaller than the requested level count");
    values.resize(levelCount);
    ConvergenceRow row;
    row.truncation = n;
    if (!table.rows.empty()) {
      double change = 0.0;
      for (std::size_t i = 0; i < levelCount; ++i)
        change = std::max(change, std::abs(values[i] - table.rows.back().values[i]));
      row.change = change;
      if (!table.convergedAt && change < tolerance) table.convergedAt = n;
    }
    row.values = std::move(values);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<OnsetEntry> onset_trend(const std::vector<CrossingEvent>& events, int minLevel, int maxLevel) {
  std::vector<OnsetEntry> out;
  auto inside = [&](const LevelLabel& l) { return l.n >= minLevel && l.n <= maxLevel; };
  for (const auto& ev : events) {
    if (ev.kind != CrossingKind::ExceptionalPoint || !ev.entering) continue;
    if (!inside(ev.a) || !inside(ev.b)) continue;
    auto same = [&](const OnsetEntry& e) { return e.a == ev.a && e.b == ev.b; };
    auto it = std::find_if(out.begin(), out.end(), same);
    if (it == out.end()) out.push_back({ev.a, ev.b, ev.g});
    else it->g = std::min(it->g, ev.g);
  }
  std::stable_sort(out.begin(), out.end(), [](const OnsetEntry& x, const OnsetEntry& y) {
    int lx = std::max(x.a.n, x.b.n), ly = std::max(y.a.n, y.b.n);
    return lx != ly ? lx < ly : x.g < y.g;
  });
  return out;
}

std::vector<OnsetEntry> onset_trend(Model which, int minLevel, int maxLevel, SweepConfig cfg) {
  if (maxLevel < minLevel || maxLevel < 0) return {};
  cfg.which = which;
  cfg.maxLevel = maxLevel;
  return onset_trend(detect_crossings(run_sweep(cfg)), minLevel, maxLevel);
}

}  // namespace ptspec
