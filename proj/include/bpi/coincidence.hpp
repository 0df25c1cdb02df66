#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bpi/biphoton.hpp"

namespace bpi {

/// Stream seed for sub-stream `index` of `master` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Portable draws on top of mt19937_64; identical sequences on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1).
  double uniform();
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

/// Tabulated inverse CDF of the density proportional to g2_steady(tau).
class SeparationSampler {
 public:
  static constexpr std::size_t default_nodes = 8192;

  SeparationSampler(const InterferometerConfig& cfg, const DelayPair& delays,
                    std::size_t nodes = default_nodes);

  /// Maps u in [0,1) to a separation by linear interpolation of the CDF.
  double quantile(double u) const;
  /// Tabulated CDF, linear between nodes.
  double cdf(double tau) const;
  /// Probability mass with |tau| <= half_width.
  double window_fraction(double half_width) const;

  double lower() const { return grid_.front(); }
  double upper() const { return grid_.back(); }
  /// Integral of g2_steady over the tabulated span (trapezoid).
  double total_mass() const { return mass_; }

 private:
  std::vector<double> grid_;
  std::vector<double> cdf_;
  std::vector<std::uint32_t> guide_;
  double mass_ = 0.0;
};

struct PairTimes {
  double t1 = 0.0;
  double t2 = 0.0;
};

struct EventBatch {
  std::vector<PairTimes> pairs;
  std::uint64_t seed = 0;
  std::size_t n_pairs = 0;
  std::size_t n_accidentals = 0;
  double accidental_rate = 0.0;
};

struct SamplingOptions {
  double accumulation = 1e-9;   // S0; t1 is uniform over [-S0/2, S0/2]
  double accidental_rate = 0.0; // uncorrelated pairs per second
  std::size_t nodes = SeparationSampler::default_nodes;
};

/// Draws n correlated pairs (plus Poisson accidentals) with tau = t2 - t1
/// distributed as g2_steady.
EventBatch sample_pair_separations(std::size_t n, const InterferometerConfig& cfg,
                                   const DelayPair& delays, std::uint64_t seed,
                                   const SamplingOptions& options = {});
EventBatch sample_pair_separations(std::size_t n, const SeparationSampler& sampler, std::uint64_t seed,
                                   const SamplingOptions& options = {});

/// Pairs with |t1 - t2| <= width / 2.
std::uint64_t count_coincidences(const EventBatch& batch, double window_width);

void write_events_csv(const EventBatch& batch, const std::string& path);

struct CoincidencePoint {
  double delay = 0.0;
  std::uint64_t counted = 0;
  double expected = 0.0;
  CoincidenceWindow window;
};

struct McScanOptions {
  std::size_t pairs_per_point = 10000;  // mean pairs at the off-dip baseline
  std::uint64_t seed = 1;
  CoincidenceWindow window{1e-9, 0.0};  // width 0 selects 20 coherence widths plus the scan span
  double accidental_rate = 0.0;
  unsigned workers = 0;                 // 0 = hardware concurrency
  std::optional<std::size_t> keep_events_index;
  std::size_t sampler_nodes = SeparationSampler::default_nodes;
};

struct McScan {
  DipCurve curve;  // rate = C * counted / pairs_per_point
  std::vector<CoincidencePoint> counts;
  std::optional<EventBatch> events;
};

/// Event-level Monte-Carlo dip scan. Every grid point draws from its own
/// sub-seeded stream, so the result does not depend on the worker count.
McScan mc_dip_scan(const InterferometerConfig& cfg, double delta_tau_p, std::span<const double> grid,
                   const McScanOptions& options);

/// Coincidence window wide enough to capture both kernel lobes anywhere on the grid.
double default_window_width(const InterferometerConfig& cfg, double delta_tau_p,
                            std::span<const double> grid);

/// Runs job(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& job);

}  // namespace bpi
