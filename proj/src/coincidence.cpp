#include "bpi/coincidence.hpp"

#include <boost/random/poisson_distribution.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "bpi/error.hpp"

namespace bpi {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidArgument("Poisson mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0;
  boost::random::poisson_distribution<std::uint64_t, double> dist(mean);
  return dist(engine_);
}

SeparationSampler::SeparationSampler(const InterferometerConfig& cfg, const DelayPair& delays, std::size_t nodes) {
  cfg.validate();
  if (nodes < 2) throw InvalidArgument("sampler needs at least two nodes");
  const double bw = cfg.effective_bandwidth();
  const double dtp = delays.difference();
  const double mirror = 2.0 * cfg.effective_delay() - dtp;
  const double lo = std::min(dtp, mirror) - 8.0 / bw;
  const double hi = std::max(dtp, mirror) + 8.0 / bw;
  // Keep the node spacing below 1/400 of the kernel width on wide spans.
  nodes = std::max<std::size_t>(nodes, static_cast<std::size_t>(std::ceil((hi - lo) * bw * 400.0)));

  grid_ = linear_grid(lo, hi, nodes);
  cdf_.assign(nodes, 0.0);
  double prev = g2_steady(grid_[0], cfg, delays);
  for (std::size_t i = 1; i < nodes; ++i) {
    const double cur = g2_steady(grid_[i], cfg, delays);
    cdf_[i] = cdf_[i - 1] + 0.5 * (prev + cur) * (grid_[i] - grid_[i - 1]);
    prev = cur;
  }
  mass_ = cdf_.back();
  // Cancellation residue at a balanced null counts as no signal.
  if (mass_ <= 1e-12 * steady_normalization(cfg)) mass_ = 0.0;
  if (mass_ > 0.0) {
    for (auto& c : cdf_) c /= mass_;
    cdf_.back() = 1.0;
    guide_.resize(nodes);
    std::size_t j = 0;
    for (std::size_t g = 0; g < nodes; ++g) {
      const double target = static_cast<double>(g) / static_cast<double>(nodes);
      while (j + 1 < nodes && cdf_[j + 1] <= target) ++j;
      guide_[g] = static_cast<std::uint32_t>(j);
    }
  }
}

double SeparationSampler::quantile(double u) const {
  if (mass_ <= 0.0) throw NumericalError("separation density is numerically zero everywhere");
  const std::size_t n = grid_.size();
  std::size_t j = guide_[std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)))];
  while (j + 2 < n && cdf_[j + 1] <= u) ++j;
  const double c0 = cdf_[j];
  const double c1 = cdf_[j + 1];
  const double f = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
  return grid_[j] + f * (grid_[j + 1] - grid_[j]);
}

double SeparationSampler::cdf(double tau) const {
  if (tau <= grid_.front()) return 0.0;
  if (tau >= grid_.back()) return 1.0;
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), tau);
  const std::size_t j = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double f = (tau - grid_[j]) / (grid_[j + 1] - grid_[j]);
  return cdf_[j] + f * (cdf_[j + 1] - cdf_[j]);
}

double SeparationSampler::window_fraction(double half_width) const {
  if (mass_ <= 0.0) return 0.0;
  return cdf(half_width) - cdf(-half_width);
}

namespace {

void check_options(const SamplingOptions& options) {
  if (!(options.accumulation > 0.0)) throw InvalidArgument("accumulation time must be positive");
  if (!(options.accidental_rate >= 0.0)) throw InvalidArgument("accidental rate must be non-negative");
}

// Shared by batch sampling and the streaming counter so both consume the
// random stream identically.
template <class Sink>
std::size_t generate_pairs(std::size_t n, const SeparationSampler& sampler, std::uint64_t seed,
                           const SamplingOptions& options, Sink&& sink) {
  RandomStream rng(seed);
  const double s0 = options.accumulation;
  for (std::size_t i = 0; i < n; ++i) {
    const double t1 = (rng.uniform() - 0.5) * s0;
    const double tau = sampler.quantile(rng.uniform());
    sink(t1, t1 + tau);
  }
  std::size_t accidentals = 0;
  if (options.accidental_rate > 0.0) {
    accidentals = rng.poisson(options.accidental_rate * s0);
    const double lo = sampler.lower();
    const double span = sampler.upper() - lo;
    for (std::size_t i = 0; i < accidentals; ++i) {
      const double t1 = (rng.uniform() - 0.5) * s0;
      const double tau = lo + span * rng.uniform();
      sink(t1, t1 + tau);
    }
  }
  return accidentals;
}

}  // namespace

EventBatch sample_pair_separations(std::size_t n, const SeparationSampler& sampler, std::uint64_t seed,
                                   const SamplingOptions& options) {
  check_options(options);
  EventBatch batch;
  batch.seed = seed;
  batch.n_pairs = n;
  batch.accidental_rate = options.accidental_rate;
  batch.pairs.reserve(n);
  batch.n_accidentals = generate_pairs(n, sampler, seed, options,
                                       [&](double t1, double t2) { batch.pairs.push_back({t1, t2}); });
  return batch;
}

EventBatch sample_pair_separations(std::size_t n, const InterferometerConfig& cfg, const DelayPair& delays,
                                   std::uint64_t seed, const SamplingOptions& options) {
  check_options(options);
  if (n == 0 && options.accidental_rate == 0.0) {
    EventBatch empty;
    empty.seed = seed;
    return empty;
  }
  const SeparationSampler sampler(cfg, delays, options.nodes);
  return sample_pair_separations(n, sampler, seed, options);
}

std::uint64_t count_coincidences(const EventBatch& batch, double window_width) {
  if (!(window_width >= 0.0)) throw InvalidArgument("coincidence window width must be non-negative");
  const double half = 0.5 * window_width;
  return static_cast<std::uint64_t>(std::count_if(batch.pairs.begin(), batch.pairs.end(),
                                                  [&](const PairTimes& p) { return std::abs(p.t1 - p.t2) <= half; }));
}

void write_events_csv(const EventBatch& batch, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "t1_s,t2_s\n";
  char line[64];
  for (const auto& p : batch.pairs) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g\n", p.t1, p.t2);
    out << line;
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& job) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

double default_window_width(const InterferometerConfig& cfg, double delta_tau_p, std::span<const double> grid) {
  const double offset = cfg.with_delay(0.0).effective_delay();
  double reach = std::abs(delta_tau_p);
  for (double d : grid) {
    reach = std::max(reach, std::abs(2.0 * (d + offset) - delta_tau_p));
  }
  return 2.0 * (reach + 10.0 / cfg.effective_bandwidth());
}

McScan mc_dip_scan(const InterferometerConfig& cfg, double delta_tau_p, std::span<const double> grid,
                   const McScanOptions& options) {
  cfg.validate();
  if (options.pairs_per_point < 1) throw InvalidArgument("pairs_per_point must be at least 1");
  if (!std::is_sorted(grid.begin(), grid.end())) throw InvalidArgument("delay grid must be sorted");
  if (options.keep_events_index && *options.keep_events_index >= grid.size()) {
    throw InvalidArgument("events index outside the delay grid");
  }

  CoincidenceWindow window = options.window;
  if (window.width == 0.0) window.width = default_window_width(cfg, delta_tau_p, grid);
  const double half = 0.5 * window.width;

  SamplingOptions sampling;
  sampling.accumulation = window.accumulation;
  sampling.accidental_rate = options.accidental_rate;
  sampling.nodes = options.sampler_nodes;
  check_options(sampling);

  const double baseline_mass = steady_normalization(cfg);
  const DelayPair delays{delta_tau_p, 0.0};

  McScan scan;
  scan.counts.resize(grid.size());
  scan.curve.normalization = cfg.normalization;
  scan.curve.visibility = cfg.visibility();
  scan.curve.dip_center = delta_tau_p - cfg.with_delay(0.0).effective_delay();
  scan.curve.width_param = cfg.effective_bandwidth();
  scan.curve.samples.resize(grid.size());

  parallel_for(grid.size(), options.workers, [&](std::size_t i) {
    const auto point_cfg = cfg.with_delay(grid[i]);
    const SeparationSampler sampler(point_cfg, delays, sampling.nodes);
    const double mean_pairs = static_cast<double>(options.pairs_per_point) * sampler.total_mass() / baseline_mass;

    const std::uint64_t point_seed = derive_seed(options.seed, i);
    RandomStream count_rng(derive_seed(point_seed, 0));
    const std::uint64_t n = count_rng.poisson(mean_pairs);
    const std::uint64_t batch_seed = derive_seed(point_seed, 1);

    double expected = mean_pairs * sampler.window_fraction(half);
    if (options.accidental_rate > 0.0) {
      const double lo = sampler.lower();
      const double hi = sampler.upper();
      const double overlap = std::max(0.0, std::min(hi, half) - std::max(lo, -half));
      expected += options.accidental_rate * window.accumulation * overlap / (hi - lo);
    }

    std::uint64_t counted = 0;
    if (options.keep_events_index && *options.keep_events_index == i) {
      auto batch = (n > 0 || options.accidental_rate > 0.0)
                       ? sample_pair_separations(n, sampler, batch_seed, sampling)
                       : EventBatch{{}, batch_seed, 0, 0, 0.0};
      counted = count_coincidences(batch, window.width);
      scan.events = std::move(batch);
    } else if (n > 0 || options.accidental_rate > 0.0) {
      generate_pairs(n, sampler, batch_seed, sampling, [&](double t1, double t2) {
        if (std::abs(t1 - t2) <= half) ++counted;
      });
    }

    scan.counts[i] = CoincidencePoint{grid[i], counted, expected, window};
    scan.curve.samples[i] = DipSample{
        grid[i], cfg.normalization * static_cast<double>(counted) / static_cast<double>(options.pairs_per_point)};
  });
  return scan;
}

}  // namespace bpi
