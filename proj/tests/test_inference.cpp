#include <doctest.h>

#include "test_support.hpp"

#include <cmath>
#include <random>

#include "bpi/constants.hpp"
#include "bpi/error.hpp"
#include "bpi/inference.hpp"

using namespace bpi;

namespace {

InterferometerConfig fig_config() { return make_interferometer(0.45, 10e-15, 0.5e-6); }

std::vector<double> steady_rates(const InterferometerConfig& cfg, double dtp, const std::vector<double>& grid) {
  std::vector<double> r;
  for (double d : grid) r.push_back(rc_steady(cfg.with_delay(d), dtp));
  return r;
}

}  // namespace

TEST_CASE("noiseless dip is recovered exactly") {
  const auto cfg = fig_config();
  const auto grid = linear_grid(-7e-15, 13e-15, 41);
  const auto fit = fit_dip(scan_steady(cfg, 3e-15, grid));
  CHECK(fit.converged);
  CHECK(fit.normalization() == rel(1.0).epsilon(1e-6));
  CHECK(fit.visibility() == rel(cfg.visibility()).epsilon(1e-6));
  CHECK(fit.center() == rel(3e-15).epsilon(1e-6));
  CHECK(fit.bandwidth() == rel(cfg.bandwidth).epsilon(1e-6));
  CHECK(fit.residual_norm < 1e-9);
  CHECK(fit.iterations <= 200);
}

TEST_CASE("symmetric data centres at zero") {
  const auto cfg = fig_config();
  const auto grid = linear_grid(-10e-15, 10e-15, 31);
  const auto fit = fit_dip(scan_steady(cfg, 0.0, grid));
  CHECK(std::abs(fit.center()) < 1e-10 / cfg.bandwidth);
}

TEST_CASE("fit equivariance") {
  const auto cfg = fig_config();
  auto grid = linear_grid(-7e-15, 13e-15, 33);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.01);
  auto rates = steady_rates(cfg, 2e-15, grid);
  for (auto& r : rates) r += noise(rng);
  const auto base = fit_dip(grid, rates, {});

  const double shift = 4.2e-15;
  std::vector<double> moved(grid);
  for (auto& d : moved) d += shift;
  const auto translated = fit_dip(moved, rates, {});
  CHECK(translated.center() - shift == rel(base.center()).epsilon(1e-9).scale(1e-15));
  CHECK(translated.visibility() == rel(base.visibility()).epsilon(1e-9));
  CHECK(translated.bandwidth() == rel(base.bandwidth()).epsilon(1e-9));

  std::vector<double> scaled(rates);
  for (auto& r : scaled) r *= 37.5;
  const auto rescaled = fit_dip(grid, scaled, {});
  CHECK(rescaled.normalization() == rel(37.5 * base.normalization()).epsilon(1e-9));
  CHECK(rescaled.center() == rel(base.center()).epsilon(1e-9));
  CHECK(rescaled.visibility() == rel(base.visibility()).epsilon(1e-9));
  CHECK(rescaled.standard_error[2] == rel(base.standard_error[2]).epsilon(1e-6));
}

TEST_CASE("fixed bandwidth") {
  const auto cfg = fig_config();
  const auto grid = linear_grid(-7e-15, 13e-15, 41);
  DipFitOptions opts;
  opts.fix_bandwidth = true;
  opts.fixed_bandwidth = cfg.bandwidth;
  const auto fit = fit_dip(scan_steady(cfg, 3e-15, grid), opts);
  CHECK(fit.bandwidth() == cfg.bandwidth);
  CHECK(fit.standard_error[3] == 0.0);
  CHECK(fit.center() == rel(3e-15).epsilon(1e-8));
}

TEST_CASE("fit failures") {
  const auto grid = linear_grid(-7e-15, 13e-15, 21);
  std::vector<double> flat(grid.size(), 1.0);
  CHECK_THROWS_AS(fit_dip(grid, flat, {}), FitError);

  std::vector<double> few(grid.begin(), grid.begin() + 5);
  std::vector<double> few_rates{1.0, 0.5, 0.02, 0.5, 1.0};
  CHECK_THROWS_AS(fit_dip(few, few_rates, {}), InvalidArgument);

  // Two distinct delays cannot pin four parameters.
  std::vector<double> x{-1e-15, -1e-15, -1e-15, -1e-15, 1e-15, 1e-15, 1e-15, 1e-15};
  std::vector<double> y{1.0, 1.0, 1.0, 1.0, 0.1, 0.1, 0.1, 0.1};
  try {
    fit_dip(x, y, {});
    FAIL("rank-deficient fit did not throw");
  } catch (const FitError& e) {
    CHECK(!e.parameter().empty());
    CHECK(std::string(e.what()).find(e.parameter()) != std::string::npos);
  }
}

TEST_CASE("coverage of the reported standard error") {
  const auto cfg = fig_config();
  const double truth = 3e-15;
  const auto grid = linear_grid(-7e-15, 13e-15, 21);
  McScanOptions mc;
  mc.pairs_per_point = 100000;
  int covered = 0;
  const int trials = 100;
  for (int k = 0; k < trials; ++k) {
    mc.seed = derive_seed(555, k);
    const auto scan = mc_dip_scan(cfg, truth, grid, mc);
    const auto fit = fit_dip(std::span<const CoincidencePoint>(scan.counts));
    covered += std::abs(fit.center() - truth) < 3.0 * fit.standard_error[2];
  }
  CHECK(covered >= 95);
}

TEST_CASE("count fit normalisation is in counts") {
  const auto cfg = fig_config();
  const auto grid = linear_grid(-7e-15, 13e-15, 21);
  McScanOptions mc;
  mc.pairs_per_point = 50000;
  const auto scan = mc_dip_scan(cfg, 3e-15, grid, mc);
  const auto fit = fit_dip(std::span<const CoincidencePoint>(scan.counts));
  CHECK(fit.normalization() == rel(50000.0).epsilon(0.02));
}

TEST_CASE("precision scaling") {
  const auto cfg = fig_config();
  const auto grid = linear_grid(-7e-15, 13e-15, 21);
  const std::vector<std::size_t> n_list{300, 3000, 30000};
  ScalingOptions opts;
  opts.trials = 30;
  opts.seed = 12;
  const auto study = precision_scaling(cfg, 3e-15, grid, n_list, opts);
  REQUIRE(study.rows.size() == 3);
  for (std::size_t i = 0; i < study.rows.size(); ++i) {
    CHECK(study.rows[i].pairs_per_point == n_list[i]);
    CHECK(study.rows[i].trials + study.rows[i].failures == 30);
    CHECK(std::abs(study.rows[i].bias) < 5.0 * study.rows[i].bias_standard_error);
  }
  CHECK(study.slope == rel(-0.5).epsilon(0.2));
  CHECK(study.slope_error > 0.0);

  opts.trials = 60;
  const auto doubled = precision_scaling(cfg, 3e-15, grid, n_list, opts);
  CHECK(std::abs(doubled.slope - study.slope) < study.slope_error + doubled.slope_error);

  // Quantum bound: extrapolated classical spread at 100 detected pairs.
  const double per_point = 100.0 / static_cast<double>(grid.size());
  const double std100 =
      study.rows[0].std_dev * std::pow(per_point / static_cast<double>(n_list[0]), study.slope);
  const auto bound = sensitivity_limit({cfg.omega_pump / 2.0, 1.0, 100.0, shot_noise_alpha, 0.5});
  CHECK(std100 > bound.tau_min);

  const std::vector<std::size_t> none;
  CHECK_THROWS_AS(precision_scaling(cfg, 3e-15, grid, none, opts), InvalidArgument);
}

TEST_CASE("delay and density conversion") {
  const auto wave = ProbeWave::from_wavelength(1e-6);
  CHECK(density_to_delay(1e20, wave, 1.0) * 1e15 == rel(0.1495998716).epsilon(1e-8));
  CHECK(delay_to_density(0.15e-15, wave, 1.0) == rel(1e20).epsilon(0.02));
  CHECK(delay_to_density(0.0, wave, 1.0) == 0.0);
  CHECK(delay_to_density(-0.15e-15, wave, 1.0) == delay_to_density(0.15e-15, wave, 1.0));
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> logn(18.0, 26.0);
  for (int i = 0; i < 100; ++i) {
    const double n = std::pow(10.0, logn(rng));
    CHECK(delay_to_density(density_to_delay(n, wave, 0.3), wave, 0.3) == rel(n).epsilon(1e-12));
  }
  CHECK_THROWS_AS(delay_to_density(1e-9, wave, 1e-3), CutoffError);
  CHECK_THROWS_AS(delay_to_density(1e-15, wave, 0.0), InvalidArgument);
  CHECK(std::string(density_inversion_assumption).find("electron") != std::string::npos);
}
