#include "bpi/inference.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bpi/constants.hpp"
#include "bpi/error.hpp"

namespace bpi {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

struct Problem {
  std::vector<double> x;  // delays in units of the time scale
  std::vector<double> y;  // rates in units of the normalization scale
  std::vector<double> w;  // inverse variances in scaled units
  bool fixed_bandwidth = false;
  double bandwidth = 1.0;  // scaled, used when fixed
};

double model(double x, const Eigen::Vector4d& p) {
  const double u = p[3] * (x - p[2]);
  return p[0] * (1.0 - p[1] * std::exp(-u * u));
}

Eigen::Vector4d full_params(const Eigen::VectorXd& free, const Problem& prob) {
  Eigen::Vector4d p;
  p.head<3>() = free.head<3>();
  p[3] = prob.fixed_bandwidth ? prob.bandwidth : free[3];
  return p;
}

Eigen::VectorXd residuals(const Problem& prob, const Eigen::VectorXd& free) {
  const auto p = full_params(free, prob);
  Eigen::VectorXd r(prob.x.size());
  for (std::size_t i = 0; i < prob.x.size(); ++i) {
    r[static_cast<Eigen::Index>(i)] = prob.y[i] - model(prob.x[i], p);
  }
  return r;
}

double weighted_cost(const Problem& prob, const Eigen::VectorXd& r) {
  double c = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) c += prob.w[static_cast<std::size_t>(i)] * r[i] * r[i];
  return c;
}

// Central-difference Jacobian of the model (not the residual).
Eigen::MatrixXd jacobian(const Problem& prob, const Eigen::VectorXd& free) {
  const Eigen::Index n = static_cast<Eigen::Index>(prob.x.size());
  Eigen::MatrixXd jac(n, free.size());
  for (Eigen::Index j = 0; j < free.size(); ++j) {
    const double h = 1e-6 * std::max(std::abs(free[j]), 1e-3);
    Eigen::VectorXd up = free, down = free;
    up[j] += h;
    down[j] -= h;
    const auto pu = full_params(up, prob);
    const auto pd = full_params(down, prob);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double x = prob.x[static_cast<std::size_t>(i)];
      jac(i, j) = (model(x, pu) - model(x, pd)) / (2.0 * h);
    }
  }
  return jac;
}

struct InitialGuess {
  double c, v, center, bandwidth;
};

InitialGuess initial_guess(std::span<const double> x, std::span<const double> y) {
  const auto [min_it, max_it] = std::minmax_element(y.begin(), y.end());
  const double ymin = *min_it;
  const double ymax = *max_it;
  const std::size_t imin = static_cast<std::size_t>(min_it - y.begin());
  const double level = ymax - 0.5 * (ymax - ymin);

  // Half-depth crossings on each side of the minimum.
  const auto crossing = [&](int dir) -> double {
    std::size_t i = imin;
    while (true) {
      if ((dir < 0 && i == 0) || (dir > 0 && i + 1 == y.size())) return std::numeric_limits<double>::quiet_NaN();
      const std::size_t j = dir < 0 ? i - 1 : i + 1;
      if (y[j] >= level) {
        const double f = (level - y[i]) / (y[j] - y[i]);
        return x[i] + f * (x[j] - x[i]);
      }
      i = j;
    }
  };
  const double left = crossing(-1);
  const double right = crossing(+1);
  double fwhm;
  if (std::isfinite(left) && std::isfinite(right)) {
    fwhm = right - left;
  } else if (std::isfinite(left)) {
    fwhm = 2.0 * (x[imin] - left);
  } else if (std::isfinite(right)) {
    fwhm = 2.0 * (right - x[imin]);
  } else {
    fwhm = 0.25 * (x.back() - x.front());
  }
  if (!(fwhm > 0.0)) fwhm = 0.25 * std::abs(x.back() - x.front());
  return {ymax, std::clamp(1.0 - ymin / ymax, 0.01, 1.0), x[imin], 2.0 * std::sqrt(std::log(2.0)) / fwhm};
}

}  // namespace

DipFit fit_dip(std::span<const double> delays, std::span<const double> rates, std::span<const double> weights,
               const DipFitOptions& options) {
  if (delays.size() != rates.size()) throw InvalidArgument("delay and rate arrays differ in length");
  if (!weights.empty() && weights.size() != rates.size()) throw InvalidArgument("weight array length mismatch");
  if (delays.size() < 8) throw InvalidArgument("dip fit needs at least 8 grid points");
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!std::isfinite(delays[i]) || !std::isfinite(rates[i])) throw InvalidArgument("non-finite dip sample");
    if (!weights.empty() && !(weights[i] > 0.0)) throw InvalidArgument("weights must be positive");
  }
  if (!std::is_sorted(delays.begin(), delays.end())) throw InvalidArgument("dip delays must be sorted");
  const double ymax = *std::max_element(rates.begin(), rates.end());
  const double ymin = *std::min_element(rates.begin(), rates.end());
  if (!(ymax > 0.0) || !(ymin < 0.9 * ymax)) {
    throw FitError("no dip in range: minimum sample is not below 0.9 x maximum", "V");
  }
  if (options.fix_bandwidth && !(options.fixed_bandwidth > 0.0)) {
    throw InvalidArgument("fixed bandwidth must be positive");
  }

  const auto guess = initial_guess(delays, rates);
  const double bw0 = options.fix_bandwidth ? options.fixed_bandwidth : guess.bandwidth;
  const double time_scale = 1.0 / bw0;
  const double rate_scale = guess.c;
  const bool weighted = !weights.empty();

  Problem prob;
  prob.fixed_bandwidth = options.fix_bandwidth;
  prob.bandwidth = 1.0;
  for (std::size_t i = 0; i < delays.size(); ++i) {
    prob.x.push_back(delays[i] / time_scale);
    prob.y.push_back(rates[i] / rate_scale);
    prob.w.push_back(weighted ? weights[i] * rate_scale * rate_scale : 1.0);
  }
  const Eigen::Index np = options.fix_bandwidth ? 3 : 4;
  Eigen::VectorXd p(np);
  p[0] = 1.0;
  p[1] = guess.v;
  p[2] = guess.center / time_scale;
  if (np == 4) p[3] = 1.0;

  const Eigen::Map<const Eigen::VectorXd> wvec(prob.w.data(), static_cast<Eigen::Index>(prob.w.size()));

  DipFit fit;
  Eigen::VectorXd r = residuals(prob, p);
  double cost = weighted_cost(prob, r);
  double lambda = 1e-3;
  bool step_converged = false;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const Eigen::MatrixXd jac = jacobian(prob, p);
    const Eigen::MatrixXd a = jac.transpose() * wvec.asDiagonal() * jac;
    const Eigen::VectorXd g = jac.transpose() * (wvec.array() * r.array()).matrix();

    bool accepted = false;
    while (lambda < 1e16) {
      Eigen::MatrixXd damped = a;
      damped.diagonal() += lambda * a.diagonal().cwiseMax(1e-12);
      const Eigen::VectorXd step = damped.ldlt().solve(g);
      const Eigen::VectorXd trial = p + step;
      const Eigen::VectorXd r_trial = residuals(prob, trial);
      const double cost_trial = weighted_cost(prob, r_trial);
      if (std::isfinite(cost_trial) && cost_trial <= cost) {
        const double rel_step = step.norm() / (p.norm() + 1e-30);
        p = trial;
        r = r_trial;
        cost = cost_trial;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (rel_step < options.step_tolerance) step_converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      step_converged = true;  // no downhill direction left
      break;
    }
    if (step_converged) {
      ++iter;
      break;
    }
  }

  const Eigen::MatrixXd jac = jacobian(prob, p);
  const Eigen::MatrixXd sqrt_w_jac = wvec.cwiseSqrt().asDiagonal() * jac;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sqrt_w_jac);
  qr.setThreshold(1e-10);
  if (qr.rank() < np) {
    const auto degenerate = qr.colsPermutation().indices()[qr.rank()];
    throw FitError(std::string("rank-deficient Jacobian: parameter '") +
                       DipFit::parameter_names[static_cast<std::size_t>(degenerate)] + "' is not constrained by the data",
                   DipFit::parameter_names[static_cast<std::size_t>(degenerate)]);
  }

  const Eigen::VectorXd g = jac.transpose() * (wvec.array() * r.array()).matrix();
  double data_norm = 0.0;
  for (std::size_t i = 0; i < prob.y.size(); ++i) data_norm += prob.w[i] * prob.y[i] * prob.y[i];
  // Residuals at round-off level carry no gradient information.
  const double scale_norm = sqrt_w_jac.norm() * std::max(std::sqrt(cost), 1e-8 * std::sqrt(data_norm));
  fit.gradient_norm = scale_norm > 0.0 ? g.norm() / scale_norm : 0.0;
  fit.iterations = iter;
  fit.converged = step_converged && fit.gradient_norm < options.gradient_tolerance;
  if (!fit.converged) {
    std::ostringstream msg;
    msg << "dip fit did not converge after " << iter << " iterations (relative gradient " << fit.gradient_norm << ")";
    throw FitError(msg.str());
  }

  Eigen::MatrixXd cov = (sqrt_w_jac.transpose() * sqrt_w_jac).inverse();
  const double dof = static_cast<double>(prob.x.size()) - static_cast<double>(np);
  if (!weighted) cov *= cost / dof;

  const auto full = full_params(p, prob);
  const std::array<double, 4> unit{rate_scale, 1.0, time_scale, 1.0 / time_scale};
  for (std::size_t i = 0; i < 4; ++i) fit.estimate[i] = full[static_cast<Eigen::Index>(i)] * unit[i];
  fit.estimate[3] = std::abs(fit.estimate[3]);
  for (Eigen::Index i = 0; i < np; ++i) {
    for (Eigen::Index j = 0; j < np; ++j) {
      fit.covariance[static_cast<std::size_t>(i * 4 + j)] =
          cov(i, j) * unit[static_cast<std::size_t>(i)] * unit[static_cast<std::size_t>(j)];
    }
  }
  for (std::size_t i = 0; i < 4; ++i) fit.standard_error[i] = std::sqrt(std::max(0.0, fit.covariance[i * 4 + i]));
  fit.residual_norm = std::sqrt(cost) * rate_scale;
  if (fit.visibility() < 0.0 || fit.visibility() > 1.05) {
    fit.warnings.push_back("fitted visibility outside [0, 1.05]");
  }
  return fit;
}

DipFit fit_dip(const DipCurve& curve, const DipFitOptions& options) {
  std::vector<double> x, y;
  x.reserve(curve.samples.size());
  y.reserve(curve.samples.size());
  for (const auto& s : curve.samples) {
    x.push_back(s.delay);
    y.push_back(s.rate);
  }
  return fit_dip(x, y, {}, options);
}

DipFit fit_dip(std::span<const CoincidencePoint> counts, const DipFitOptions& options) {
  std::vector<double> x, y, w;
  for (const auto& c : counts) {
    x.push_back(c.delay);
    y.push_back(static_cast<double>(c.counted));
    w.push_back(1.0 / std::max<double>(static_cast<double>(c.counted), 1.0));
  }
  return fit_dip(x, y, w, options);
}

ScalingStudy precision_scaling(const InterferometerConfig& cfg, double delta_tau_p, std::span<const double> grid,
                               std::span<const std::size_t> pairs_list, const ScalingOptions& options) {
  if (pairs_list.empty()) throw InvalidArgument("scaling study needs at least one pair count");
  if (options.trials < 2) throw InvalidArgument("scaling study needs at least two trials per row");
  std::vector<std::size_t> sorted(pairs_list.begin(), pairs_list.end());
  std::sort(sorted.begin(), sorted.end());

  ScalingStudy study;
  for (std::size_t row = 0; row < sorted.size(); ++row) {
    const std::size_t pairs = sorted[row];
    std::vector<double> centers(options.trials, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> errors(options.trials, std::numeric_limits<double>::quiet_NaN());

    parallel_for(options.trials, options.workers, [&](std::size_t trial) {
      McScanOptions mc;
      mc.pairs_per_point = pairs;
      mc.seed = derive_seed(derive_seed(options.seed, row), trial);
      mc.window = options.window;
      mc.workers = 1;
      const auto scan = mc_dip_scan(cfg, delta_tau_p, grid, mc);
      try {
        const auto fit = fit_dip(std::span<const CoincidencePoint>(scan.counts), options.fit);
        centers[trial] = fit.center();
        errors[trial] = fit.standard_error[2];
      } catch (const FitError&) {
      }
    });

    ScalingRow r;
    r.pairs_per_point = pairs;
    CompensatedSum sum, sum_se;
    std::size_t ok = 0;
    for (std::size_t t = 0; t < options.trials; ++t) {
      if (std::isnan(centers[t])) continue;
      sum.add(centers[t]);
      sum_se.add(errors[t]);
      ++ok;
    }
    r.trials = ok;
    r.failures = options.trials - ok;
    if (ok < 2) throw FitError("too few successful fits in scaling row");
    const double mean = sum.value() / static_cast<double>(ok);
    CompensatedSum var;
    for (std::size_t t = 0; t < options.trials; ++t) {
      if (!std::isnan(centers[t])) var.add((centers[t] - mean) * (centers[t] - mean));
    }
    r.std_dev = std::sqrt(var.value() / static_cast<double>(ok - 1));
    r.bias = mean - delta_tau_p;
    r.mean_standard_error = sum_se.value() / static_cast<double>(ok);
    r.bias_standard_error = r.std_dev / std::sqrt(static_cast<double>(ok));
    study.rows.push_back(r);
  }

  if (study.rows.size() >= 2) {
    const std::size_t n = study.rows.size();
    double sx = 0, sy = 0;
    for (const auto& r : study.rows) {
      sx += std::log(static_cast<double>(r.pairs_per_point));
      sy += std::log(r.std_dev);
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (const auto& r : study.rows) {
      const double dx = std::log(static_cast<double>(r.pairs_per_point)) - mx;
      sxx += dx * dx;
      sxy += dx * (std::log(r.std_dev) - my);
    }
    study.slope = sxy / sxx;
    // Sampling error of each log std, about 1/sqrt(2(k-1)) for k trials,
    // propagated through the regression; the scatter about the line is
    // used instead when it is larger.
    double propagated = 0.0;
    for (const auto& r : study.rows) {
      const double dx = std::log(static_cast<double>(r.pairs_per_point)) - mx;
      propagated += dx * dx / (2.0 * static_cast<double>(r.trials - 1));
    }
    study.slope_error = std::sqrt(propagated) / sxx;
    if (n > 2) {
      double rss = 0;
      for (const auto& r : study.rows) {
        const double dx = std::log(static_cast<double>(r.pairs_per_point)) - mx;
        const double res = std::log(r.std_dev) - my - study.slope * dx;
        rss += res * res;
      }
      study.slope_error = std::max(study.slope_error, std::sqrt(rss / static_cast<double>(n - 2) / sxx));
    }
  }
  return study;
}

double delay_to_density(double delay_s, const ProbeWave& wave, double length_m) {
  wave.validate();
  if (!(length_m > 0.0)) throw InvalidArgument("chord length must be positive");
  const double nc = cutoff_density(wave);
  const double density = 2.0 * nc * constants::speed_of_light * std::abs(delay_s) / length_m;
  if (!(density < nc)) {
    std::ostringstream msg;
    msg << "delay implies density " << density << " m^-3 at or above cutoff " << nc << " m^-3";
    throw CutoffError(msg.str(), nc);
  }
  return density;
}

double density_to_delay(double density_m3, const ProbeWave& wave, double length_m) {
  wave.validate();
  if (!(length_m >= 0.0)) throw InvalidArgument("chord length must be non-negative");
  if (!(density_m3 >= 0.0)) throw InvalidArgument("density must be non-negative");
  const double nc = cutoff_density(wave);
  if (!(density_m3 < nc)) throw CutoffError("density at or above cutoff", nc);
  return density_m3 * length_m / (2.0 * nc * constants::speed_of_light);
}

}  // namespace bpi
