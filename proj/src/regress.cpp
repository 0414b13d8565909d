#include "sigbasis/regress.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sigbasis/basis.hpp"
#include "sigbasis/errors.hpp"
#include "sigbasis/rng.hpp"

namespace sigbasis {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

WordSet selection_set(int N, int d, Selection sel, const WordSet* custom) {
  switch (sel) {
    case Selection::All:
      return enumerate_words(WordKind::AllUpTo, N, d);
    case Selection::Suffix:
      return enumerate_words(WordKind::SuffixesUpTo, N, d);
    case Selection::Custom: {
      if (custom == nullptr) {
        throw InvalidInput("custom selection needs a word set");
      }
      if (!is_basis_of_words(*custom, N).is_basis) {
        throw InvalidInput(
            "custom selection is not a certified basis of words");
      }
      return *custom;
    }
  }
  throw std::logic_error("unhandled selection");
}

void check_finite(double v, std::size_t path_index, const Word& w) {
  if (!std::isfinite(v)) {
    throw DataError("path " + std::to_string(path_index) +
                    " produced a non-finite component for word " + w.str());
  }
}

// Columns are paths, rows follow the word set in canonical order.
Eigen::MatrixXd raw_features(const std::vector<PiecewisePath>& paths,
                             const SigPlan& plan, int workers) {
  const std::vector<std::vector<double>> rows =
      sig_batch(paths, plan, workers);
  const std::size_t p = plan.target().size();
  const std::size_t n = paths.size();
  Eigen::MatrixXd X(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double v = rows[i][j];
      check_finite(v, i, plan.target().words()[j]);
      X(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return X;
}

// Constant rows (zero population variance up to roundoff) go to the excluded
// list; the rest are standardized to zero mean, unit variance.
DesignMatrix design_from_raw(const WordSet& ws, int order,
                             const Eigen::MatrixXd& raw) {
  const Eigen::Index p = raw.rows();
  const Eigen::Index n = raw.cols();
  DesignMatrix out;
  out.word_set = ws;
  out.order = order;

  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double m = raw.row(j).mean();
    const double var = (raw.row(j).array() - m).square().sum() /
                       static_cast<double>(n);
    if (var <= 1e-20 * (1.0 + m * m)) {
      out.excluded_words.push_back(ws.words()[static_cast<std::size_t>(j)]);
      out.excluded_values.push_back(m);
    } else {
      kept.push_back(j);
    }
  }

  const Eigen::Index k = static_cast<Eigen::Index>(kept.size());
  out.features.resize(k, n);
  out.mean.resize(k);
  out.scale.resize(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const Eigen::Index j = kept[static_cast<std::size_t>(r)];
    out.kept_words.push_back(ws.words()[static_cast<std::size_t>(j)]);
    const double m = raw.row(j).mean();
    const double var = (raw.row(j).array() - m).square().sum() /
                       static_cast<double>(n);
    const double s = std::sqrt(var);
    out.mean(r) = m;
    out.scale(r) = s;
    out.features.row(r) = (raw.row(j).array() - m) / s;
  }
  return out;
}

// Shared state of every ridge solve on one (X, y) pair: the spectral data of
// the feature Gram plus the rotated cross-moments.
struct RidgeCore {
  Eigen::Index p = 0;
  std::size_t n = 0;
  double ybar = 0.0;
  Eigen::VectorXd lam;   // eigenvalues of (1/n) X X', ascending
  Eigen::MatrixXd rotated;  // V' X, p x n
  Eigen::VectorXd w;     // V' (1/n) X (y - ybar)
  Eigen::VectorXd yc;    // y - ybar
  double lam_tol = 0.0;  // singularity threshold 1e-12 * max eigenvalue
};

RidgeCore make_core(const DesignMatrix& X, const std::vector<double>& y) {
  const std::size_t n = static_cast<std::size_t>(X.features.cols());
  if (y.size() != n) {
    throw InvalidInput("response length " + std::to_string(y.size()) +
                       " does not match sample size " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(y[i])) {
      throw DataError("non-finite response at sample " + std::to_string(i));
    }
  }

  RidgeCore core;
  core.p = X.features.rows();
  core.n = n;
  Eigen::Map<const Eigen::VectorXd> ym(y.data(),
                                       static_cast<Eigen::Index>(n));
  core.ybar = ym.mean();
  core.yc = ym.array() - core.ybar;

  if (core.p == 0) return core;

  const Eigen::MatrixXd gram =
      (X.features * X.features.transpose()) / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw DataError("eigenvalue computation did not converge");
  }
  core.lam = solver.eigenvalues();
  core.rotated = solver.eigenvectors().transpose() * X.features;
  core.w = solver.eigenvectors().transpose() *
           (X.features * core.yc / static_cast<double>(n));
  core.lam_tol = 1e-12 * std::max(core.lam(core.p - 1), 0.0);
  return core;
}

bool is_singular(const RidgeCore& core) {
  return core.p > 0 && core.lam(0) <= core.lam_tol;
}

Eigen::VectorXd solve_rotated(const RidgeCore& core, double lambda) {
  Eigen::VectorXd beta_rot(core.p);
  for (Eigen::Index k = 0; k < core.p; ++k) {
    beta_rot(k) = core.w(k) / (core.lam(k) + lambda);
  }
  return beta_rot;
}

}  // namespace

std::vector<double> lambda_grid() {
  std::vector<double> grid;
  grid.reserve(101);
  grid.push_back(0.0);
  for (int i = 0; i < 100; ++i) {
    grid.push_back(std::pow(10.0, -2.0 + 6.0 * i / 99.0));
  }
  return grid;
}

DesignMatrix build_design(const std::vector<PiecewisePath>& paths, int N,
                          Selection sel, const WordSet* custom, int workers) {
  if (paths.empty()) throw InvalidInput("need at least one path");
  if (N < 0 || N > kMaxOrder) {
    throw InvalidInput("order must be in [0, " + std::to_string(kMaxOrder) +
                       "], got " + std::to_string(N));
  }
  const WordSet ws = selection_set(N, paths.front().dim(), sel, custom);
  const SigPlan plan(ws, Direction::Forward);
  return design_from_raw(ws, N, raw_features(paths, plan, workers));
}

Eigen::MatrixXd apply_design(const DesignMatrix& design,
                             const std::vector<PiecewisePath>& paths,
                             int workers) {
  if (paths.empty()) throw InvalidInput("need at least one path");
  const SigPlan plan(design.word_set, Direction::Forward);
  const Eigen::MatrixXd raw = raw_features(paths, plan, workers);
  const Eigen::Index k = static_cast<Eigen::Index>(design.kept_words.size());
  Eigen::MatrixXd out(k, raw.cols());
  for (Eigen::Index r = 0; r < k; ++r) {
    const std::ptrdiff_t j =
        design.word_set.index_of(design.kept_words[static_cast<std::size_t>(r)]);
    out.row(r) =
        (raw.row(static_cast<Eigen::Index>(j)).array() - design.mean(r)) /
        design.scale(r);
  }
  return out;
}

RidgeFit ridge_fit(const DesignMatrix& X, const std::vector<double>& y,
                   double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("lambda must be a finite nonnegative real");
  }
  const std::size_t n = static_cast<std::size_t>(X.features.cols());
  if (y.size() != n) {
    throw InvalidInput("response length " + std::to_string(y.size()) +
                       " does not match sample size " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(y[i])) {
      throw DataError("non-finite response at sample " + std::to_string(i));
    }
  }

  RidgeFit fit;
  fit.lambda = lambda;
  Eigen::Map<const Eigen::VectorXd> ym(y.data(), static_cast<Eigen::Index>(n));
  fit.intercept = ym.mean();
  const Eigen::Index p = X.features.rows();
  if (p == 0) {
    fit.coefficients.resize(0);
    return fit;
  }

  const Eigen::VectorXd yc = ym.array() - fit.intercept;
  const Eigen::MatrixXd gram =
      (X.features * X.features.transpose()) / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw DataError("eigenvalue computation did not converge");
  }
  const Eigen::VectorXd& lam = solver.eigenvalues();
  const double lam_tol = 1e-12 * std::max(lam(p - 1), 0.0);
  if (lambda == 0.0 && lam(0) <= lam_tol) {
    throw SingularFit("the feature Gram is singular at lambda = 0");
  }
  const Eigen::VectorXd c = X.features * yc / static_cast<double>(n);
  const Eigen::VectorXd w = solver.eigenvectors().transpose() * c;
  Eigen::VectorXd beta_rot(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    beta_rot(k) = w(k) / (lam(k) + lambda);
  }
  fit.coefficients = solver.eigenvectors() * beta_rot;
  return fit;
}

CvResult loo_cv(const DesignMatrix& X, const std::vector<double>& y,
                const std::vector<double>& grid) {
  const std::size_t n = static_cast<std::size_t>(X.features.cols());
  if (n < 3) throw InvalidInput("leave-one-out needs at least three samples");
  if (grid.empty()) throw InvalidInput("empty cross-validation grid");
  for (double lam : grid) {
    if (!(lam >= 0.0) || !std::isfinite(lam)) {
      throw InvalidInput("grid values must be finite nonnegative reals");
    }
  }

  const RidgeCore core = make_core(X, y);
  const bool singular0 = is_singular(core);
  const Eigen::Index ni = static_cast<Eigen::Index>(n);

  CvResult result;
  result.curve.reserve(grid.size());
  bool have_best = false;
  double best_mse = 0.0;

  for (double lambda : grid) {
    CvPoint point;
    point.lambda = lambda;
    if (lambda == 0.0 && singular0) {
      point.singular = true;
      point.mse = std::numeric_limits<double>::quiet_NaN();
      result.curve.push_back(point);
      continue;
    }

    double mse;
    if (core.p == 0) {
      // intercept-only model: hat diagonal is 1/n for every lambda
      const double shrink = 1.0 - 1.0 / static_cast<double>(n);
      mse = (core.yc / shrink).squaredNorm() / static_cast<double>(n);
    } else {
      const Eigen::VectorXd beta_rot = solve_rotated(core, lambda);
      const Eigen::VectorXd fitted = core.rotated.transpose() * beta_rot;
      Eigen::ArrayXd denom(ni);
      for (Eigen::Index i = 0; i < ni; ++i) {
        double h = 1.0 / static_cast<double>(n);
        for (Eigen::Index k = 0; k < core.p; ++k) {
          const double g = core.rotated(k, i);
          h += g * g / (static_cast<double>(n) * (core.lam(k) + lambda));
        }
        denom(i) = 1.0 - h;
      }
      if (lambda == 0.0 && denom.minCoeff() <= 1e-10) {
        point.singular = true;
        point.mse = std::numeric_limits<double>::quiet_NaN();
        result.curve.push_back(point);
        continue;
      }
      const Eigen::ArrayXd residual = core.yc.array() - fitted.array();
      mse = (residual / denom).square().mean();
    }
    point.mse = mse;
    result.curve.push_back(point);
    if (!have_best || mse <= best_mse) {
      have_best = true;
      best_mse = mse;
      result.lambda = lambda;
    }
  }
  if (!have_best) {
    throw SingularFit("every grid point was singular");
  }
  return result;
}

std::vector<double> predict(const RidgeFit& fit,
                            const Eigen::MatrixXd& standardized_features) {
  if (standardized_features.rows() != fit.coefficients.size()) {
    throw InvalidInput("feature rows " +
                       std::to_string(standardized_features.rows()) +
                       " do not match coefficient count " +
                       std::to_string(fit.coefficients.size()));
  }
  const Eigen::VectorXd yhat =
      (standardized_features.transpose() * fit.coefficients).array() +
      fit.intercept;
  return std::vector<double>(yhat.data(), yhat.data() + yhat.size());
}

double target_functional(const SigVector& sig,
                         const std::vector<double>& beta_true) {
  if (beta_true.size() != sig.word_set().size()) {
    throw InvalidInput("coefficient length " +
                       std::to_string(beta_true.size()) +
                       " does not match component count " +
                       std::to_string(sig.word_set().size()));
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < beta_true.size(); ++j) {
    acc += beta_true[j] * sig.values()[j];
  }
  return acc;
}

std::vector<double> make_beta(BetaKind kind, std::size_t length) {
  if (length == 0) throw InvalidInput("coefficient length must be positive");
  std::vector<double> beta(length);
  for (std::size_t i = 0; i < length; ++i) {
    switch (kind) {
      case BetaKind::Ones:
        beta[i] = 1.0;
        break;
      case BetaKind::GeomUp:
        beta[i] = static_cast<double>(i + 1);
        break;
      case BetaKind::GeomDown:
        beta[i] = static_cast<double>(length - i);
        break;
    }
  }
  return beta;
}

namespace {

struct BatchOutcome {
  double mse = 0.0;
  double r2 = 0.0;
  double lambda = 0.0;
};

// Fit one strategy on the training design and score it on the shared test
// features (raw rows over the strategy's word set, one column per test path).
BatchOutcome fit_and_score(const DesignMatrix& design,
                           const std::vector<double>& y_train,
                           const Eigen::MatrixXd& raw_test,
                           const std::vector<double>& y_test,
                           double var_test) {
  const CvResult cv = loo_cv(design, y_train);
  RidgeFit fit = ridge_fit(design, y_train, cv.lambda);
  fit.cv_curve = cv.curve;

  const Eigen::Index k = static_cast<Eigen::Index>(design.kept_words.size());
  Eigen::MatrixXd standardized(k, raw_test.cols());
  for (Eigen::Index r = 0; r < k; ++r) {
    const std::ptrdiff_t j = design.word_set.index_of(
        design.kept_words[static_cast<std::size_t>(r)]);
    standardized.row(r) =
        (raw_test.row(static_cast<Eigen::Index>(j)).array() -
         design.mean(r)) /
        design.scale(r);
  }
  const std::vector<double> yhat = predict(fit, standardized);

  BatchOutcome out;
  out.lambda = fit.lambda;
  double acc = 0.0;
  for (std::size_t i = 0; i < y_test.size(); ++i) {
    const double e = y_test[i] - yhat[i];
    acc += e * e;
  }
  out.mse = acc / static_cast<double>(y_test.size());
  out.r2 = 100.0 * (1.0 - out.mse / var_test);
  return out;
}

}  // namespace

ExperimentReport algorithm1(const Algo1Config& config) {
  if (config.N < 1 || config.N > kMaxOrder) {
    throw InvalidInput("model order must be in [1, " +
                       std::to_string(kMaxOrder) + "]");
  }
  if (config.n_true < config.N || config.n_true > kMaxOrder) {
    throw InvalidInput("target order must be in [model order, " +
                       std::to_string(kMaxOrder) + "]");
  }
  if (config.batches < 2) throw InvalidInput("need at least two batches");
  if (config.K < 1) throw InvalidInput("grid needs at least one step");
  if (config.workers < 1) throw InvalidInput("worker count must be positive");

  const int d = config.process.d;
  const WordSet ws_all = enumerate_words(WordKind::AllUpTo, config.N, d);
  const WordSet ws_suffix =
      enumerate_words(WordKind::SuffixesUpTo, config.N, d);
  const int p_all = static_cast<int>(ws_all.size());
  if (config.n_train < p_all || config.n_test < p_all) {
    throw InvalidInput("need at least " + std::to_string(p_all) +
                       " samples per set for order " +
                       std::to_string(config.N));
  }

  const WordSet target_set =
      enumerate_words(WordKind::AllUpTo, config.n_true, d);
  if (!config.beta_custom.empty() &&
      config.beta_custom.size() != target_set.size()) {
    throw InvalidInput("custom coefficient length " +
                       std::to_string(config.beta_custom.size()) +
                       " does not match the target component count " +
                       std::to_string(target_set.size()));
  }
  const std::vector<double> beta = config.beta_custom.empty()
                                       ? make_beta(config.beta,
                                                   target_set.size())
                                       : config.beta_custom;
  const SigPlan target_plan(target_set, Direction::Forward);

  // Row indices of the model words inside the target set, so one signature
  // sweep per path serves both the response and the features.
  std::vector<Eigen::Index> rows_all, rows_suffix;
  for (const Word& w : ws_all.words()) {
    rows_all.push_back(static_cast<Eigen::Index>(target_set.index_of(w)));
  }
  for (const Word& w : ws_suffix.words()) {
    rows_suffix.push_back(static_cast<Eigen::Index>(target_set.index_of(w)));
  }

  ExperimentReport report;
  report.config = config;

  // One pass over a path batch: responses plus raw feature columns.
  const auto process_batch = [&](const std::vector<PiecewisePath>& paths,
                                 std::vector<double>& y,
                                 Eigen::MatrixXd& raw_all,
                                 Eigen::MatrixXd& raw_suffix) {
    const std::size_t n = paths.size();
    y.resize(n);
    raw_all.resize(static_cast<Eigen::Index>(rows_all.size()),
                   static_cast<Eigen::Index>(n));
    raw_suffix.resize(static_cast<Eigen::Index>(rows_suffix.size()),
                      static_cast<Eigen::Index>(n));
    const Clock::time_point start = Clock::now();
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double> row = target_plan.run(paths[i]);
      double acc = 0.0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        check_finite(row[j], i, target_set.words()[j]);
        acc += beta[j] * row[j];
      }
      y[i] = acc;
      for (std::size_t r = 0; r < rows_all.size(); ++r) {
        raw_all(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
            row[static_cast<std::size_t>(rows_all[r])];
      }
      for (std::size_t r = 0; r < rows_suffix.size(); ++r) {
        raw_suffix(static_cast<Eigen::Index>(r),
                   static_cast<Eigen::Index>(i)) =
            row[static_cast<std::size_t>(rows_suffix[r])];
      }
    }
    report.sig_seconds += seconds_since(start);
  };

  // Shared test set.
  std::vector<double> y_test;
  Eigen::MatrixXd test_all, test_suffix;
  {
    const std::vector<PiecewisePath> test_paths =
        simulate(config.process, config.K, config.n_test,
                 CounterRng::derive(config.seed, 0), config.workers);
    process_batch(test_paths, y_test, test_all, test_suffix);
  }
  const double test_mean =
      Eigen::Map<const Eigen::VectorXd>(y_test.data(),
                                        static_cast<Eigen::Index>(
                                            y_test.size()))
          .mean();
  double var_test = 0.0;
  for (double v : y_test) var_test += (v - test_mean) * (v - test_mean);
  var_test /= static_cast<double>(y_test.size());

  double sum_r2_all = 0.0, sum_mse_all = 0.0, sum_lambda_all = 0.0;
  double sum_r2_suf = 0.0, sum_mse_suf = 0.0, sum_lambda_suf = 0.0;

  for (int b = 0; b < config.batches; ++b) {
    std::vector<double> y_train;
    Eigen::MatrixXd train_all, train_suffix;
    {
      const std::vector<PiecewisePath> train_paths = simulate(
          config.process, config.K, config.n_train,
          CounterRng::derive(config.seed, static_cast<std::uint64_t>(b) + 1),
          config.workers);
      process_batch(train_paths, y_train, train_all, train_suffix);
    }

    const Clock::time_point fit_start = Clock::now();
    const DesignMatrix design_all =
        design_from_raw(ws_all, config.N, train_all);
    const DesignMatrix design_suffix =
        design_from_raw(ws_suffix, config.N, train_suffix);
    const BatchOutcome all = fit_and_score(design_all, y_train, test_all,
                                           y_test, var_test);
    const BatchOutcome suffix = fit_and_score(design_suffix, y_train,
                                              test_suffix, y_test, var_test);
    report.fit_seconds += seconds_since(fit_start);

    report.batch_deltas.push_back(all.mse - suffix.mse);
    sum_r2_all += all.r2;
    sum_mse_all += all.mse;
    sum_lambda_all += all.lambda;
    sum_r2_suf += suffix.r2;
    sum_mse_suf += suffix.mse;
    sum_lambda_suf += suffix.lambda;
  }

  const double nb = static_cast<double>(config.batches);
  report.all = {sum_r2_all / nb, sum_mse_all / nb, sum_lambda_all / nb};
  report.suffix = {sum_r2_suf / nb, sum_mse_suf / nb, sum_lambda_suf / nb};

  double mean_delta = 0.0;
  for (double deltav : report.batch_deltas) mean_delta += deltav;
  mean_delta /= nb;
  double ss = 0.0;
  for (double deltav : report.batch_deltas) {
    ss += (deltav - mean_delta) * (deltav - mean_delta);
  }
  const double sd = std::sqrt(ss / (nb - 1.0));
  report.delta_egen = mean_delta;
  report.std_error = sd / std::sqrt(nb);
  report.ci_low = mean_delta - 1.96 * report.std_error;
  report.ci_high = mean_delta + 1.96 * report.std_error;
  return report;
}

TimingTable timing_harness(const TimingConfig& config) {
  if (config.N < 1 || config.N > kMaxOrder) {
    throw InvalidInput("order must be in [1, " + std::to_string(kMaxOrder) +
                       "]");
  }
  if (config.d < 1 || config.d > kMaxDim) {
    throw InvalidInput("dimension must be in [1, " + std::to_string(kMaxDim) +
                       "]");
  }
  if (config.K < 2) throw InvalidInput("timing needs at least two segments");
  if (config.n < 3) throw InvalidInput("timing needs at least three paths");
  if (config.repeats < 1) throw InvalidInput("need at least one repeat");

  const WordSet ws_all = enumerate_words(WordKind::AllUpTo, config.N,
                                         config.d);
  const WordSet ws_suffix = enumerate_words(WordKind::SuffixesUpTo, config.N,
                                            config.d);
  const SigPlan plan_all(ws_all, Direction::Forward);
  const SigPlan plan_suffix(ws_suffix, Direction::Forward);
  const std::vector<PiecewisePath> paths = simulate(
      brownian_spec(config.d, 1.0), config.K, config.n, config.seed);

  const auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };

  std::vector<std::vector<double>> rows_all, rows_suffix;
  std::vector<double> t_sig_all, t_sig_suffix;
  for (int r = 0; r < config.repeats; ++r) {
    Clock::time_point t0 = Clock::now();
    rows_all = sig_batch(paths, plan_all, 1);
    t_sig_all.push_back(seconds_since(t0));
    t0 = Clock::now();
    rows_suffix = sig_batch(paths, plan_suffix, 1);
    t_sig_suffix.push_back(seconds_since(t0));
  }

  // Response: the all-ones functional of the order-N components.
  std::vector<double> y(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    double acc = 0.0;
    for (double v : rows_all[i]) acc += v;
    y[i] = acc;
  }
  Eigen::MatrixXd raw_all(static_cast<Eigen::Index>(ws_all.size()),
                          static_cast<Eigen::Index>(paths.size()));
  Eigen::MatrixXd raw_suffix(static_cast<Eigen::Index>(ws_suffix.size()),
                             static_cast<Eigen::Index>(paths.size()));
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = 0; j < ws_all.size(); ++j) {
      raw_all(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          rows_all[i][j];
    }
    for (std::size_t j = 0; j < ws_suffix.size(); ++j) {
      raw_suffix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          rows_suffix[i][j];
    }
  }
  const DesignMatrix design_all = design_from_raw(ws_all, config.N, raw_all);
  const DesignMatrix design_suffix =
      design_from_raw(ws_suffix, config.N, raw_suffix);

  std::vector<double> t_fit_all, t_fit_suffix;
  for (int r = 0; r < config.repeats; ++r) {
    Clock::time_point t0 = Clock::now();
    const CvResult cv_all = loo_cv(design_all, y);
    ridge_fit(design_all, y, cv_all.lambda);
    t_fit_all.push_back(seconds_since(t0));
    t0 = Clock::now();
    const CvResult cv_suffix = loo_cv(design_suffix, y);
    ridge_fit(design_suffix, y, cv_suffix.lambda);
    t_fit_suffix.push_back(seconds_since(t0));
  }

  TimingTable table;
  table.sig_all_seconds = median(t_sig_all);
  table.sig_suffix_seconds = median(t_sig_suffix);
  table.fit_all_seconds = median(t_fit_all);
  table.fit_suffix_seconds = median(t_fit_suffix);
  table.sig_ratio = table.sig_suffix_seconds / table.sig_all_seconds;
  table.fit_ratio = table.fit_suffix_seconds / table.fit_all_seconds;
  table.counter_ratio =
      static_cast<double>(cost_closed_form(Direction::Forward, ws_suffix,
                                           static_cast<std::uint64_t>(
                                               config.K))) /
      static_cast<double>(cost_closed_form(Direction::Forward, ws_all,
                                           static_cast<std::uint64_t>(
                                               config.K)));
  table.p_all = ws_all.size();
  table.p_suffix = ws_suffix.size();
  return table;
}

}  // namespace sigbasis
