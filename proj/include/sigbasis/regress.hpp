#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sigbasis/signature.hpp"
#include "sigbasis/stochastic.hpp"
#include "sigbasis/words.hpp"

namespace sigbasis {

// Which signature components enter the model.
enum class Selection { All, Suffix, Custom };

// Standardized feature matrix over a word set. Components that are constant
// across the sample (the purely-deterministic ones) are excluded from the
// penalized block and recorded with their common value; the remaining rows
// are shifted and scaled to zero mean and unit variance.
struct DesignMatrix {
  WordSet word_set;                   // all components that were computed
  std::vector<Word> kept_words;       // rows of `features`, canonical order
  std::vector<Word> excluded_words;   // constant components
  std::vector<double> excluded_values;
  Eigen::MatrixXd features;           // kept x n, standardized
  Eigen::VectorXd mean;               // per kept row, raw sample mean
  Eigen::VectorXd scale;              // per kept row, raw population std
  int order = 0;
};

DesignMatrix build_design(const std::vector<PiecewisePath>& paths, int N,
                          Selection sel, const WordSet* custom = nullptr,
                          int workers = 1);

// Features of new paths standardized with the training statistics.
Eigen::MatrixXd apply_design(const DesignMatrix& design,
                             const std::vector<PiecewisePath>& paths,
                             int workers = 1);

struct CvPoint {
  double lambda = 0.0;
  double mse = 0.0;
  bool singular = false;  // lambda = 0 skipped on a singular Gram
};

struct CvResult {
  double lambda = 0.0;  // argmin of LOO MSE, ties broken toward larger lambda
  std::vector<CvPoint> curve;
};

struct RidgeFit {
  Eigen::VectorXd coefficients;  // over kept rows, standardized space
  double intercept = 0.0;
  double lambda = 0.0;
  std::vector<CvPoint> cv_curve;  // empty unless filled from loo_cv
};

// The cross-validation grid {0} union {10^(-2 + 6 i / 99), i = 0..99}.
std::vector<double> lambda_grid();

// Minimizes |y - b - X' beta|^2 + n lambda |beta|^2 with the intercept b
// unpenalized, via the eigendecomposition of the feature Gram.
RidgeFit ridge_fit(const DesignMatrix& X, const std::vector<double>& y,
                   double lambda);

// Leave-one-out MSE over the grid by the closed-form hat-matrix identity;
// no per-lambda refits.
CvResult loo_cv(const DesignMatrix& X, const std::vector<double>& y,
                const std::vector<double>& grid = lambda_grid());

std::vector<double> predict(const RidgeFit& fit,
                            const Eigen::MatrixXd& standardized_features);

// Plain dual bracket: the coefficient vector against the signature
// components, in canonical word order.
double target_functional(const SigVector& sig,
                         const std::vector<double>& beta_true);

enum class BetaKind { Ones, GeomUp, GeomDown };
std::vector<double> make_beta(BetaKind kind, std::size_t length);

struct Algo1Config {
  int N = 2;             // model truncation order
  int n_test = 10000;    // shared test sample
  int n_train = 500;     // per training batch
  int batches = 20;
  SdeSpec process = brownian_spec(1, 1.0);
  BetaKind beta = BetaKind::Ones;
  // When non-empty, overrides `beta`; length must match the target word set.
  std::vector<double> beta_custom;
  int n_true = 10;       // truncation order of the target functional
  int K = 100;           // grid steps per path
  std::uint64_t seed = 0;
  int workers = 1;
};

struct StrategySummary {
  double r2_mean = 0.0;      // mean over batches of 100 (1 - MSE / var)
  double mse_mean = 0.0;
  double lambda_mean = 0.0;  // mean chosen lambda over batches
};

struct ExperimentReport {
  Algo1Config config;
  double delta_egen = 0.0;  // mean over batches of MSE_all - MSE_suffix
  double std_error = 0.0;   // standard error of the batch differences
  double ci_low = 0.0;      // 95% normal interval
  double ci_high = 0.0;
  StrategySummary all;
  StrategySummary suffix;
  std::vector<double> batch_deltas;
  // Wall-clock breakdown; not part of the reproducible payload.
  double sig_seconds = 0.0;
  double fit_seconds = 0.0;
};

// One shared test set, `batches` independent training batches; each batch
// fits both strategies with LOO-CV and contributes the mean difference of
// squared test errors. Batches accumulate in index order, so the report is
// identical for every worker count.
ExperimentReport algorithm1(const Algo1Config& config);

struct TimingConfig {
  int N = 4;
  int d = 1;
  int K = 100;
  int n = 2000;     // paths per timed repeat
  int repeats = 5;  // medians over this many runs
  std::uint64_t seed = 1;
};

struct TimingTable {
  double sig_all_seconds = 0.0;  // medians
  double sig_suffix_seconds = 0.0;
  double fit_all_seconds = 0.0;
  double fit_suffix_seconds = 0.0;
  double sig_ratio = 0.0;      // suffix / all, measured
  double fit_ratio = 0.0;
  double counter_ratio = 0.0;  // suffix / all from the cost model
  std::size_t p_all = 0;
  std::size_t p_suffix = 0;
};

TimingTable timing_harness(const TimingConfig& config);

}  // namespace sigbasis
