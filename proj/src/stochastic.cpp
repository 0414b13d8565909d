#include "sigbasis/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sigbasis/basis.hpp"
#include "sigbasis/errors.hpp"
#include "sigbasis/rng.hpp"

namespace sigbasis {

SdeSpec brownian_spec(int d, double T) {
  SdeSpec spec;
  spec.kind = ProcessKind::Brownian;
  spec.d = d;
  spec.T = T;
  return spec;
}

SdeSpec ou_spec(int d, double T) {
  SdeSpec spec;
  spec.kind = ProcessKind::OrnsteinUhlenbeck;
  spec.d = d;
  spec.T = T;
  return spec;
}

namespace {

void validate_spec(const SdeSpec& spec) {
  if (spec.d < 1 || spec.d > kMaxDim) {
    throw InvalidInput("process dimension must be in [1, " +
                       std::to_string(kMaxDim) + "], got " +
                       std::to_string(spec.d));
  }
  if (!std::isfinite(spec.T) || spec.T <= 0.0) {
    throw InvalidInput("process horizon must be positive and finite");
  }
  if (!spec.initial.empty() &&
      spec.initial.size() != static_cast<std::size_t>(spec.d)) {
    throw InvalidInput("initial condition has dimension " +
                       std::to_string(spec.initial.size()) + ", expected " +
                       std::to_string(spec.d));
  }
  for (double v : spec.initial) {
    if (!std::isfinite(v)) {
      throw InvalidInput("initial condition must be finite");
    }
  }
  if (spec.kind == ProcessKind::CustomDrift && !spec.drift) {
    throw InvalidInput("custom process needs a drift callback");
  }
}

// One Euler-Maruyama path on t_k = k T / K, drawing from the given stream.
PiecewisePath simulate_one(const SdeSpec& spec, int K, std::uint64_t seed,
                           std::uint64_t stream) {
  CounterRng rng(seed, stream);
  const std::size_t d = static_cast<std::size_t>(spec.d);
  const double h = spec.T / K;
  const double sqrt_h = std::sqrt(h);

  std::vector<double> ts(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    ts[static_cast<std::size_t>(k)] = spec.T * k / K;
  }

  std::vector<double> x =
      spec.initial.empty() ? std::vector<double>(d, 0.0) : spec.initial;
  std::vector<std::vector<double>> points;
  points.reserve(static_cast<std::size_t>(K) + 1);
  points.push_back(x);

  std::vector<double> b(d, 0.0);
  for (int k = 0; k < K; ++k) {
    switch (spec.kind) {
      case ProcessKind::Brownian:
        std::fill(b.begin(), b.end(), 0.0);
        break;
      case ProcessKind::OrnsteinUhlenbeck:
        for (std::size_t i = 0; i < d; ++i) b[i] = -(x[i] + 1.0);
        break;
      case ProcessKind::CustomDrift:
        b = spec.drift(ts[static_cast<std::size_t>(k)], x);
        if (b.size() != d) {
          throw InvalidInput("drift callback returned dimension " +
                             std::to_string(b.size()) + ", expected " +
                             std::to_string(d));
        }
        break;
    }
    for (std::size_t i = 0; i < d; ++i) {
      x[i] += b[i] * h + sqrt_h * rng.normal();
    }
    points.push_back(x);
  }
  return PiecewisePath(std::move(ts), std::move(points));
}

}  // namespace

std::vector<PiecewisePath> simulate(const SdeSpec& spec, int K, int n,
                                    std::uint64_t seed, int workers) {
  validate_spec(spec);
  if (K < 1) throw InvalidInput("grid needs at least one step");
  if (n < 1) throw InvalidInput("sample count must be positive");
  if (workers < 1) throw InvalidInput("worker count must be positive");

  const std::size_t count = static_cast<std::size_t>(n);
  std::vector<std::optional<PiecewisePath>> slots(count);
  const int threads = std::min<int>(workers, n);
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      slots[i].emplace(
          simulate_one(spec, K, seed, static_cast<std::uint64_t>(i)));
    }
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      const std::size_t lo = count * static_cast<std::size_t>(t) /
                             static_cast<std::size_t>(threads);
      const std::size_t hi = count * static_cast<std::size_t>(t + 1) /
                             static_cast<std::size_t>(threads);
      pool.emplace_back([&, lo, hi, t] {
        try {
          for (std::size_t i = lo; i < hi; ++i) {
            slots[i].emplace(
                simulate_one(spec, K, seed, static_cast<std::uint64_t>(i)));
          }
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  std::vector<PiecewisePath> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

GramReport gram_report(const std::vector<PiecewisePath>& paths,
                       const WordSet& B, int N, int workers) {
  if (paths.empty()) throw InvalidInput("need at least one path");
  if (B.size() == 0) throw InvalidInput("word set must be nonempty");
  if (N < 0 || N > kMaxOrder) {
    throw InvalidInput("order must be in [0, " + std::to_string(kMaxOrder) +
                       "], got " + std::to_string(N));
  }
  for (const Word& w : B.words()) {
    if (static_cast<int>(w.length()) > N) {
      throw InvalidInput("word " + w.str() + " exceeds order " +
                         std::to_string(N));
    }
  }

  const SigPlan plan(B, Direction::Forward);
  const std::vector<std::vector<double>> features =
      sig_batch(paths, plan, workers);

  const std::size_t p = B.size();
  const std::size_t n = paths.size();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                               static_cast<Eigen::Index>(p));
  Eigen::VectorXd f(static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      f(static_cast<Eigen::Index>(j)) = features[i][j];
    }
    gram.noalias() += f * f.transpose();
  }
  gram /= static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw DataError("eigenvalue computation did not converge");
  }
  const Eigen::VectorXd& eig = solver.eigenvalues();  // ascending

  GramReport report;
  report.word_set = B;
  report.sample_size = n;
  report.min_eigenvalue = eig(0);
  report.max_eigenvalue = eig(eig.size() - 1);
  report.trace = gram.trace();

  const double scale = eig.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * scale;
  int negatives = 0;
  bool has_zero = false;
  for (Eigen::Index k = 0; k < eig.size(); ++k) {
    if (std::abs(eig(k)) <= tol) {
      has_zero = true;
    } else if (eig(k) < 0.0) {
      ++negatives;
    }
  }
  if (scale == 0.0 || has_zero) {
    report.determinant_sign = 0;
  } else {
    report.determinant_sign = (negatives % 2 == 0) ? 1 : -1;
  }
  if (report.min_eigenvalue <= tol) {
    report.condition_estimate = std::numeric_limits<double>::infinity();
  } else {
    report.condition_estimate = report.max_eigenvalue / report.min_eigenvalue;
  }
  report.guaranteed_singular = n < p;
  report.min_eigenvector.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    report.min_eigenvector[j] =
        solver.eigenvectors()(static_cast<Eigen::Index>(j), 0);
  }
  return report;
}

std::map<int, double> independence_sweep(const SdeSpec& spec, const WordSet& B,
                                         int N, const std::vector<int>& grids,
                                         int n, std::uint64_t seed,
                                         int workers) {
  const BasisCertificate cert = is_basis_of_words(B, N);
  if (!cert.is_basis) {
    throw InvalidInput("word set is not a certified basis of words");
  }
  if (grids.empty()) throw InvalidInput("need at least one grid size");

  std::map<int, double> table;
  for (int K : grids) {
    const std::vector<PiecewisePath> paths = simulate(
        spec, K, n, CounterRng::derive(seed, static_cast<std::uint64_t>(K)),
        workers);
    table[K] = gram_report(paths, B, N, workers).min_eigenvalue;
  }
  return table;
}

}  // namespace sigbasis
