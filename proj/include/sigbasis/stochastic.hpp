#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "sigbasis/signature.hpp"
#include "sigbasis/words.hpp"

namespace sigbasis {

enum class ProcessKind { Brownian, OrnsteinUhlenbeck, CustomDrift };

// An SDE with additive Brownian noise, dX = b(t, X) dt + dW. The drift of a
// custom process must have linear growth; that contract is the caller's.
struct SdeSpec {
  ProcessKind kind = ProcessKind::Brownian;
  int d = 1;
  double T = 1.0;
  std::vector<double> initial;  // size d; zeros when empty
  std::function<std::vector<double>(double, const std::vector<double>&)> drift;
};

SdeSpec brownian_spec(int d, double T);
// dX = -(X+1) dt + dW started at the origin (componentwise for d > 1)
SdeSpec ou_spec(int d, double T);

// Euler-Maruyama on the uniform grid t_k = k T / K with exact N(0, T/K)
// Gaussian increments; path i draws from stream i of the seed, so the batch
// is bitwise reproducible for any worker count.
std::vector<PiecewisePath> simulate(const SdeSpec& spec, int K, int n,
                                    std::uint64_t seed, int workers = 1);

// Second-moment diagnostics of the signature features over a word set.
struct GramReport {
  WordSet word_set;
  std::size_t sample_size = 0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double trace = 0.0;
  int determinant_sign = 0;       // -1, 0, +1 at tolerance 1e-12 * max |eig|
  double condition_estimate = 0;  // max/min eigenvalue; +inf when singular
  bool guaranteed_singular = false;  // fewer samples than features
  std::vector<double> min_eigenvector;
};

// Gram = (1/n) sum of feature outer products, features being the B-components
// of each path's signature. Accumulation order is fixed by path index.
GramReport gram_report(const std::vector<PiecewisePath>& paths,
                       const WordSet& B, int N, int workers = 1);

// Min eigenvalue of the feature Gram per grid size, n fresh paths each.
// Requires B to certify as a basis of words first.
std::map<int, double> independence_sweep(const SdeSpec& spec, const WordSet& B,
                                         int N, const std::vector<int>& grids,
                                         int n, std::uint64_t seed,
                                         int workers = 1);

}  // namespace sigbasis
