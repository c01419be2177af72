#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/lexicon.hpp"

namespace wsd {

struct ClusterConfig {
  int k = 2;
  int top_lemmas = 10;
  int max_iterations = 300;
  double tolerance = 1e-9;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

using DenseVector = std::vector<double>;

// Keeps the first `top_lemmas` lexicon dimensions (the most frequent lemmas),
// clamped to the lexicon size.
std::vector<DenseVector> restrict_features(std::span<const ContextVector> vectors,
                                           const Lexicon& lexicon, std::size_t top_lemmas);

struct KMeansResult {
  std::vector<int> assignments;
  std::vector<DenseVector> centroids;
  // Sum of squared distances to the assigned centroid after each update.
  std::vector<double> objective;
  int iterations = 0;
  bool converged = false;
};

// Lloyd iterations from seeded farthest-point initialization. Stops when no
// centroid moves by `tolerance` or more. An empty cluster takes the point
// farthest from its centroid among clusters with more than one member.
// Throws ContractError when there are fewer vectors than clusters.
KMeansResult kmeans(std::span<const DenseVector> vectors, const ClusterConfig& config);

double squared_distance(const DenseVector& a, const DenseVector& b);

// Accuracy under the cluster -> sense bijection that maximizes agreement.
double cluster_accuracy(std::span<const int> assignments, std::span<const SenseId> gold);

}  // namespace wsd
