#include "wsd/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "wsd/errors.hpp"

namespace wsd {

void ClusterConfig::validate() const {
  if (k < 2) throw ContractError("k must be >= 2");
  if (top_lemmas < 1) throw ContractError("top_lemmas must be >= 1");
  if (max_iterations < 1) throw ContractError("max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw ContractError("tolerance must be > 0");
}

std::vector<DenseVector> restrict_features(std::span<const ContextVector> vectors,
                                           const Lexicon& lexicon, std::size_t top_lemmas) {
  const std::size_t dims = std::min(top_lemmas, lexicon.size());
  std::vector<DenseVector> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) {
    DenseVector dense(dims, 0.0);
    for (const auto& [index, count] : v.counts)
      if (index < dims) dense[index] = static_cast<double>(count);
    out.push_back(std::move(dense));
  }
  return out;
}

double squared_distance(const DenseVector& a, const DenseVector& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

namespace {

std::size_t nearest(const DenseVector& point, const std::vector<DenseVector>& centroids) {
  std::size_t best = 0;
  double best_d = squared_distance(point, centroids[0]);
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    const double d = squared_distance(point, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::vector<DenseVector> farthest_point_init(std::span<const DenseVector> points, std::size_t k,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> first(0, points.size() - 1);
  std::vector<std::size_t> chosen{first(rng)};
  std::vector<double> min_d(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    min_d[i] = squared_distance(points[i], points[chosen[0]]);

  while (chosen.size() < k) {
    std::size_t pick = points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      if (pick == points.size() || min_d[i] > min_d[pick]) pick = i;
    }
    chosen.push_back(pick);
    for (std::size_t i = 0; i < points.size(); ++i)
      min_d[i] = std::min(min_d[i], squared_distance(points[i], points[pick]));
  }

  std::vector<DenseVector> centroids;
  for (auto i : chosen) centroids.push_back(points[i]);
  return centroids;
}

}  // namespace

KMeansResult kmeans(std::span<const DenseVector> vectors, const ClusterConfig& config) {
  config.validate();
  const auto k = static_cast<std::size_t>(config.k);
  if (vectors.size() < k) throw ContractError("kmeans needs at least k vectors");
  const std::size_t dims = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != dims) throw ContractError("kmeans vectors differ in dimension");

  KMeansResult result;
  result.centroids = farthest_point_init(vectors, k, config.rng_seed);
  result.assignments.assign(vectors.size(), 0);

  std::vector<std::size_t> sizes(k);
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    result.iterations = iter;
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const auto c = nearest(vectors[i], result.centroids);
      result.assignments[i] = static_cast<int>(c);
      ++sizes[c];
    }

    for (std::size_t empty = 0; empty < k; ++empty) {
      if (sizes[empty] != 0) continue;
      std::size_t far = vectors.size();
      double far_d = -1.0;
      for (std::size_t i = 0; i < vectors.size(); ++i) {
        const auto c = static_cast<std::size_t>(result.assignments[i]);
        if (sizes[c] < 2) continue;
        const double d = squared_distance(vectors[i], result.centroids[c]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      --sizes[static_cast<std::size_t>(result.assignments[far])];
      result.assignments[far] = static_cast<int>(empty);
      sizes[empty] = 1;
    }

    std::vector<DenseVector> next(k, DenseVector(dims, 0.0));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      auto& sum = next[static_cast<std::size_t>(result.assignments[i])];
      for (std::size_t d = 0; d < dims; ++d) sum[d] += vectors[i][d];
    }
    double max_shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      for (auto& x : next[c]) x /= static_cast<double>(sizes[c]);
      max_shift = std::max(max_shift, std::sqrt(squared_distance(next[c], result.centroids[c])));
    }
    result.centroids = std::move(next);

    double objective = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i)
      objective += squared_distance(
          vectors[i], result.centroids[static_cast<std::size_t>(result.assignments[i])]);
    result.objective.push_back(objective);

    if (max_shift < config.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

double cluster_accuracy(std::span<const int> assignments, std::span<const SenseId> gold) {
  if (assignments.size() != gold.size())
    throw ContractError("assignments and gold differ in length");
  if (gold.empty()) return 0.0;

  std::map<SenseId, std::size_t> sense_index;
  for (const auto& g : gold) sense_index.emplace(g, 0);
  std::size_t s = 0;
  for (auto& [_, idx] : sense_index) idx = s++;

  int max_cluster = *std::max_element(assignments.begin(), assignments.end());
  if (*std::min_element(assignments.begin(), assignments.end()) < 0)
    throw ContractError("negative cluster id");
  const std::size_t clusters = static_cast<std::size_t>(max_cluster) + 1;
  const std::size_t slots = std::max(clusters, sense_index.size());
  if (slots > 10) throw ContractError("cluster_accuracy supports at most 10 clusters or senses");

  std::vector<std::int64_t> confusion(slots * slots, 0);
  for (std::size_t i = 0; i < gold.size(); ++i)
    ++confusion[static_cast<std::size_t>(assignments[i]) * slots + sense_index[gold[i]]];

  std::vector<std::size_t> perm(slots);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = 0;
  do {
    std::int64_t correct = 0;
    for (std::size_t c = 0; c < slots; ++c) correct += confusion[c * slots + perm[c]];
    best = std::max(best, correct);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(gold.size());
}

}  // namespace wsd
