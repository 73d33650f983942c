#pragma once

/**
 * @file Knn.h
 * @brief Vector distances and a k-nearest-neighbor baseline classifier
 */

#include <span>
#include <vector>

namespace Sdpf {

/// Euclidean distance between equal-length vectors.
double EuclideanDistance(std::span<const double> a, std::span<const double> b);

/// Cosine similarity; 0 when either vector is all zeros.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

/**
 * @brief Majority label among the k nearest training vectors.
 *
 * Distance ties keep training order; vote ties go to the smallest label.
 * Throws InvalidArgument on an empty training set or k outside [1, n].
 */
int KnnPredict(const std::vector<std::vector<double>>& train, const std::vector<int>& labels,
               std::span<const double> query, int k);

} // namespace Sdpf
