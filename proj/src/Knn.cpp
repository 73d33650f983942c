/**
 * @file Knn.cpp
 */

#include <sdpf/Knn.h>
#include <sdpf/Error.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace Sdpf {

double EuclideanDistance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidArgument("vector lengths differ");
    double sum = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidArgument("vector lengths differ");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        dot += a[k] * b[k];
        na += a[k] * a[k];
        nb += b[k] * b[k];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / std::sqrt(na * nb);
}

int KnnPredict(const std::vector<std::vector<double>>& train, const std::vector<int>& labels,
               std::span<const double> query, int k) {
    if (train.empty()) throw InvalidArgument("k-NN needs a nonempty training set");
    if (train.size() != labels.size()) throw InvalidArgument("sample and label counts differ");
    if (k < 1 || static_cast<size_t>(k) > train.size()) throw InvalidArgument("k out of range");

    std::vector<double> dist(train.size());
    for (size_t n = 0; n < train.size(); ++n) {
        if (train[n].size() != query.size()) throw InvalidArgument("vector lengths differ");
        double sum = 0.0;
        for (size_t d = 0; d < query.size(); ++d) {
            double diff = train[n][d] - query[d];
            sum += diff * diff;
        }
        dist[n] = sum;
    }
    std::vector<size_t> order(train.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return dist[a] < dist[b]; });

    std::map<int, int> votes;
    for (int n = 0; n < k; ++n) ++votes[labels[order[static_cast<size_t>(n)]]];
    int best = votes.begin()->first;
    int bestVotes = votes.begin()->second;
    for (const auto& [label, count] : votes) {
        if (count > bestVotes) {
            best = label;
            bestVotes = count;
        }
    }
    return best;
}

} // namespace Sdpf
