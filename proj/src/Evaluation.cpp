/**
 * @file Evaluation.cpp
 */

#include <sdpf/Evaluation.h>
#include <sdpf/Error.h>
#include <sdpf/Extractor.h>
#include <sdpf/Knn.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace Sdpf {

namespace fs = std::filesystem;

size_t Dataset::ImageCount() const {
    size_t total = 0;
    for (const auto& list : images) total += list.size();
    return total;
}

namespace {

bool IsImageFile(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".ppm" || ext == ".pnm";
}

} // namespace

Dataset IngestDataset(const fs::path& root) {
    if (!fs::is_directory(root)) {
        throw FileNotFound("dataset root is not a directory: " + root.string());
    }
    std::vector<fs::path> classDirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) classDirs.push_back(entry.path());
    }
    if (classDirs.empty()) {
        throw InvalidArgument("dataset root has no class directories: " + root.string());
    }
    std::sort(classDirs.begin(), classDirs.end());

    Dataset ds;
    ds.root = root;
    for (const fs::path& dir : classDirs) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && IsImageFile(entry.path())) files.push_back(entry.path());
        }
        if (files.empty()) {
            throw InvalidArgument("class directory has no images: " + dir.string());
        }
        std::sort(files.begin(), files.end());
        ds.labels.push_back(dir.filename().string());
        ds.images.push_back(std::move(files));
    }
    return ds;
}

MemberSplit SplitClassMembers(const std::vector<size_t>& classSizes, double trainFraction, uint64_t seed) {
    if (!(trainFraction > 0.0 && trainFraction < 1.0)) {
        throw InvalidArgument("train fraction must lie strictly between 0 and 1");
    }
    MemberSplit split;
    for (size_t c = 0; c < classSizes.size(); ++c) {
        const size_t n = classSizes[c];
        const size_t nTrain = static_cast<size_t>(std::llround(trainFraction * static_cast<double>(n)));
        if (n < 2 || nTrain == 0 || nTrain >= n) {
            throw InvalidArgument("class " + std::to_string(c) + " with " + std::to_string(n) +
                                  " members cannot be split at fraction " + std::to_string(trainFraction));
        }
        std::vector<size_t> order(n);
        for (size_t k = 0; k < n; ++k) order[k] = k;
        std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (c + 1)));
        for (size_t k = n; k > 1; --k) {
            std::swap(order[k - 1], order[static_cast<size_t>(rng() % k)]);
        }
        for (size_t k = 0; k < n; ++k) {
            (k < nTrain ? split.train : split.test).emplace_back(static_cast<int>(c), order[k]);
        }
    }
    return split;
}

Split MakeSplit(const Dataset& ds, double trainFraction, uint64_t seed) {
    std::vector<size_t> sizes;
    for (const auto& files : ds.images) sizes.push_back(files.size());
    MemberSplit members;
    try {
        members = SplitClassMembers(sizes, trainFraction, seed);
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(std::string("dataset split: ") + e.what());
    }
    Split split;
    split.seed = seed;
    split.trainFraction = trainFraction;
    for (const auto& [c, k] : members.train) split.train.push_back({ds.images[static_cast<size_t>(c)][k], c, 0});
    for (const auto& [c, k] : members.test) split.test.push_back({ds.images[static_cast<size_t>(c)][k], c, 0});
    return split;
}

Split AugmentRotations(const Split& split, const std::vector<int>& angles) {
    std::set<int> extra;
    for (int a : angles) {
        if (a != 0 && a != 90 && a != 180 && a != 270) {
            throw InvalidArgument("augmentation supports only 0, 90, 180 and 270 degrees");
        }
        if (a != 0) extra.insert(a);
    }
    Split out = split;
    for (const LabeledItem& item : split.train) {
        for (int a : extra) {
            LabeledItem copy = item;
            copy.rotation = (item.rotation + a) % 360;
            out.train.push_back(std::move(copy));
        }
    }
    return out;
}

double AveragePrecision(const std::vector<int>& predicted, const std::vector<int>& truth, int classCount) {
    if (predicted.size() != truth.size()) {
        throw InvalidArgument("prediction and truth lengths differ");
    }
    if (predicted.empty()) throw InvalidArgument("average precision of an empty test set");
    if (classCount < 1) throw InvalidArgument("class count must be positive");

    std::vector<size_t> assigned(static_cast<size_t>(classCount), 0);
    std::vector<size_t> correct(static_cast<size_t>(classCount), 0);
    for (size_t k = 0; k < predicted.size(); ++k) {
        const int p = predicted[k];
        if (p < 0 || p >= classCount || truth[k] < 0 || truth[k] >= classCount) {
            throw InvalidArgument("label out of range");
        }
        ++assigned[static_cast<size_t>(p)];
        if (p == truth[k]) ++correct[static_cast<size_t>(p)];
    }
    double sum = 0.0;
    for (int c = 0; c < classCount; ++c) {
        if (assigned[static_cast<size_t>(c)] > 0) {
            sum += static_cast<double>(correct[static_cast<size_t>(c)]) / assigned[static_cast<size_t>(c)];
        }
    }
    return sum / classCount * 100.0;
}

Image PrepareImage(const LabeledItem& item, int resize) {
    Image img = LoadImage(item.path);
    if (resize > 0) img = Resize(img, resize, resize);
    return RotateRightAngle(img, item.rotation);
}

std::vector<std::vector<double>> ExtractAll(const std::vector<LabeledItem>& items,
                                            const DescriptorConfig& cfg, int resize, int workers) {
    std::vector<std::vector<double>> out(items.size());
    if (items.empty()) return out;
    size_t threads = workers > 0 ? static_cast<size_t>(workers)
                                 : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, items.size());

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failureMutex;
    auto work = [&] {
        for (size_t k = next++; k < items.size(); k = next++) {
            try {
                out[k] = Extract(PrepareImage(items[k], resize), cfg).values;
            } catch (...) {
                std::lock_guard lock(failureMutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

EvalReport Evaluate(const Dataset& ds, const EvalOptions& options) {
    options.descriptor.Validate();
    options.svm.Validate();
    if (ds.labels.size() < 2) throw InvalidArgument("evaluation needs at least two classes");

    Split split = MakeSplit(ds, options.trainFraction, options.seed);
    if (!options.augmentAngles.empty()) split = AugmentRotations(split, options.augmentAngles);

    std::vector<LabeledItem> queries;
    const std::vector<int> rotations = options.testRotations.empty() ? std::vector<int>{0} : options.testRotations;
    for (int r : rotations) {
        if (r != 0 && r != 90 && r != 180 && r != 270) {
            throw InvalidArgument("test rotations must be right angles");
        }
    }
    for (const LabeledItem& item : split.test) {
        for (int r : rotations) {
            LabeledItem q = item;
            q.rotation = (item.rotation + r) % 360;
            queries.push_back(std::move(q));
        }
    }

    auto trainX = ExtractAll(split.train, options.descriptor, options.resize, options.workers);
    auto testX = ExtractAll(queries, options.descriptor, options.resize, options.workers);
    std::vector<int> trainY;
    for (const auto& item : split.train) trainY.push_back(item.label);
    std::vector<int> truth;
    for (const auto& item : queries) truth.push_back(item.label);

    SvmModel model = TrainSvm(trainX, trainY, ds.labels, options.svm);
    const int k = std::min<int>(options.knnNeighbors, static_cast<int>(trainX.size()));
    std::vector<int> svmPred;
    std::vector<int> knnPred;
    for (const auto& x : testX) {
        svmPred.push_back(model.Predict(x));
        knnPred.push_back(KnnPredict(trainX, trainY, x, k));
    }

    EvalReport report;
    const int classCount = static_cast<int>(ds.labels.size());
    report.svmAveragePrecision = AveragePrecision(svmPred, truth, classCount);
    report.knnAveragePrecision = AveragePrecision(knnPred, truth, classCount);
    report.trainCount = trainX.size();
    report.testCount = testX.size();
    return report;
}

std::string FormatAveragePrecision(double ap) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", ap);
    return buf;
}

} // namespace Sdpf
