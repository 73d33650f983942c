#pragma once

/**
 * @file Evaluation.h
 * @brief Dataset ingestion, train/test splitting, rotation augmentation
 *        and average-precision evaluation
 */

#include <sdpf/Descriptor.h>
#include <sdpf/Image.h>
#include <sdpf/Svm.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace Sdpf {

/// One subdirectory per class under root; class labels are the directory names.
struct Dataset {
    std::filesystem::path root;
    std::vector<std::string> labels;                       ///< sorted
    std::vector<std::vector<std::filesystem::path>> images; ///< per label, sorted

    size_t ImageCount() const;
};

/// Scan @p root. Images are files with a .ppm or .pnm extension.
/// Throws InvalidArgument for an empty root or a class without images.
Dataset IngestDataset(const std::filesystem::path& root);

struct LabeledItem {
    std::filesystem::path path;
    int label = 0;
    int rotation = 0; ///< clockwise degrees applied after loading

    friend bool operator==(const LabeledItem&, const LabeledItem&) = default;
};

struct Split {
    std::vector<LabeledItem> train;
    std::vector<LabeledItem> test;
    uint64_t seed = 0;
    double trainFraction = 0.4;
};

/// Class member indices assigned to the train or test side.
struct MemberSplit {
    std::vector<std::pair<int, size_t>> train; ///< (class, member index)
    std::vector<std::pair<int, size_t>> test;
};

/// The split rule of MakeSplit applied to bare class sizes.
MemberSplit SplitClassMembers(const std::vector<size_t>& classSizes, double trainFraction, uint64_t seed);

/**
 * @brief Per-class seeded shuffle, then the first round(fraction * size)
 *        images go to training.
 *
 * Throws InvalidArgument when a class would end up with an empty train or
 * test side.
 */
Split MakeSplit(const Dataset& ds, double trainFraction, uint64_t seed);

/// Add a rotated copy of every training item for each nonzero angle.
/// Angles must be 0, 90, 180 or 270; the test side is not touched.
Split AugmentRotations(const Split& split, const std::vector<int>& angles);

/**
 * @brief Mean over classes of |predicted into n and truly n| / |predicted into n|, x100.
 *
 * A class that receives no predictions contributes 0.
 */
double AveragePrecision(const std::vector<int>& predicted, const std::vector<int>& truth, int classCount);

struct EvalOptions {
    DescriptorConfig descriptor;
    SvmConfig svm;
    double trainFraction = 0.4;
    uint64_t seed = 0;
    std::vector<int> augmentAngles;      ///< empty: no augmentation
    std::vector<int> testRotations{0};   ///< each test image is queried once per angle
    int resize = 128;                    ///< square side; 0 keeps the original size
    int knnNeighbors = 1;
    int workers = 0;                     ///< extraction threads; 0 picks hardware concurrency
};

struct EvalReport {
    double svmAveragePrecision = 0.0;
    double knnAveragePrecision = 0.0;
    size_t trainCount = 0;
    size_t testCount = 0;
};

/// Load, resize and rotate one item.
Image PrepareImage(const LabeledItem& item, int resize);

/// Descriptors for @p items in order, extracted on a worker pool.
std::vector<std::vector<double>> ExtractAll(const std::vector<LabeledItem>& items,
                                            const DescriptorConfig& cfg, int resize, int workers);

/// Split, optionally augment, extract, train the SVM and k-NN, and score the test side.
EvalReport Evaluate(const Dataset& ds, const EvalOptions& options);

/// Fixed-precision rendering used when printing AP.
std::string FormatAveragePrecision(double ap);

} // namespace Sdpf
