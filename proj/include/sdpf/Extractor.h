#pragma once

/**
 * @file Extractor.h
 * @brief End-to-end SDPF extraction with optional per-stage timing
 */

#include <sdpf/Descriptor.h>
#include <sdpf/Dither.h>
#include <sdpf/Image.h>

#include <array>
#include <string_view>
#include <vector>

namespace Sdpf {

/// Pipeline stages in execution order.
enum class Stage : int {
    Dithering = 0,
    ColourSorting,
    CalculateHessian,
    AnalyseHessian,
    NonMaxSuppression,
    Centroid,
    CentroidDistance,
    DistanceBinRanges,
    DominantOrientation,
    ResolvingUpsideDown,
    SdpfAngles,
    DescriptorConstruction,
};

inline constexpr int kStageCount = 12;

/// Report name of a stage ("ED-Dithering", "Colour sorting", ...).
std::string_view StageName(Stage stage);

/// Accumulated seconds per stage.
using StageTimes = std::array<double, kStageCount>;

/// Everything produced on the way to the descriptor.
struct ExtractionResult {
    SdpfDescriptor descriptor;
    std::vector<SdpfPoint> points; ///< final salient set
    std::vector<int> distanceBins;
    std::vector<int> angleBins;
    OrientationFrame frame;        ///< meaningless when points is empty
    size_t candidateCount = 0;     ///< size of the thresholded set before suppression
};

/// Smallest accepted image side: 3x3 patterns.
inline constexpr int kMinExtractSide = 6;

/**
 * @brief Run the full pipeline on one image.
 *
 * When @p times is non-null the wall-clock seconds of each stage are added
 * to it. Throws InvalidArgument for images smaller than 6x6 or an invalid
 * configuration.
 */
ExtractionResult ExtractDetailed(const Image& img, const DescriptorConfig& cfg,
                                 const CoefficientProvider& coeffs, StageTimes* times = nullptr);

ExtractionResult ExtractDetailed(const Image& img, const DescriptorConfig& cfg = {});

/// Descriptor only, default dithering coefficients.
SdpfDescriptor Extract(const Image& img, const DescriptorConfig& cfg = {});

/// Copy of @p img with salient points (red), centroid (blue) and the
/// starting-angle ray (green) drawn on top.
Image Visualize(const Image& img, const ExtractionResult& result);

} // namespace Sdpf
