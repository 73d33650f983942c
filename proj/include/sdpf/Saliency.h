#pragma once

/**
 * @file Saliency.h
 * @brief Hessian response over the pattern grid, ring threshold and
 *        windowed non-maximal suppression
 *
 * Second derivatives are approximated by pattern dissimilarities:
 *
 *   Lxx(i,j) = d(P[i-1,j], P[i,j]) + d(P[i,j], P[i+1,j])
 *   Lyy(i,j) = d(P[i,j-1], P[i,j]) + d(P[i,j], P[i,j+1])
 *   Lxy(i,j) = ( d(P[i-1,j-1], P[i-1,j+1]) + d(P[i+1,j-1], P[i+1,j+1])
 *              + d(P[i-1,j-1], P[i+1,j+1]) + d(P[i-1,j+1], P[i+1,j+1]) ) / 4
 *
 * The response is D = |Lxx*Lyy - Lxy^2|. A pattern is a candidate when D
 * exceeds the sum of the eight consecutive dissimilarities around its
 * 3x3 ring. Border patterns never respond.
 */

#include <sdpf/PatternGrid.h>

#include <vector>

namespace Sdpf {

struct HessianCell {
    double lxx = 0.0;
    double lyy = 0.0;
    double lxy = 0.0;
    double det = 0.0;
    double strength = 0.0; ///< |det|
    bool valid = false;    ///< false on the grid border
};

class HessianResponse {
public:
    HessianResponse() = default;
    HessianResponse(int cols, int rows) : cols_(cols), rows_(rows), cells_(static_cast<size_t>(cols) * rows) {}

    int Cols() const { return cols_; }
    int Rows() const { return rows_; }
    const HessianCell& At(int i, int j) const { return cells_[static_cast<size_t>(j) * cols_ + i]; }
    HessianCell& At(int i, int j) { return cells_[static_cast<size_t>(j) * cols_ + i]; }

private:
    int cols_ = 0;
    int rows_ = 0;
    std::vector<HessianCell> cells_;
};

/// A salient (or candidate) pattern.
struct SdpfPoint {
    int i = 0;             ///< pattern column
    int j = 0;             ///< pattern row
    double x = 0.0;        ///< pixel x of the pattern center, 2i + 1
    double y = 0.0;        ///< pixel y of the pattern center, 2j + 1
    double strength = 0.0; ///< |det H|
    DitherPattern pattern;
};

/// Throws InvalidArgument when the grid is smaller than 3x3 patterns.
HessianResponse ComputeHessian(const PatternGrid& grid);

/// Sum of the eight ring dissimilarities around interior pattern (i, j).
int RingThreshold(const PatternGrid& grid, int i, int j);

/// Candidates with strength strictly above the ring threshold, raster order.
std::vector<SdpfPoint> ThresholdCandidates(const HessianResponse& response, const PatternGrid& grid);

/**
 * @brief Keep candidates whose strength is >= every other candidate inside
 *        the window x window neighborhood centered on them.
 *
 * Equal maxima all survive. Throws InvalidArgument for an even or
 * non-positive window.
 */
std::vector<SdpfPoint> NonMaxSuppress(const std::vector<SdpfPoint>& candidates, int window);

/// Hessian, threshold and suppression in one call.
std::vector<SdpfPoint> DetectSalientPatterns(const PatternGrid& grid, int window = 5);

} // namespace Sdpf
