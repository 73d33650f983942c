/**
 * @file Saliency.cpp
 */

#include <sdpf/Saliency.h>
#include <sdpf/Error.h>

#include <algorithm>
#include <cmath>

namespace Sdpf {

HessianResponse ComputeHessian(const PatternGrid& grid) {
    const int cols = grid.Cols();
    const int rows = grid.Rows();
    if (cols < 3 || rows < 3) {
        throw InvalidArgument("Hessian response needs at least 3x3 patterns");
    }
    HessianResponse response(cols, rows);
    for (int j = 1; j < rows - 1; ++j) {
        for (int i = 1; i < cols - 1; ++i) {
            const DitherPattern& c = grid.At(i, j);
            const DitherPattern& tl = grid.At(i - 1, j - 1);
            const DitherPattern& tr = grid.At(i + 1, j - 1);
            const DitherPattern& bl = grid.At(i - 1, j + 1);
            const DitherPattern& br = grid.At(i + 1, j + 1);

            HessianCell& cell = response.At(i, j);
            cell.lxx = Dissimilarity(grid.At(i - 1, j), c) + Dissimilarity(c, grid.At(i + 1, j));
            cell.lyy = Dissimilarity(grid.At(i, j - 1), c) + Dissimilarity(c, grid.At(i, j + 1));
            // The last pair is (i-1, j+1) vs (i+1, j+1), not the anti-diagonal.
            int diag = Dissimilarity(tl, bl) + Dissimilarity(tr, br) +
                       Dissimilarity(tl, br) + Dissimilarity(bl, br);
            cell.lxy = 0.25 * diag;
            cell.det = cell.lxx * cell.lyy - cell.lxy * cell.lxy;
            cell.strength = std::abs(cell.det);
            cell.valid = true;
        }
    }
    return response;
}

int RingThreshold(const PatternGrid& grid, int i, int j) {
    return Dissimilarity(grid.At(i - 1, j - 1), grid.At(i, j - 1)) +
           Dissimilarity(grid.At(i, j - 1), grid.At(i + 1, j - 1)) +
           Dissimilarity(grid.At(i + 1, j - 1), grid.At(i + 1, j)) +
           Dissimilarity(grid.At(i + 1, j), grid.At(i + 1, j + 1)) +
           Dissimilarity(grid.At(i + 1, j + 1), grid.At(i, j + 1)) +
           Dissimilarity(grid.At(i, j + 1), grid.At(i - 1, j + 1)) +
           Dissimilarity(grid.At(i - 1, j + 1), grid.At(i - 1, j)) +
           Dissimilarity(grid.At(i - 1, j), grid.At(i - 1, j - 1));
}

std::vector<SdpfPoint> ThresholdCandidates(const HessianResponse& response, const PatternGrid& grid) {
    if (response.Cols() != grid.Cols() || response.Rows() != grid.Rows()) {
        throw InvalidArgument("Hessian response does not match pattern grid");
    }
    std::vector<SdpfPoint> candidates;
    for (int j = 1; j < grid.Rows() - 1; ++j) {
        for (int i = 1; i < grid.Cols() - 1; ++i) {
            const HessianCell& cell = response.At(i, j);
            // Nothing beats a zero response, so skip the ring sum.
            if (!cell.valid || cell.strength <= 0.0) continue;
            if (cell.strength > RingThreshold(grid, i, j)) {
                candidates.push_back({i, j, 2.0 * i + 1.0, 2.0 * j + 1.0, cell.strength, grid.At(i, j)});
            }
        }
    }
    return candidates;
}

std::vector<SdpfPoint> NonMaxSuppress(const std::vector<SdpfPoint>& candidates, int window) {
    if (window < 1 || window % 2 == 0) {
        throw InvalidArgument("suppression window must be odd and positive");
    }
    if (candidates.empty()) return {};

    int maxI = 0;
    int maxJ = 0;
    for (const SdpfPoint& p : candidates) {
        maxI = std::max(maxI, p.i);
        maxJ = std::max(maxJ, p.j);
    }
    const int cols = maxI + 1;
    const int rows = maxJ + 1;
    // Strength map over candidate cells; -1 marks "no candidate".
    std::vector<double> strength(static_cast<size_t>(cols) * rows, -1.0);
    for (const SdpfPoint& p : candidates) {
        strength[static_cast<size_t>(p.j) * cols + p.i] = p.strength;
    }

    const int half = window / 2;
    std::vector<SdpfPoint> kept;
    for (const SdpfPoint& p : candidates) {
        bool isMax = true;
        const int j0 = std::max(0, p.j - half), j1 = std::min(rows - 1, p.j + half);
        const int i0 = std::max(0, p.i - half), i1 = std::min(cols - 1, p.i + half);
        for (int j = j0; j <= j1 && isMax; ++j) {
            for (int i = i0; i <= i1; ++i) {
                if (strength[static_cast<size_t>(j) * cols + i] > p.strength) {
                    isMax = false;
                    break;
                }
            }
        }
        if (isMax) kept.push_back(p);
    }
    return kept;
}

std::vector<SdpfPoint> DetectSalientPatterns(const PatternGrid& grid, int window) {
    HessianResponse response = ComputeHessian(grid);
    return NonMaxSuppress(ThresholdCandidates(response, grid), window);
}

} // namespace Sdpf
