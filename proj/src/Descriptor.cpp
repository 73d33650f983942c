/**
 * @file Descriptor.cpp
 * @brief Centroid distances, dominant orientation and histogram population
 *
 * Distance binning works on squared distances only; no square roots are
 * taken anywhere in this file.
 */

#include <sdpf/Descriptor.h>
#include <sdpf/Dither.h>
#include <sdpf/Error.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace Sdpf {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

} // namespace

void DescriptorConfig::Validate() const {
    if (distanceBins < 1 || angleBins < 1 || colorBins < 1) {
        throw InvalidArgument("descriptor bin counts must be >= 1");
    }
    if (colorBins != kPaletteSize) {
        throw InvalidArgument("color bin count must equal the palette size (8)");
    }
    if (nmsWindow < 1 || nmsWindow % 2 == 0) {
        throw InvalidArgument("suppression window must be odd and positive");
    }
}

double SdpfDescriptor::Sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

// =============================================================================
// Centroid distance
// =============================================================================

Point2d Centroid(const std::vector<SdpfPoint>& points) {
    if (points.empty()) {
        throw InvalidArgument("centroid of an empty point set");
    }
    double sx = 0.0;
    double sy = 0.0;
    for (const SdpfPoint& p : points) {
        sx += p.x;
        sy += p.y;
    }
    const double n = static_cast<double>(points.size());
    return {sx / n, sy / n};
}

std::vector<double> SquaredCentroidDistances(const std::vector<SdpfPoint>& points, Point2d centroid) {
    std::vector<double> squared(points.size());
    for (size_t n = 0; n < points.size(); ++n) {
        double dx = points[n].x - centroid.x;
        double dy = points[n].y - centroid.y;
        squared[n] = dx * dx + dy * dy;
    }
    return squared;
}

std::vector<int> BinSquaredDistances(const std::vector<double>& squared, int bins) {
    if (bins < 1) {
        throw InvalidArgument("distance bin count must be >= 1");
    }
    if (squared.empty()) {
        throw InvalidArgument("distance bins of an empty point set");
    }
    const double maxSquared = *std::max_element(squared.begin(), squared.end());
    std::vector<int> result(squared.size(), 0);
    if (maxSquared <= 0.0) return result;

    // Upper bounds R(0) .. R(bins-2); the last bin is open-ended so the
    // maximum is never lost to rounding in the running sum.
    const double step = maxSquared / bins;
    std::vector<double> upper(static_cast<size_t>(bins - 1));
    double bound = 0.0;
    for (int b = 0; b + 1 < bins; ++b) {
        bound += step;
        upper[static_cast<size_t>(b)] = bound;
    }
    for (size_t n = 0; n < squared.size(); ++n) {
        auto it = std::lower_bound(upper.begin(), upper.end(), squared[n]);
        result[n] = static_cast<int>(it - upper.begin());
    }
    return result;
}

std::vector<int> DistanceBins(const std::vector<SdpfPoint>& points, Point2d centroid, int bins) {
    return BinSquaredDistances(SquaredCentroidDistances(points, centroid), bins);
}

// =============================================================================
// Dominant orientation
// =============================================================================

SlopeFit FitSlope(const std::vector<SdpfPoint>& points, Point2d centroid) {
    double sxy = 0.0;
    double sxx = 0.0;
    for (const SdpfPoint& p : points) {
        double dx = p.x - centroid.x;
        sxy += dx * (p.y - centroid.y);
        sxx += dx * dx;
    }
    if (sxx == 0.0) {
        return {0.0, true};
    }
    return {sxy / sxx, false};
}

int PerpendicularSide(const SdpfPoint& point, Point2d centroid, const SlopeFit& fit) {
    double l;
    if (fit.vertical) {
        // Perpendicular of a vertical line is horizontal.
        l = point.y - centroid.y;
    } else if (fit.slope == 0.0) {
        // Perpendicular of a horizontal line is vertical.
        l = point.x - centroid.x;
    } else {
        l = point.y + (point.x - centroid.x) / fit.slope - centroid.y;
    }
    if (l > 0.0) return 1;
    if (l < 0.0) return 2;
    return 0;
}

double WrapDegrees(double degrees) {
    double wrapped = std::fmod(degrees, 360.0);
    if (wrapped < 0.0) wrapped += 360.0;
    if (wrapped >= 360.0) wrapped -= 360.0;
    return wrapped;
}

OrientationFrame ResolveStartingAngle(const std::vector<SdpfPoint>& points, Point2d centroid,
                                      const SlopeFit& fit) {
    OrientationFrame frame;
    frame.centroid = centroid;
    frame.fit = fit;
    for (const SdpfPoint& p : points) {
        int side = PerpendicularSide(p, centroid, fit);
        if (side == 1) ++frame.side1;
        else if (side == 2) ++frame.side2;
    }
    const double lineAngle = fit.vertical ? 90.0 : std::atan(fit.slope) * kRadToDeg;
    // Equal side counts take the first branch.
    frame.theta0 = WrapDegrees(frame.side1 >= frame.side2 ? lineAngle : lineAngle - 180.0);
    return frame;
}

OrientationFrame DominantOrientation(const std::vector<SdpfPoint>& points, Point2d centroid) {
    return ResolveStartingAngle(points, centroid, FitSlope(points, centroid));
}

// =============================================================================
// Angle bins
// =============================================================================

double NormalizedAngle(const SdpfPoint& point, const OrientationFrame& frame) {
    double dx = point.x - frame.centroid.x;
    double dy = point.y - frame.centroid.y;
    if (dx == 0.0 && dy == 0.0) return 0.0;
    double angle = WrapDegrees(std::atan2(dy, dx) * kRadToDeg);
    return WrapDegrees(angle - frame.theta0);
}

int AngleBin(double normalizedDegrees, int bins) {
    if (bins < 1) {
        throw InvalidArgument("angle bin count must be >= 1");
    }
    const double width = 360.0 / bins;
    int bin = static_cast<int>(std::floor(normalizedDegrees / width));
    return std::clamp(bin, 0, bins - 1);
}

std::vector<int> AngleBins(const std::vector<SdpfPoint>& points, const OrientationFrame& frame, int bins) {
    std::vector<int> result(points.size());
    for (size_t n = 0; n < points.size(); ++n) {
        result[n] = AngleBin(NormalizedAngle(points[n], frame), bins);
    }
    return result;
}

// =============================================================================
// Histogram
// =============================================================================

SdpfDescriptor BuildDescriptor(const std::vector<SdpfPoint>& points,
                               const std::vector<int>& distanceBins,
                               const std::vector<int>& angleBins,
                               const DescriptorConfig& cfg) {
    cfg.Validate();
    if (distanceBins.size() != points.size() || angleBins.size() != points.size()) {
        throw InvalidArgument("bin assignments do not match the point set");
    }
    SdpfDescriptor desc;
    desc.distanceBins = cfg.distanceBins;
    desc.angleBins = cfg.angleBins;
    desc.colorBins = cfg.colorBins;
    desc.normalized = cfg.normalize;
    desc.values.assign(static_cast<size_t>(cfg.Length()), 0.0);

    for (size_t n = 0; n < points.size(); ++n) {
        const int bd = distanceBins[n];
        const int ba = angleBins[n];
        if (bd < 0 || bd >= cfg.distanceBins || ba < 0 || ba >= cfg.angleBins) {
            throw InvalidArgument("bin index out of range");
        }
        for (uint8_t color : points[n].pattern.Colors()) {
            desc.values[desc.Index(bd, ba, color)] += 1.0;
        }
    }
    if (cfg.normalize && !points.empty()) {
        const double total = 4.0 * static_cast<double>(points.size());
        for (double& v : desc.values) v /= total;
    }
    return desc;
}

} // namespace Sdpf
