#pragma once

/**
 * @file Descriptor.h
 * @brief Orientation-normalized spatial-chromatic histogram of salient patterns
 *
 * Every salient point gets a centroid-distance bin, an angle bin measured
 * from the dominant orientation of the point set, and contributes once for
 * each of its four pattern colors. The flat layout is distance-major:
 *
 *   index = Bd * ka * kc + Ba * kc + (color - 1)
 */

#include <sdpf/Saliency.h>

#include <vector>

namespace Sdpf {

struct DescriptorConfig {
    int distanceBins = 4; ///< k_d
    int angleBins = 8;    ///< k_a
    int colorBins = 8;    ///< k_c, must equal the palette size
    bool normalize = true; ///< L1 normalization
    int nmsWindow = 5;    ///< suppression window side, in patterns

    int Length() const { return distanceBins * angleBins * colorBins; }

    /// Throws InvalidArgument when any field is out of range.
    void Validate() const;
};

struct SdpfDescriptor {
    int distanceBins = 0;
    int angleBins = 0;
    int colorBins = 0;
    bool normalized = false;
    std::vector<double> values;

    size_t Index(int distanceBin, int angleBin, int color) const {
        return (static_cast<size_t>(distanceBin) * angleBins + angleBin) * colorBins + (color - 1);
    }
    double Sum() const;
};

struct Point2d {
    double x = 0.0;
    double y = 0.0;
};

/// Least-squares slope through the centroid; vertical when every point shares x.
struct SlopeFit {
    double slope = 0.0;
    bool vertical = false;
};

struct OrientationFrame {
    Point2d centroid;
    SlopeFit fit;
    int side1 = 0;        ///< |U1|, points with l(n) > 0
    int side2 = 0;        ///< |U2|, points with l(n) < 0
    double theta0 = 0.0;  ///< starting angle in degrees, [0, 360)
};

/// Mean pixel position. Throws InvalidArgument on an empty set.
Point2d Centroid(const std::vector<SdpfPoint>& points);

/// Squared distance of every point to the centroid.
std::vector<double> SquaredCentroidDistances(const std::vector<SdpfPoint>& points, Point2d centroid);

/**
 * @brief Assign each squared distance to one of @p bins equal ranges of
 *        [0, max].
 *
 * Bin b covers (b*max/bins, (b+1)*max/bins]; zero goes to bin 0 and the
 * maximum always lands in the last bin. All zeros map to bin 0.
 */
std::vector<int> BinSquaredDistances(const std::vector<double>& squared, int bins);

/// SquaredCentroidDistances followed by BinSquaredDistances.
std::vector<int> DistanceBins(const std::vector<SdpfPoint>& points, Point2d centroid, int bins);

SlopeFit FitSlope(const std::vector<SdpfPoint>& points, Point2d centroid);

/// Signed side of a point relative to the perpendicular of the fitted line: 1, 2, or 0 when on it.
int PerpendicularSide(const SdpfPoint& point, Point2d centroid, const SlopeFit& fit);

/// Side counts and the starting angle from an existing fit.
OrientationFrame ResolveStartingAngle(const std::vector<SdpfPoint>& points, Point2d centroid,
                                      const SlopeFit& fit);

/// FitSlope followed by ResolveStartingAngle.
OrientationFrame DominantOrientation(const std::vector<SdpfPoint>& points, Point2d centroid);

/// Wrap an angle in degrees into [0, 360).
double WrapDegrees(double degrees);

/// Angle of a point around the centroid relative to theta0, in [0, 360). Zero at the centroid.
double NormalizedAngle(const SdpfPoint& point, const OrientationFrame& frame);

/// floor(angle / (360 / bins)), clamped to bins - 1.
int AngleBin(double normalizedDegrees, int bins);

std::vector<int> AngleBins(const std::vector<SdpfPoint>& points, const OrientationFrame& frame, int bins);

/// Histogram the points. Empty input yields an all-zero descriptor.
SdpfDescriptor BuildDescriptor(const std::vector<SdpfPoint>& points,
                               const std::vector<int>& distanceBins,
                               const std::vector<int>& angleBins,
                               const DescriptorConfig& cfg);

} // namespace Sdpf
