/**
 * @file DescriptorTest.cpp
 * @brief Centroid distance bins, dominant orientation, angle bins and the histogram
 */

#include <sdpf/Descriptor.h>
#include <sdpf/Error.h>

#include "Oracles.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace Sdpf {
namespace {

SdpfPoint At(double x, double y, DitherPattern pattern = DitherPattern(1, 1, 2, 3)) {
    SdpfPoint p;
    p.x = x;
    p.y = y;
    p.pattern = pattern;
    return p;
}

std::vector<SdpfPoint> RandomPoints(std::mt19937_64& rng, int n) {
    std::vector<SdpfPoint> pts;
    for (int k = 0; k < n; ++k) {
        auto c = [&] { return static_cast<uint8_t>(1 + rng() % 8); };
        pts.push_back(At(2.0 * (rng() % 64) + 1, 2.0 * (rng() % 64) + 1, DitherPattern(c(), c(), c(), c())));
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Centroid and distance bins
// ---------------------------------------------------------------------------

TEST(CentroidTest, SquareCorners) {
    Point2d c = Centroid({At(0, 0), At(2, 0), At(0, 2), At(2, 2)});
    EXPECT_EQ(c.x, 1.0);
    EXPECT_EQ(c.y, 1.0);
}

TEST(CentroidTest, SinglePoint) {
    Point2d c = Centroid({At(5, 7)});
    EXPECT_EQ(c.x, 5.0);
    EXPECT_EQ(c.y, 7.0);
}

TEST(CentroidTest, TranslationCovariant) {
    std::mt19937_64 rng(1);
    auto pts = RandomPoints(rng, 30);
    Point2d c = Centroid(pts);
    for (auto& p : pts) {
        p.x += 6.0;
        p.y -= 10.0;
    }
    Point2d d = Centroid(pts);
    EXPECT_NEAR(d.x, c.x + 6.0, 1e-12);
    EXPECT_NEAR(d.y, c.y - 10.0, 1e-12);
}

TEST(CentroidTest, EmptyThrows) {
    EXPECT_THROW(Centroid({}), InvalidArgument);
}

TEST(DistanceBinTest, EqualPartitionsOfMax) {
    // max 16, four bins: bounds 4, 8, 12, 16.
    auto bins = BinSquaredDistances({0.0, 4.0, 4.5, 5.0, 8.0, 12.0, 12.1, 16.0}, 4);
    EXPECT_EQ(bins, (std::vector<int>{0, 0, 1, 1, 1, 2, 3, 3}));
}

TEST(DistanceBinTest, CoincidentPointsGoToBinZero) {
    EXPECT_EQ(BinSquaredDistances({0.0, 0.0, 0.0}, 4), (std::vector<int>{0, 0, 0}));
}

TEST(DistanceBinTest, MaxAlwaysInLastBin) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1e4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> sq(20);
        for (auto& v : sq) v = u(rng);
        for (int bins : {1, 3, 4, 7, 10}) {
            auto b = BinSquaredDistances(sq, bins);
            size_t imax = static_cast<size_t>(std::max_element(sq.begin(), sq.end()) - sq.begin());
            ASSERT_EQ(b[imax], bins - 1);
            for (int v : b) {
                ASSERT_GE(v, 0);
                ASSERT_LT(v, bins);
            }
        }
    }
}

TEST(DistanceBinTest, PointAtCentroidIsBinZero) {
    std::vector<SdpfPoint> pts{At(1, 1), At(5, 1), At(3, 1)};
    auto bins = DistanceBins(pts, Centroid(pts), 4);
    EXPECT_EQ(bins[2], 0);
    EXPECT_EQ(bins[0], 3);
    EXPECT_EQ(bins[1], 3);
}

TEST(DistanceBinTest, TranslationAndScaleInvariant) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto pts = RandomPoints(rng, 25);
        auto ref = DistanceBins(pts, Centroid(pts), 4);
        Point2d c = Centroid(pts);
        auto moved = pts;
        for (auto& p : moved) {
            p.x += 40;
            p.y += 18;
        }
        EXPECT_EQ(DistanceBins(moved, Centroid(moved), 4), ref);
        // Power-of-two scale keeps every quantity exact.
        auto scaled = pts;
        for (auto& p : scaled) {
            p.x = c.x + 4.0 * (p.x - c.x);
            p.y = c.y + 4.0 * (p.y - c.y);
        }
        EXPECT_EQ(DistanceBins(scaled, Centroid(scaled), 4), ref);
    }
}

TEST(DistanceBinTest, SourceHasNoSquareRoot) {
    std::ifstream in(std::string(SDPF_SOURCE_DIR) + "/src/Descriptor.cpp");
    ASSERT_TRUE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string src = ss.str();
    EXPECT_EQ(src.find("sqrt("), std::string::npos);
    EXPECT_EQ(src.find("hypot("), std::string::npos);
}

// ---------------------------------------------------------------------------
// Dominant orientation
// ---------------------------------------------------------------------------

TEST(OrientationTest, DiagonalWithMoreMassOnSideOne) {
    // Points on y = x; three of them past the centroid in +x.
    std::vector<SdpfPoint> pts{At(0, 0), At(6, 6), At(7, 7), At(8, 8), At(-1, -1)};
    Point2d c = Centroid(pts);
    OrientationFrame f = DominantOrientation(pts, c);
    EXPECT_FALSE(f.fit.vertical);
    EXPECT_NEAR(f.fit.slope, 1.0, 1e-12);
    EXPECT_GT(f.side1, f.side2);
    EXPECT_NEAR(f.theta0, 45.0, 1e-9);
}

TEST(OrientationTest, ReflectedSetFlipsBy180) {
    std::vector<SdpfPoint> pts{At(0, 0), At(-6, -6), At(-7, -7), At(-8, -8), At(1, 1)};
    OrientationFrame f = DominantOrientation(pts, Centroid(pts));
    EXPECT_NEAR(f.fit.slope, 1.0, 1e-12);
    EXPECT_LT(f.side1, f.side2);
    EXPECT_NEAR(f.theta0, 225.0, 1e-9);
}

TEST(OrientationTest, SlopeMatchesLeastSquaresOracle) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<SdpfPoint> pts;
        std::vector<double> xs, ys;
        int n = 2 + static_cast<int>(rng() % 30);
        for (int k = 0; k < n; ++k) {
            pts.push_back(At(u(rng), u(rng)));
            xs.push_back(pts.back().x);
            ys.push_back(pts.back().y);
        }
        double expected = 0.0;
        ASSERT_TRUE(Testing::OracleSlope(xs, ys, expected));
        SlopeFit fit = FitSlope(pts, Centroid(pts));
        ASSERT_FALSE(fit.vertical);
        EXPECT_NEAR(fit.slope, expected, 1e-9 * std::max(1.0, std::abs(expected)));
    }
}

TEST(OrientationTest, VerticalLine) {
    std::vector<SdpfPoint> pts{At(3, 1), At(3, 9), At(3, 11), At(3, 13)};
    OrientationFrame f = DominantOrientation(pts, Centroid(pts));
    EXPECT_TRUE(f.fit.vertical);
    // Side by sign of y - yc: three below (larger y) the centroid at 8.5.
    EXPECT_EQ(f.side1, 3);
    EXPECT_EQ(f.side2, 1);
    EXPECT_NEAR(f.theta0, 90.0, 1e-12);
}

TEST(OrientationTest, HorizontalLine) {
    std::vector<SdpfPoint> pts{At(1, 5), At(9, 5), At(11, 5), At(13, 5)};
    OrientationFrame f = DominantOrientation(pts, Centroid(pts));
    EXPECT_FALSE(f.fit.vertical);
    EXPECT_EQ(f.fit.slope, 0.0);
    EXPECT_EQ(f.side1, 3);
    EXPECT_EQ(f.side2, 1);
    EXPECT_NEAR(f.theta0, 0.0, 1e-12);
}

TEST(OrientationTest, TieTakesFirstBranch) {
    std::vector<SdpfPoint> pts{At(0, 0), At(2, 2)};
    OrientationFrame f = DominantOrientation(pts, Centroid(pts));
    EXPECT_EQ(f.side1, f.side2);
    EXPECT_NEAR(f.theta0, 45.0, 1e-9);
}

TEST(OrientationTest, SinglePointIsDegenerate) {
    std::vector<SdpfPoint> pts{At(4, 4)};
    OrientationFrame f = DominantOrientation(pts, Centroid(pts));
    EXPECT_TRUE(f.fit.vertical);
    EXPECT_EQ(f.side1 + f.side2, 0);
    EXPECT_GE(f.theta0, 0.0);
    EXPECT_LT(f.theta0, 360.0);
}

TEST(OrientationTest, OrderInvariant) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto pts = RandomPoints(rng, 15);
        OrientationFrame a = DominantOrientation(pts, Centroid(pts));
        if (a.side1 == a.side2) continue;
        std::shuffle(pts.begin(), pts.end(), rng);
        OrientationFrame b = DominantOrientation(pts, Centroid(pts));
        EXPECT_NEAR(a.theta0, b.theta0, 1e-9);
    }
}

TEST(OrientationTest, ThetaAlwaysInRange) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 500; ++trial) {
        auto pts = RandomPoints(rng, 1 + static_cast<int>(rng() % 20));
        OrientationFrame f = DominantOrientation(pts, Centroid(pts));
        ASSERT_GE(f.theta0, 0.0);
        ASSERT_LT(f.theta0, 360.0);
    }
}

// ---------------------------------------------------------------------------
// Angle bins
// ---------------------------------------------------------------------------

TEST(AngleBinTest, EightBinsAreFortyFiveDegrees) {
    EXPECT_EQ(AngleBin(44.9, 8), 0);
    EXPECT_EQ(AngleBin(45.0, 8), 1);
    EXPECT_EQ(AngleBin(359.999, 8), 7);
    EXPECT_EQ(AngleBin(360.0, 8), 7);
    EXPECT_EQ(AngleBin(0.0, 8), 0);
}

TEST(AngleBinTest, WrapDegrees) {
    EXPECT_EQ(WrapDegrees(-90.0), 270.0);
    EXPECT_EQ(WrapDegrees(360.0), 0.0);
    EXPECT_EQ(WrapDegrees(725.0), 5.0);
}

TEST(AngleBinTest, CentroidPointHasAngleZero) {
    OrientationFrame f;
    f.centroid = {5, 5};
    f.theta0 = 123.0;
    EXPECT_EQ(NormalizedAngle(At(5, 5), f), 0.0);
}

TEST(AngleBinTest, QuadrantAwareAngles) {
    OrientationFrame f;
    f.centroid = {0, 0};
    f.theta0 = 0.0;
    EXPECT_NEAR(NormalizedAngle(At(1, 0), f), 0.0, 1e-12);
    EXPECT_NEAR(NormalizedAngle(At(0, 1), f), 90.0, 1e-12);
    EXPECT_NEAR(NormalizedAngle(At(-1, 0), f), 180.0, 1e-12);
    EXPECT_NEAR(NormalizedAngle(At(0, -1), f), 270.0, 1e-12);
    auto bins = AngleBins({At(1, 0.1), At(-0.1, 1), At(-1, -0.1), At(0.1, -1)}, f, 4);
    EXPECT_EQ(bins, (std::vector<int>{0, 1, 2, 3}));
}

// Rotates every point by a about the centroid c.
std::vector<SdpfPoint> RotateAbout(std::vector<SdpfPoint> pts, Point2d c, double a) {
    for (auto& p : pts) {
        double dx = p.x - c.x, dy = p.y - c.y;
        p.x = c.x + std::cos(a) * dx - std::sin(a) * dy;
        p.y = c.y + std::sin(a) * dx + std::cos(a) * dy;
    }
    return pts;
}

// Bins must agree except for points within a hair of a bin edge.
void ExpectSameAngleBins(const std::vector<SdpfPoint>& a, const OrientationFrame& fa,
                         const std::vector<SdpfPoint>& b, const OrientationFrame& fb) {
    auto ba = AngleBins(a, fa, 8);
    auto bb = AngleBins(b, fb, 8);
    for (size_t k = 0; k < a.size(); ++k) {
        double edge = std::fmod(NormalizedAngle(a[k], fa), 45.0);
        if (edge < 1e-6 || 45.0 - edge < 1e-6) continue;
        ASSERT_EQ(ba[k], bb[k]) << "point " << k;
    }
}

TEST(AngleBinTest, HalfTurnPreservesBins) {
    // A half turn keeps the least-squares slope and swaps the side counts,
    // so theta0 moves by exactly 180 degrees.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<SdpfPoint> pts;
        for (int k = 0; k < 12; ++k) pts.push_back(At(u(rng), u(rng)));
        Point2d c = Centroid(pts);
        OrientationFrame f = DominantOrientation(pts, c);
        if (f.side1 == f.side2) continue;
        auto rot = RotateAbout(pts, c, std::numbers::pi);
        OrientationFrame rf = DominantOrientation(rot, Centroid(rot));
        EXPECT_NEAR(WrapDegrees(rf.theta0 - f.theta0 + 1e-9), 180.0, 1e-6);
        ExpectSameAngleBins(pts, f, rot, rf);
        ++checked;
    }
    EXPECT_GT(checked, 200);
}

TEST(AngleBinTest, RigidRotationPreservesBinsWhenTheBranchIsStable) {
    // Points near a common line: the fitted line co-rotates, so as long as
    // the side-count branch carries over every bin is preserved.
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> along(-40.0, 40.0);
    std::uniform_real_distribution<double> across(-1e-3, 1e-3);
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<SdpfPoint> pts;
        for (int k = 0; k < 12; ++k) {
            double x = along(rng);
            pts.push_back(At(x, 0.5 * x + across(rng)));
        }
        Point2d c = Centroid(pts);
        OrientationFrame f = DominantOrientation(pts, c);
        if (f.side1 == f.side2 || f.fit.vertical) continue;

        auto rot = RotateAbout(pts, c, ang(rng));
        OrientationFrame rf = DominantOrientation(rot, Centroid(rot));
        // Side one lies ahead along (1, m) for m > 0 and behind for m < 0,
        // so the branch also depends on the slope sign.
        const bool stable = !rf.fit.vertical && rf.fit.slope != 0.0 &&
                            (rf.fit.slope > 0.0) == (f.fit.slope > 0.0) &&
                            (rf.side1 > rf.side2) == (f.side1 > f.side2);
        if (!stable) continue;
        ExpectSameAngleBins(pts, f, rot, rf);
        ++checked;
    }
    EXPECT_GT(checked, 50);
}

// ---------------------------------------------------------------------------
// Histogram
// ---------------------------------------------------------------------------

TEST(HistogramTest, SinglePointCounts) {
    DescriptorConfig cfg;
    cfg.normalize = false;
    SdpfDescriptor d = BuildDescriptor({At(1, 1, DitherPattern(1, 1, 2, 3))}, {0}, {0}, cfg);
    ASSERT_EQ(d.values.size(), 256u);
    EXPECT_EQ(d.values[d.Index(0, 0, 1)], 2.0);
    EXPECT_EQ(d.values[d.Index(0, 0, 2)], 1.0);
    EXPECT_EQ(d.values[d.Index(0, 0, 3)], 1.0);
    EXPECT_EQ(d.Sum(), 4.0);
}

TEST(HistogramTest, DefaultLengthIs256) {
    DescriptorConfig cfg;
    EXPECT_EQ(cfg.Length(), 256);
    EXPECT_EQ(BuildDescriptor({}, {}, {}, cfg).values.size(), 256u);
}

TEST(HistogramTest, LayoutIsDistanceMajor) {
    DescriptorConfig cfg;
    cfg.normalize = false;
    SdpfDescriptor d = BuildDescriptor({At(1, 1, DitherPattern(5, 5, 5, 5))}, {2}, {3}, cfg);
    EXPECT_EQ(d.values[2 * 8 * 8 + 3 * 8 + 4], 4.0);
}

TEST(HistogramTest, MassIdentityAndNormalization) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        auto pts = RandomPoints(rng, 1 + static_cast<int>(rng() % 40));
        Point2d c = Centroid(pts);
        auto db = DistanceBins(pts, c, 4);
        auto ab = AngleBins(pts, DominantOrientation(pts, c), 8);
        DescriptorConfig raw;
        raw.normalize = false;
        EXPECT_EQ(BuildDescriptor(pts, db, ab, raw).Sum(), 4.0 * pts.size());
        EXPECT_NEAR(BuildDescriptor(pts, db, ab, DescriptorConfig{}).Sum(), 1.0, 1e-9);
    }
}

TEST(HistogramTest, EmptySetIsZero) {
    SdpfDescriptor d = BuildDescriptor({}, {}, {}, DescriptorConfig{});
    for (double v : d.values) EXPECT_EQ(v, 0.0);
}

TEST(HistogramTest, CustomBinCounts) {
    DescriptorConfig cfg;
    cfg.distanceBins = 3;
    cfg.angleBins = 12;
    cfg.normalize = false;
    std::mt19937_64 rng(9);
    auto pts = RandomPoints(rng, 20);
    Point2d c = Centroid(pts);
    SdpfDescriptor d = BuildDescriptor(pts, DistanceBins(pts, c, 3), AngleBins(pts, DominantOrientation(pts, c), 12), cfg);
    EXPECT_EQ(d.values.size(), 3u * 12u * 8u);
    EXPECT_EQ(d.Sum(), 80.0);
}

TEST(HistogramTest, InvalidConfigThrows) {
    DescriptorConfig cfg;
    cfg.colorBins = 6;
    EXPECT_THROW(cfg.Validate(), InvalidArgument);
    cfg = {};
    cfg.distanceBins = 0;
    EXPECT_THROW(cfg.Validate(), InvalidArgument);
    cfg = {};
    cfg.nmsWindow = 4;
    EXPECT_THROW(cfg.Validate(), InvalidArgument);
    EXPECT_THROW(BuildDescriptor({At(1, 1)}, {4}, {0}, DescriptorConfig{}), InvalidArgument);
}

} // namespace
} // namespace Sdpf
