/**
 * @file SaliencyTest.cpp
 * @brief Hessian response, ring threshold and suppression against a
 *        brute-force evaluator
 */

#include <sdpf/Dither.h>
#include <sdpf/Error.h>
#include <sdpf/Saliency.h>

#include "Oracles.h"
#include "Synthetic.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace Sdpf {
namespace {

PatternGrid UniformGrid(int cols, int rows, DitherPattern p) {
    return PatternGrid(cols, rows, std::vector<DitherPattern>(static_cast<size_t>(cols) * rows, p));
}

PatternGrid SingleOutlierGrid(int cols, int rows, int oi, int oj) {
    std::vector<DitherPattern> pats(static_cast<size_t>(cols) * rows, DitherPattern(1, 1, 2, 2));
    pats[static_cast<size_t>(oj) * cols + oi] = DitherPattern(3, 3, 4, 4);
    return PatternGrid(cols, rows, std::move(pats));
}

std::set<std::pair<int, int>> Cells(const std::vector<SdpfPoint>& pts) {
    std::set<std::pair<int, int>> s;
    for (const auto& p : pts) s.insert({p.i, p.j});
    return s;
}

SdpfPoint Candidate(int i, int j, double strength) {
    return {i, j, 2.0 * i + 1, 2.0 * j + 1, strength, DitherPattern()};
}

TEST(HessianTest, UniformGridHasZeroResponse) {
    HessianResponse r = ComputeHessian(UniformGrid(6, 5, DitherPattern(2, 3, 3, 8)));
    for (int j = 0; j < r.Rows(); ++j) {
        for (int i = 0; i < r.Cols(); ++i) {
            EXPECT_EQ(r.At(i, j).lxx, 0.0);
            EXPECT_EQ(r.At(i, j).lyy, 0.0);
            EXPECT_EQ(r.At(i, j).lxy, 0.0);
            EXPECT_EQ(r.At(i, j).det, 0.0);
        }
    }
}

TEST(HessianTest, SingleDistinctPattern) {
    PatternGrid g = SingleOutlierGrid(7, 7, 3, 3);
    HessianResponse r = ComputeHessian(g);
    const HessianCell& c = r.At(3, 3);
    EXPECT_EQ(c.lxx, 8.0);
    EXPECT_EQ(c.lyy, 8.0);
    EXPECT_EQ(c.lxy, 0.0);
    EXPECT_EQ(c.det, 64.0);
    EXPECT_EQ(c.strength, 64.0);
}

TEST(HessianTest, BordersCarryNoResponse) {
    std::mt19937_64 rng(5);
    PatternGrid g = Testing::RandomGrid(6, 4, rng);
    HessianResponse r = ComputeHessian(g);
    for (int j = 0; j < g.Rows(); ++j) {
        for (int i = 0; i < g.Cols(); ++i) {
            bool border = i == 0 || j == 0 || i == g.Cols() - 1 || j == g.Rows() - 1;
            EXPECT_EQ(r.At(i, j).valid, !border);
        }
    }
}

TEST(HessianTest, MatchesBruteForceOnRandomGrids) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 1000; ++trial) {
        PatternGrid g = Testing::RandomGrid(8, 8, rng, 2 + trial % 7);
        HessianResponse r = ComputeHessian(g);
        for (int j = 1; j < 7; ++j) {
            for (int i = 1; i < 7; ++i) {
                Testing::OracleCell o = Testing::OracleHessianAt(g, i, j);
                const HessianCell& c = r.At(i, j);
                ASSERT_EQ(c.lxx, o.lxx);
                ASSERT_EQ(c.lyy, o.lyy);
                ASSERT_EQ(c.lxy, o.lxy);
                ASSERT_EQ(c.det, c.lxx * c.lyy - c.lxy * c.lxy);
                ASSERT_EQ(c.det, o.det);
                ASSERT_EQ(c.strength, std::abs(c.det));
                ASSERT_EQ(RingThreshold(g, i, j), o.t);
            }
        }
    }
}

TEST(HessianTest, TooSmallThrows) {
    EXPECT_THROW(ComputeHessian(UniformGrid(2, 5, DitherPattern())), InvalidArgument);
}

TEST(ThresholdTest, UniformGridHasNoCandidates) {
    PatternGrid g = UniformGrid(5, 5, DitherPattern(1, 2, 3, 4));
    EXPECT_TRUE(ThresholdCandidates(ComputeHessian(g), g).empty());
}

TEST(ThresholdTest, SingleDistinctPattern) {
    PatternGrid g = SingleOutlierGrid(7, 7, 3, 3);
    EXPECT_EQ(RingThreshold(g, 3, 3), 0);
    // The cell whose bottom-right neighbor is the outlier also passes:
    // three Lxy pairs touch br, so D = 9 > T = 4.
    auto cands = ThresholdCandidates(ComputeHessian(g), g);
    ASSERT_EQ(cands.size(), 2u);
    EXPECT_EQ(cands[0].i, 2);
    EXPECT_EQ(cands[0].j, 2);
    EXPECT_EQ(cands[0].strength, 9.0);
    cands.erase(cands.begin());
    EXPECT_EQ(cands[0].i, 3);
    EXPECT_EQ(cands[0].j, 3);
    EXPECT_EQ(cands[0].strength, 64.0);
    EXPECT_EQ(cands[0].x, 7.0);
    EXPECT_EQ(cands[0].y, 7.0);
    EXPECT_EQ(cands[0].pattern, DitherPattern(3, 3, 4, 4));
}

TEST(ThresholdTest, MatchesBruteForceOnRandomGrids) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        PatternGrid g = Testing::RandomGrid(9, 7, rng, 2 + trial % 7);
        EXPECT_EQ(Cells(ThresholdCandidates(ComputeHessian(g), g)), Testing::OracleCandidateSet(g));
    }
}

TEST(NmsTest, FarApartBothKept) {
    auto kept = NonMaxSuppress({Candidate(2, 2, 10), Candidate(12, 2, 50)}, 5);
    EXPECT_EQ(kept.size(), 2u);
}

TEST(NmsTest, StrongerNeighborWins) {
    auto kept = NonMaxSuppress({Candidate(4, 4, 64), Candidate(5, 4, 32)}, 5);
    ASSERT_EQ(kept.size(), 1u);
    EXPECT_EQ(kept[0].strength, 64.0);
}

TEST(NmsTest, TiesAllSurvive) {
    auto kept = NonMaxSuppress({Candidate(4, 4, 16), Candidate(5, 5, 16)}, 5);
    EXPECT_EQ(kept.size(), 2u);
}

TEST(NmsTest, WindowEdgeIsInclusive) {
    // Two cells apart is inside a 5-wide window; three is outside.
    EXPECT_EQ(NonMaxSuppress({Candidate(4, 4, 9), Candidate(6, 6, 10)}, 5).size(), 1u);
    EXPECT_EQ(NonMaxSuppress({Candidate(4, 4, 9), Candidate(7, 4, 10)}, 5).size(), 2u);
}

TEST(NmsTest, WindowOneKeepsEverything) {
    auto kept = NonMaxSuppress({Candidate(4, 4, 9), Candidate(5, 4, 10)}, 1);
    EXPECT_EQ(kept.size(), 2u);
}

TEST(NmsTest, EvenWindowThrows) {
    EXPECT_THROW(NonMaxSuppress({}, 4), InvalidArgument);
    EXPECT_THROW(NonMaxSuppress({}, 0), InvalidArgument);
}

TEST(SalientSetTest, MatchesBruteForceAndIsNested) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        PatternGrid g = Testing::RandomGrid(8, 8, rng, 2 + trial % 7);
        auto cands = ThresholdCandidates(ComputeHessian(g), g);
        auto final = NonMaxSuppress(cands, 5);
        ASSERT_EQ(Cells(final), Testing::OracleSalientSet(g, 5));
        auto cs = Cells(cands);
        for (const auto& p : final) {
            ASSERT_TRUE(cs.count({p.i, p.j}));
            ASSERT_GE(p.i, 1);
            ASSERT_GE(p.j, 1);
            ASSERT_LE(p.i, 6);
            ASSERT_LE(p.j, 6);
        }
    }
}

// Grid rotated 90 degrees clockwise, as Rotate90 does for images:
// new (i, j) takes old (j, rows - 1 - i).
PatternGrid RotateGrid(const PatternGrid& g) {
    const int cols = g.Rows(), rows = g.Cols();
    std::vector<DitherPattern> pats;
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) pats.push_back(g.At(j, g.Rows() - 1 - i));
    return PatternGrid(cols, rows, std::move(pats));
}

double QuarterTurnOverlap(const std::vector<PatternGrid>& grids, int& exactGrids) {
    size_t matched = 0, total = 0;
    exactGrids = 0;
    for (const auto& g : grids) {
        auto original = Cells(DetectSalientPatterns(g));
        auto rotated = Cells(DetectSalientPatterns(RotateGrid(g)));
        std::set<std::pair<int, int>> mapped;
        for (auto [i, j] : original) mapped.insert({g.Rows() - 1 - j, i});
        size_t common = 0;
        for (const auto& c : mapped) common += rotated.count(c);
        matched += common;
        total += std::max(mapped.size(), rotated.size());
        exactGrids += mapped == rotated;
    }
    return total == 0 ? 1.0 : static_cast<double>(matched) / static_cast<double>(total);
}

std::vector<PatternGrid> DitheredGrids() {
    std::vector<PatternGrid> grids;
    for (uint64_t seed = 0; seed < 40; ++seed) {
        grids.push_back(BuildGrid(Dither(Testing::MakeClassInstance(static_cast<int>(seed % 10), seed, 128))));
        grids.push_back(BuildGrid(Dither(Testing::MakeRandomScene(128, 128, seed))));
    }
    return grids;
}

TEST(SalientSetTest, QuarterTurnSwapsSecondDerivativesAndKeepsThreshold) {
    for (const auto& g : DitheredGrids()) {
        PatternGrid r = RotateGrid(g);
        HessianResponse a = ComputeHessian(g);
        HessianResponse b = ComputeHessian(r);
        for (int j = 1; j < g.Rows() - 1; ++j) {
            for (int i = 1; i < g.Cols() - 1; ++i) {
                const int ri = g.Rows() - 1 - j, rj = i;
                ASSERT_EQ(a.At(i, j).lxx, b.At(ri, rj).lyy);
                ASSERT_EQ(a.At(i, j).lyy, b.At(ri, rj).lxx);
                ASSERT_EQ(RingThreshold(g, i, j), RingThreshold(r, ri, rj));
            }
        }
    }
}

TEST(SalientSetTest, QuarterTurnOverlap) {
    // Lxy sums two vertical pairs, one diagonal and one
    // horizontal pair. A quarter turn changes that set, so the salient
    // sets only partly agree. Measured: about 0.83 on dithered images and
    // 0.84 on random grids. The floors pin those numbers against regressions.
    int exact = 0;
    double dithered = QuarterTurnOverlap(DitheredGrids(), exact);
    RecordProperty("overlap_dithered", std::to_string(dithered));
    EXPECT_GE(dithered, 0.80);

    std::mt19937_64 rng(9);
    std::vector<PatternGrid> grids;
    for (int trial = 0; trial < 300; ++trial) grids.push_back(Testing::RandomGrid(16, 16, rng, 2 + trial % 4));
    double random = QuarterTurnOverlap(grids, exact);
    RecordProperty("overlap_random", std::to_string(random));
    EXPECT_GE(random, 0.80);
}

} // namespace
} // namespace Sdpf
