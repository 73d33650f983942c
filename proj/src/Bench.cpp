/**
 * @file Bench.cpp
 */

#include <sdpf/Bench.h>
#include <sdpf/Error.h>
#include <sdpf/Extractor.h>

#include <chrono>
#include <cstdio>
#include <ostream>

namespace Sdpf {

BenchReport RunBench(const Image& img, int repetitions, int warmup, const DescriptorConfig& cfg) {
    if (repetitions < 1) throw InvalidArgument("bench needs at least one repetition");
    if (warmup < 0) throw InvalidArgument("warmup count must not be negative");
    const ConstantCoefficients coeffs;
    for (int k = 0; k < warmup; ++k) {
        (void)ExtractDetailed(img, cfg, coeffs, nullptr);
    }

    StageTimes times{};
    double total = 0.0;
    for (int k = 0; k < repetitions; ++k) {
        auto start = std::chrono::steady_clock::now();
        (void)ExtractDetailed(img, cfg, coeffs, &times);
        total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    BenchReport report;
    report.repetitions = repetitions;
    for (int s = 0; s < kStageCount; ++s) {
        report.stages.push_back({std::string(StageName(static_cast<Stage>(s))),
                                 times[static_cast<size_t>(s)] * 1000.0 / repetitions});
    }
    report.totalMeanMs = total * 1000.0 / repetitions;
    return report;
}

void WriteBenchCsv(const BenchReport& report, std::ostream& out) {
    char buf[32];
    out << "stage,mean_ms\n";
    for (const BenchRow& row : report.stages) {
        std::snprintf(buf, sizeof(buf), "%.6f", row.meanMs);
        out << row.stage << ',' << buf << '\n';
    }
    std::snprintf(buf, sizeof(buf), "%.6f", report.totalMeanMs);
    out << "Total," << buf << '\n';
}

} // namespace Sdpf
