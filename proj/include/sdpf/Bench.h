#pragma once

/**
 * @file Bench.h
 * @brief Per-stage timing of the extraction pipeline
 */

#include <sdpf/Descriptor.h>
#include <sdpf/Image.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace Sdpf {

struct BenchRow {
    std::string stage;
    double meanMs = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> stages; ///< pipeline order
    double totalMeanMs = 0.0;
    int repetitions = 0;
};

/// Single-threaded timing: @p warmup untimed runs, then @p repetitions timed runs.
BenchReport RunBench(const Image& img, int repetitions, int warmup = 10, const DescriptorConfig& cfg = {});

/// CSV with header "stage,mean_ms", one row per stage, then a "Total" row.
void WriteBenchCsv(const BenchReport& report, std::ostream& out);

} // namespace Sdpf
