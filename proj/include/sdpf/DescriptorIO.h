#pragma once

/**
 * @file DescriptorIO.h
 * @brief CSV persistence of labeled descriptors
 *
 * Format:
 *   SDPF1,<kd>,<ka>,<kc>,<normalized 0|1>
 *   <image-path>,<label>,<v0>,...,<v{D-1}>
 *
 * Values are printed with 9 significant digits.
 */

#include <sdpf/Descriptor.h>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace Sdpf {

struct DescriptorRecord {
    std::string path;
    std::string label;
    std::vector<double> values;
};

struct DescriptorTable {
    int distanceBins = 4;
    int angleBins = 8;
    int colorBins = 8;
    bool normalized = true;
    std::vector<DescriptorRecord> records;

    int Length() const { return distanceBins * angleBins * colorBins; }
};

void WriteDescriptorTable(const DescriptorTable& table, std::ostream& out);
void SaveDescriptorTable(const DescriptorTable& table, const std::filesystem::path& path);

DescriptorTable ReadDescriptorTable(std::istream& in);
DescriptorTable LoadDescriptorTable(const std::filesystem::path& path);

} // namespace Sdpf
