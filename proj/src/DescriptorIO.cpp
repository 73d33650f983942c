/**
 * @file DescriptorIO.cpp
 */

#include <sdpf/DescriptorIO.h>
#include <sdpf/Error.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace Sdpf {

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

int ParseInt(const std::string& s, const char* what) {
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') {
        throw MalformedFile(std::string("descriptor file: bad ") + what + " '" + s + "'");
    }
    return static_cast<int>(v);
}

double ParseDouble(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') {
        throw MalformedFile("descriptor file: bad value '" + s + "'");
    }
    return v;
}

void CheckField(const std::string& s, const char* what) {
    if (s.find_first_of(",\n\r") != std::string::npos) {
        throw InvalidArgument(std::string("descriptor file: ") + what + " contains a comma or newline: " + s);
    }
}

} // namespace

void WriteDescriptorTable(const DescriptorTable& table, std::ostream& out) {
    out << "SDPF1," << table.distanceBins << ',' << table.angleBins << ',' << table.colorBins << ','
        << (table.normalized ? 1 : 0) << '\n';
    char buf[32];
    for (const DescriptorRecord& rec : table.records) {
        CheckField(rec.path, "path");
        CheckField(rec.label, "label");
        if (static_cast<int>(rec.values.size()) != table.Length()) {
            throw InvalidArgument("descriptor length does not match table header");
        }
        out << rec.path << ',' << rec.label;
        for (double v : rec.values) {
            std::snprintf(buf, sizeof(buf), "%.9g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
}

void SaveDescriptorTable(const DescriptorTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    WriteDescriptorTable(table, out);
    if (!out) throw IoError("write failed: " + path.string());
}

DescriptorTable ReadDescriptorTable(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw MalformedFile("descriptor file: missing header");
    }
    auto header = SplitCsv(line);
    if (header.size() != 5 || header[0] != "SDPF1") {
        throw MalformedFile("descriptor file: bad header '" + line + "'");
    }
    DescriptorTable table;
    table.distanceBins = ParseInt(header[1], "k_d");
    table.angleBins = ParseInt(header[2], "k_a");
    table.colorBins = ParseInt(header[3], "k_c");
    int norm = ParseInt(header[4], "normalized flag");
    if (table.distanceBins < 1 || table.angleBins < 1 || table.colorBins < 1 || (norm != 0 && norm != 1)) {
        throw MalformedFile("descriptor file: header values out of range");
    }
    table.normalized = norm == 1;

    const size_t expected = static_cast<size_t>(table.Length()) + 2;
    size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        auto fields = SplitCsv(line);
        if (fields.size() != expected) {
            throw MalformedFile("descriptor file: line " + std::to_string(lineNo) + " has " +
                                std::to_string(fields.size()) + " fields, expected " + std::to_string(expected));
        }
        DescriptorRecord rec;
        rec.path = fields[0];
        rec.label = fields[1];
        rec.values.reserve(expected - 2);
        for (size_t k = 2; k < fields.size(); ++k) rec.values.push_back(ParseDouble(fields[k]));
        table.records.push_back(std::move(rec));
    }
    return table;
}

DescriptorTable LoadDescriptorTable(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open descriptor file: " + path.string());
    return ReadDescriptorTable(in);
}

} // namespace Sdpf
