#pragma once
#include <string>

#include "ftspan/pipeline.hpp"

namespace ftspan {

// One edge per line: {"u":..,"v":..,"w":..,"kind":..,"level":..} with u < v,
// in emission order. Weights are in normalized units (minimum distance 1);
// the stats record the scale needed to map back.
void write_edges_jsonl(const std::string& path, const FtSpanner& sp);

// Inverse of write_edges_jsonl over a known point count. Malformed lines,
// out-of-range ids and unknown kind names are config_errors.
FtSpanner read_edges_jsonl(const std::string& path, int n);

// Everything a build produced, as one stable-keyed JSON document. No timings
// on purpose: two runs of the same command must produce identical bytes.
std::string stats_json(const BuildResult& r);

void write_text(const std::string& path, const std::string& text);

}  // namespace ftspan
