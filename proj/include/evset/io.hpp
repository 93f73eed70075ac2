#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "evset/evolve.hpp"
#include "evset/report.hpp"
#include "evset/walk.hpp"

namespace evset {

// 17 significant digits: lossless round-trip for doubles in text outputs.
std::string fmt17(double v);

nlohmann::json report_to_json(const BoundReport& r);

std::string entropy_series_csv(const EntropySeries& series);
std::string green_series_csv(const std::vector<GreenPoint>& series);

// One JSON object per line, '\n' separated, trailing newline.
std::string to_jsonl(const std::vector<nlohmann::json>& records);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace evset
