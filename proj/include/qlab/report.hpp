#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlab/measures.hpp"

namespace qlab {

struct MeasureReport {
  std::string function;
  std::vector<std::pair<std::string, MeasureResult>> measures;  // in request order
  double elapsed_ms = 0;
};

MeasureReport make_report(MeasureEngine& engine, const QueryFunction& f,
                          const std::vector<MeasureSpec>& measures);

/// {function, measures: {name: "num/den"}, certificates, engine_version, elapsed_ms}
nlohmann::ordered_json report_json(const MeasureReport& r);

/// One "name = value" line per measure after the function line.
std::string report_text(const MeasureReport& r);

std::string csv_header(const std::vector<MeasureSpec>& measures);
std::string csv_row(const MeasureReport& r);

/// RFC 4180 quoting when the field holds a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace qlab
