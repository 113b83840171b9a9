#include "qlab/report.hpp"

#include <chrono>

namespace qlab {

MeasureReport make_report(MeasureEngine& engine, const QueryFunction& f,
                          const std::vector<MeasureSpec>& measures) {
  auto start = std::chrono::steady_clock::now();
  MeasureReport r;
  r.function = canonical_encoding(f);
  for (const auto& m : measures) r.measures.emplace_back(m.name(), engine.measure(f, m));
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::ordered_json report_json(const MeasureReport& r) {
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  nlohmann::ordered_json certs = nlohmann::ordered_json::object();
  for (const auto& [name, res] : r.measures) {
    values[name] = to_fraction_string(res.value);
    certs[name] = res.certificate;
  }
  return {{"function", r.function},
          {"measures", values},
          {"certificates", certs},
          {"engine_version", kEngineVersion},
          {"elapsed_ms", r.elapsed_ms}};
}

std::string report_text(const MeasureReport& r) {
  std::string out = r.function + "\n";
  for (const auto& [name, res] : r.measures) out += "  " + name + " = " + to_string(res.value) + "\n";
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_header(const std::vector<MeasureSpec>& measures) {
  std::string out = "function";
  for (const auto& m : measures) out += "," + csv_field(m.name());
  return out;
}

std::string csv_row(const MeasureReport& r) {
  std::string out = csv_field(r.function);
  for (const auto& [name, res] : r.measures) out += "," + to_string(res.value);
  return out;
}

}  // namespace qlab
