#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rotframe/metric.hpp"
#include "rotframe/quantify.hpp"
#include "rotframe/rotation.hpp"
#include "rotframe/stable.hpp"
#include "rotframe/wave.hpp"

namespace rotframe {

// Deterministic output formats: JSON is UTF-8 with keys sorted and reals
// printed with 17 significant digits; CSV follows RFC 4180 (header row, CRLF);
// OBJ is plain ASCII v/f records.

class JsonValue {
 public:
  using Object = std::map<std::string, JsonValue>;
  using Array = std::vector<JsonValue>;

  JsonValue() : v_(nullptr) {}
  JsonValue(std::nullptr_t) : v_(nullptr) {}
  JsonValue(bool b) : v_(b) {}
  JsonValue(int i) : v_(static_cast<long long>(i)) {}
  JsonValue(long long i) : v_(i) {}
  JsonValue(unsigned long long i) : v_(static_cast<long long>(i)) {}
  JsonValue(double d) : v_(d) {}
  JsonValue(const char* s) : v_(std::string(s)) {}
  JsonValue(std::string s) : v_(std::move(s)) {}
  JsonValue(Array a) : v_(std::move(a)) {}
  JsonValue(Object o) : v_(std::move(o)) {}

  std::string dump() const;

 private:
  void dump_to(std::string& out) const;
  std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> v_;
};

std::string csv_join(const std::vector<std::vector<std::string>>& rows);

std::string metric_json(const IntervalForm& form);
std::string metric_json(const AveragedMetric& metric);
std::string metric_csv(const Mat4& g);

std::string property_report_json(const PropertyReport& report, int trials);
std::string property_report_csv(const PropertyReport& report);

std::string size_spectrum_json(const SizeSpectrum& spec);
std::string size_spectrum_csv(const SizeSpectrum& spec);

std::string residual_report_json(const ResidualReport& rep, double beta, double gamma,
                                 const std::string& profile_name, double order_estimate,
                                 bool has_order);
std::string klein_gordon_json(const KleinGordonReport& rep, double beta, double gamma,
                              const std::string& profile_name, double order_estimate = 0.0,
                              bool has_order = false);

std::string scan_json(const std::vector<CancellationScanEntry>& entries,
                      const std::vector<double>& cancellations, PairSigns signs,
                      const std::string& profile_name);
std::string scan_csv(const std::vector<CancellationScanEntry>& entries);

std::string obj_export(const SurfaceMesh& mesh);
/// Minimal OBJ reader: counts v/f records and parses vertices (round-trip
/// checks and downstream tooling).
SurfaceMesh obj_import(const std::string& text);

/// CSV field dump of a complex field sampled on the grid: x,y,z,re,im.
std::string field_dump_csv(const BoostedWave& wave, const GridSpec& grid);

}  // namespace rotframe
