#include "qeorbit/report.hpp"

#include <charconv>

namespace qeorbit {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out = csv_row(header);
  for (const auto& r : rows) out += csv_row(r);
  return out;
}

nlohmann::ordered_json closed_form_value(double value) {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["method"] = "closed-form";
  return j;
}

nlohmann::ordered_json weingarten_value(double value, const std::string& exact) {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["method"] = "weingarten";
  if (!exact.empty()) j["exact"] = exact;
  return j;
}

nlohmann::ordered_json monte_carlo_value(double value, double standard_error,
                                         long samples, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["method"] = "monte-carlo";
  j["samples"] = samples;
  j["stderr"] = standard_error;
  j["seed"] = seed;
  return j;
}

nlohmann::ordered_json enumeration_value(double value) {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["method"] = "enumeration";
  return j;
}

nlohmann::ordered_json enumeration_count(long long value) {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["method"] = "enumeration";
  return j;
}

}  // namespace qeorbit
