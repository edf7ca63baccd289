#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qeorbit {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

/// RFC 4180 quoting: fields containing commas, quotes, or line breaks are
/// wrapped in double quotes with embedded quotes doubled.
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

/// Every numeric claim in a report carries one of these records saying how
/// the number was obtained.
nlohmann::ordered_json closed_form_value(double value);
nlohmann::ordered_json weingarten_value(double value, const std::string& exact);
nlohmann::ordered_json monte_carlo_value(double value, double standard_error,
                                         long samples, std::uint64_t seed);
nlohmann::ordered_json enumeration_value(double value);
nlohmann::ordered_json enumeration_count(long long value);

}  // namespace qeorbit
