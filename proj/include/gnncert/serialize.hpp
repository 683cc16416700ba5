#pragma once

#include <span>
#include <string>

#include "json.hpp"

#include "gnncert/bounds.hpp"
#include "gnncert/localize.hpp"
#include "gnncert/simulate.hpp"
#include "gnncert/tables.hpp"
#include "gnncert/validate.hpp"

namespace gnncert {

// JSON field names are part of the artifact's stable surface; see README.
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const LocalizationReport& report);
nlohmann::json to_json(const EmpiricalEstimate& estimate);
nlohmann::json to_json(const ValidationReport& report);

std::string format_double(double v); // shortest round-trip ("%.17g")

std::string bounds_csv(std::span<const BoundReport> reports);
std::string localization_csv(const LocalizationReport& report);
std::string validation_csv(const ValidationReport& report);

std::string bounds_text(std::span<const BoundReport> reports);
std::string localization_text(const LocalizationReport& report);
std::string validation_text(const ValidationReport& report);

} // namespace gnncert
