#pragma once

#include <string>

#include <json.hpp>

#include "sdlab/form.hpp"

namespace sdlab {

// Form snapshot format:
//   { "degree": int, "sizes": [int], "spacings": [float], "metric": [float],
//     "components": { "1,3": [flattened row-major floats], ... } }
// Component keys are the ascending 1-based axis indices joined by commas;
// the single component of a 0-form uses the empty key "".
nlohmann::json form_to_json(const Form& form);
Form form_from_json(const nlohmann::json& j);

std::string component_key(unsigned mask);
unsigned component_mask_from_key(const std::string& key);

void write_form(const Form& form, const std::string& path);
Form read_form(const std::string& path);

}  // namespace sdlab
