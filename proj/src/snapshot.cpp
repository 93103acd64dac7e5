#include "sdlab/snapshot.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>

namespace sdlab {

std::string component_key(unsigned mask) {
  std::string key;
  for (int axis = 0; axis < Grid::max_dim; ++axis) {
    if ((mask & (1u << axis)) == 0) continue;
    if (!key.empty()) key += ',';
    key += std::to_string(axis + 1);
  }
  return key;
}

unsigned component_mask_from_key(const std::string& key) {
  unsigned mask = 0;
  std::size_t pos = 0;
  while (pos < key.size()) {
    std::size_t next = key.find(',', pos);
    if (next == std::string::npos) next = key.size();
    const int axis = std::stoi(key.substr(pos, next - pos));
    if (axis < 1 || axis > Grid::max_dim) {
      throw std::invalid_argument("component key axis out of range: " + key);
    }
    mask |= 1u << (axis - 1);
    pos = next + 1;
  }
  return mask;
}

nlohmann::json form_to_json(const Form& form) {
  const Grid& grid = form.grid();
  nlohmann::json j;
  j["degree"] = form.degree();
  auto sizes = nlohmann::json::array();
  auto spacings = nlohmann::json::array();
  auto metric = nlohmann::json::array();
  for (int a = 0; a < grid.dim(); ++a) {
    sizes.push_back(grid.size(a));
    spacings.push_back(grid.spacing(a));
    metric.push_back(grid.metric_coeff(a));
  }
  j["sizes"] = std::move(sizes);
  j["spacings"] = std::move(spacings);
  j["metric"] = std::move(metric);
  nlohmann::json comps = nlohmann::json::object();
  for (int c = 0; c < form.component_count(); ++c) {
    comps[component_key(form.mask_of(c))] = form.component(c);
  }
  j["components"] = std::move(comps);
  return j;
}

Form form_from_json(const nlohmann::json& j) {
  const auto sizes = j.at("sizes").get<std::vector<int>>();
  const auto spacings = j.at("spacings").get<std::vector<double>>();
  std::vector<double> metric;
  if (j.contains("metric")) metric = j.at("metric").get<std::vector<double>>();
  Grid grid(sizes, spacings, metric);
  const int degree = j.at("degree").get<int>();
  Form out(grid, degree);
  const auto& comps = j.at("components");
  if (comps.size() != static_cast<std::size_t>(out.component_count())) {
    throw std::invalid_argument("form snapshot: wrong component count for degree");
  }
  for (auto it = comps.begin(); it != comps.end(); ++it) {
    const unsigned mask = component_mask_from_key(it.key());
    if (std::popcount(mask) != degree) {
      throw std::invalid_argument("form snapshot: component key '" + it.key() +
                                  "' does not match degree");
    }
    auto values = it.value().get<std::vector<double>>();
    if (values.size() != grid.node_count()) {
      throw std::invalid_argument("form snapshot: component '" + it.key() +
                                  "' has wrong length");
    }
    out.component(out.index_of(mask)) = std::move(values);
  }
  return out;
}

void write_form(const Form& form, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << form_to_json(form).dump(2) << '\n';
}

Form read_form(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  nlohmann::json j;
  is >> j;
  return form_from_json(j);
}

}  // namespace sdlab
