#include "mems/field_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mems {

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".json");
  return p;
}

void write_field(const std::filesystem::path& csv, const RadialField& field) {
  if (!field.grid) throw std::invalid_argument("field without grid");
  const auto& grid = *field.grid;
  std::ofstream out(csv);
  if (!out) throw std::runtime_error("cannot write " + csv.string());
  out << "r,u\n";
  char buf[64];
  for (int i = 0; i < grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid.nodes()[i], field.values[i]);
    out << buf;
  }

  nlohmann::ordered_json meta;
  meta["N"] = grid.dimension();
  meta["M"] = grid.size();
  meta["gamma"] = grid.grading();
  meta["alpha"] = field.boundary.alpha;
  meta["beta"] = field.boundary.beta;
  std::ofstream side(sidecar_path(csv));
  if (!side) throw std::runtime_error("cannot write sidecar for " + csv.string());
  side << meta.dump(2) << "\n";
}

RadialField read_field(const std::filesystem::path& csv) {
  std::ifstream side(sidecar_path(csv));
  if (!side) throw std::runtime_error("missing sidecar for " + csv.string());
  const auto meta = nlohmann::json::parse(side);
  RadialField field;
  field.grid = build_grid(meta.at("N").get<int>(), meta.at("M").get<int>(), meta.at("gamma").get<double>());
  field.boundary = {meta.at("alpha").get<double>(), meta.at("beta").get<double>()};

  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot read " + csv.string());
  std::string line;
  std::getline(in, line);
  if (line != "r,u") throw std::runtime_error("bad header in " + csv.string());
  const auto& r = field.grid->nodes();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("bad row in " + csv.string());
    const double ri = std::stod(line.substr(0, comma));
    const size_t k = field.values.size();
    if (k >= r.size() || std::abs(ri - r[k]) > 1e-15 * std::max(1.0, r[k]))
      throw std::runtime_error("node mismatch in " + csv.string());
    field.values.push_back(std::stod(line.substr(comma + 1)));
  }
  if (field.values.size() != r.size()) throw std::runtime_error("row count mismatch in " + csv.string());
  return field;
}

}  // namespace mems
