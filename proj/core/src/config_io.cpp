#include "metiblt/config_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace metiblt {

namespace {

using nlohmann::ordered_json;

ordered_json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error(path + ": top level must be an object");
  return doc;
}

void write_file(const ordered_json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string file_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

ExtendableDesign design_from_json(const ordered_json& doc) {
  ExtendableDesign design;
  design.m1 = doc.at("m1").get<std::uint64_t>();
  design.p = doc.at("type_dist").get<std::vector<double>>();
  design.base_rows = doc.at("degree_rows").get<std::vector<std::vector<int>>>();
  if (doc.contains("max_degree")) design.max_degree = doc.at("max_degree").get<int>();
  design.validate();
  return design;
}

ordered_json design_to_json(const ExtendableDesign& design) {
  ordered_json doc;
  doc["m1"] = design.m1;
  doc["type_dist"] = design.p;
  doc["degree_rows"] = design.base_rows;
  doc["max_degree"] = design.max_degree;
  return doc;
}

MetConfig config_from_json(const ordered_json& doc, const std::string& default_id) {
  MetConfig config;
  config.id = doc.value("id", default_id);
  config.nu_bits = doc.value("nu_bits", 32);
  config.kappa_bits = doc.value("kappa_bits", 32);
  config.seed = doc.value("seed", std::uint64_t{0});

  if (doc.contains("extendable")) {
    ExtendableDesign design = design_from_json(doc.at("extendable"));
    int cell_types = doc.value("cell_types", static_cast<int>(design.base_rows.size()));
    return design.materialize(cell_types, config.nu_bits, config.kappa_bits, config.seed,
                              config.id);
  }

  config.type_dist = doc.at("type_dist").get<std::vector<double>>();
  config.degree = doc.at("degree").get<std::vector<std::vector<int>>>();
  config.cells_per_type = doc.at("cells_per_type").get<std::vector<std::uint64_t>>();
  config.validate();
  return config;
}

}  // namespace

MetConfig load_config(const std::string& path) {
  try {
    return config_from_json(parse_file(path), file_stem(path));
  } catch (const std::exception& e) {
    throw std::runtime_error("config " + path + ": " + e.what());
  }
}

MetConfig parse_config(const std::string& json_text, const std::string& default_id) {
  ordered_json doc = ordered_json::parse(json_text);
  if (!doc.is_object()) throw std::runtime_error("config: top level must be an object");
  return config_from_json(doc, default_id);
}

void save_config(const MetConfig& config, const std::string& path) {
  config.validate();
  ordered_json doc;
  doc["id"] = config.id;
  doc["nu_bits"] = config.nu_bits;
  doc["kappa_bits"] = config.kappa_bits;
  doc["seed"] = config.seed;
  if (config.extendable) {
    doc["extendable"] = design_to_json(*config.extendable);
    doc["cell_types"] = config.cell_types();
  } else {
    doc["type_dist"] = config.type_dist;
    doc["degree"] = config.degree;
    doc["cells_per_type"] = config.cells_per_type;
  }
  write_file(doc, path);
}

ExtendableDesign load_design(const std::string& path) {
  try {
    return design_from_json(parse_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error("design " + path + ": " + e.what());
  }
}

void save_design(const ExtendableDesign& design, const std::string& path) {
  design.validate();
  write_file(design_to_json(design), path);
}

}  // namespace metiblt
