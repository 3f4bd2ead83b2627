#ifndef METIBLT_CONFIG_IO_HPP
#define METIBLT_CONFIG_IO_HPP

#include <string>

#include "metiblt/config.hpp"
#include "metiblt/design.hpp"

namespace metiblt {

// JSON config files carry either the explicit table layout (type_dist,
// degree, cells_per_type) or an extendable design plus cell_types to
// materialize. Missing id falls back to the file stem.
MetConfig load_config(const std::string& path);
MetConfig parse_config(const std::string& json_text, const std::string& default_id);
void save_config(const MetConfig& config, const std::string& path);

ExtendableDesign load_design(const std::string& path);
void save_design(const ExtendableDesign& design, const std::string& path);

}  // namespace metiblt

#endif
