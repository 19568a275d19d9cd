#ifndef TGM_SCENARIO_IO_HPP
#define TGM_SCENARIO_IO_HPP

#include <string>

#include "tgm/simworld.hpp"

namespace tgm {

/// Declarative scenario file, JSON. Schema is documented in the README.
Scenario load_scenario(const std::string& path);
void save_scenario(const std::string& path, const Scenario& scenario);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

/// Line-delimited frame log for replay: one JSON record per frame with the
/// truth pose and the scan.
void dump_frames(const Simulator& sim, const std::string& path);

}  // namespace tgm

#endif  // TGM_SCENARIO_IO_HPP
