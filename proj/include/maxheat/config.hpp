#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "maxheat/coupled.hpp"

namespace maxheat
{

struct OutputConfig
{
  std::string dir = "out";
  int snapshot_stride = 0;  // 0 disables snapshots
  bool fields = false;      // write fields_<step>.csv at the stride
};

//
// A fully resolved run. `document` is the normalized JSON configuration with
// every default filled in; feeding it back through parse_run_config()
// reproduces the same run.
//
struct RunConfig
{
  nlohmann::json document;
  CoupledConfig coupled;
  OutputConfig output;
  int threads = 1;
};

// Validates the schema (unknown keys are rejected), fills defaults and builds
// the initial data. Throws ConfigError naming the offending key.
RunConfig parse_run_config(const nlohmann::json &doc);
RunConfig load_run_config(const std::string &path);

std::vector<std::string> preset_names();
std::string preset_description(const std::string &name);

// Configuration document for a named scenario. Throws ConfigError for an
// unknown name.
nlohmann::json preset_document(const std::string &name);

// Initial data builders, also used directly by tests.
NodalField cavity_mode_dz(const Domain &dom, double amplitude = 1.0);
FaceField annulus_b0_faces(const Domain &dom);
FaceField uniform_b(const Domain &dom, double bx, double by);

}  // namespace maxheat
