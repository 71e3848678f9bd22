#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cavitylab/atlas.hpp"
#include "cavitylab/full_dynamics.hpp"
#include "cavitylab/grid.hpp"
#include "cavitylab/params.hpp"

namespace cavitylab {

enum class Units { reduced, absolute };

Units parse_units(const std::string& name);
std::string to_string(Units u);

// Shortest text that reads back to the same double.
std::string format_double(double x);

using CommentLines = std::vector<std::pair<std::string, std::string>>;

// "key = value" pairs for every physical parameter plus K.
CommentLines parameter_comments(const PhysicalParams& p);

// All writers emit '#'-prefixed "key = value" lines, then one header row
// whose column names carry their units, then the data.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const PhysicalParams& p, const Kinematics& k,
                          const CommentLines& extra = {});

// Wide format: the header row lists the ell samples, each following row
// starts with its v sample and holds the cell values.
void write_grid_csv(std::ostream& os, const Grid& grid, const PhysicalParams& p,
                    Units units, const std::string& value_name,
                    const CommentLines& extra = {});

void write_curve_csv(std::ostream& os, const ConditionCurve& curve,
                     const PhysicalParams& p, Units units);

// Accepts either unit flavour written by write_curve_csv; absolute files
// are converted back to reduced units with p. Throws ConfigError on
// malformed input.
ConditionCurve read_curve_csv(std::istream& is, const PhysicalParams& p);

void write_report_csv(std::ostream& os, const VerificationReport& report,
                      const PhysicalParams& p);

struct RunManifest {
  std::string config_path;
  std::string command;
  std::string output_dir;
  std::string timestamp;  // ISO 8601, UTC
  CommentLines parameters;
  std::vector<std::string> files;
};

std::string utc_timestamp();
std::string manifest_json(const RunManifest& m);

}  // namespace cavitylab
