// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "t2m/util.hpp"

namespace t2m::simrun {

struct SimConfig {
  double time_step = 1.0;
  double total_time = 100.0;
  std::map<std::string, double> initial_conditions;  // missing states default to 0
};

struct Trajectory {
  std::vector<double> time;
  std::map<std::string, std::vector<double>> states;
  size_t steps() const { return time.size(); }
};

// One semi-implicit Euler step of a registered template semantics.
std::map<std::string, double> reference_step(const std::string& semantics_id,
                                             const std::map<std::string, double>& state,
                                             const std::map<std::string, double>& params,
                                             double dt);

// system_plan: {"components":[{name, semantics_id, states, parameters}]}.
Trajectory run_reference(const json& system_plan, const SimConfig& cfg);

// Runs main.py in out_dir as a subprocess, JSON config on stdin, trajectory
// JSON on stdout.
Trajectory run_generated(const std::string& out_dir, const SimConfig& cfg,
                         const std::string& runtime = "python3");

void export_trajectory(const Trajectory& t, const std::string& format, const std::string& path);
Trajectory trajectory_from_json(const json& j);
json to_json(const Trajectory& t);

// One SVG polyline per state vs time.
void plot_trajectory(const Trajectory& t, const std::string& path);

}  // namespace t2m::simrun
