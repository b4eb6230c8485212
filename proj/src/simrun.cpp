// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/simrun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace t2m::simrun {

namespace fs = std::filesystem;

namespace {

double require(const std::map<std::string, double>& m, const std::string& key,
               const std::string& what) {
  auto it = m.find(key);
  if (it == m.end()) throw std::invalid_argument("missing " + what + ": " + key);
  return it->second;
}

void check_finite(const std::map<std::string, double>& state) {
  for (const auto& [k, v] : state)
    if (!std::isfinite(v)) throw std::runtime_error("non-finite state: " + k);
}

}  // namespace

std::map<std::string, double> reference_step(const std::string& semantics_id,
                                             const std::map<std::string, double>& state,
                                             const std::map<std::string, double>& params,
                                             double dt) {
  check_finite(state);
  if (semantics_id == "pendulum_semi_implicit") {
    const double g = require(params, "gravity", "parameter");
    const double length = require(params, "length", "parameter");
    double theta = require(state, "angle", "state");
    double omega = require(state, "angular_velocity", "state");
    const double alpha = -(g / length) * std::sin(theta);
    omega = omega + alpha * dt;
    theta = theta + omega * dt;
    return {{"angle", theta}, {"angular_velocity", omega}};
  }
  if (semantics_id == "mass_spring_semi_implicit") {
    const double m = require(params, "mass", "parameter");
    const double k = require(params, "spring_constant", "parameter");
    double x = require(state, "displacement", "state");
    double v = require(state, "velocity", "state");
    const double a = -(k / m) * x;
    v = v + a * dt;
    x = x + v * dt;
    return {{"displacement", x}, {"velocity", v}};
  }
  throw std::invalid_argument("unknown semantics id: " + semantics_id);
}

namespace {

struct Component {
  std::string name;
  std::string semantics_id;
  std::vector<std::string> state_names;
  std::map<std::string, double> params;
  std::map<std::string, double> state;
};

double natural_frequency(const Component& c) {
  auto get = [&](const std::string& k) {
    auto it = c.params.find(k);
    return it == c.params.end() ? 0.0 : it->second;
  };
  if (c.semantics_id == "pendulum_semi_implicit" && get("length") > 0)
    return std::sqrt(get("gravity") / get("length"));
  if (c.semantics_id == "mass_spring_semi_implicit" && get("mass") > 0)
    return std::sqrt(get("spring_constant") / get("mass"));
  return 0.0;
}

}  // namespace

Trajectory run_reference(const json& system_plan, const SimConfig& cfg) {
  if (cfg.time_step <= 0 || cfg.total_time <= 0)
    throw std::invalid_argument("time_step and total_time must be positive");
  std::vector<Component> comps;
  for (const auto& jc : system_plan.value("components", json::array())) {
    Component c;
    c.name = jc.value("name", "");
    c.semantics_id = jc.at("semantics_id").get<std::string>();
    c.state_names = jc.at("states").get<std::vector<std::string>>();
    for (auto it = jc.at("parameters").begin(); it != jc.at("parameters").end(); ++it)
      if (!it.value().is_null()) c.params[it.key()] = it.value().get<double>();
    for (const auto& s : c.state_names) {
      auto found = cfg.initial_conditions.find(s);
      c.state[s] = found == cfg.initial_conditions.end() ? 0.0 : found->second;
    }
    const double wn = natural_frequency(c);
    if (wn * cfg.time_step > 0.5)
      std::cerr << "warning: component " << c.name << " has natural frequency " << wn
                << " rad/s; time step " << cfg.time_step
                << " s exceeds the stability guideline (w_n * dt > 0.5), results may be "
                   "non-physical\n";
    comps.push_back(std::move(c));
  }

  Trajectory t;
  const long steps = (long)std::floor(cfg.total_time / cfg.time_step);
  for (const auto& c : comps)
    for (const auto& s : c.state_names) t.states[s] = {};
  for (long i = 0; i < steps; ++i) {
    t.time.push_back(double(i) * cfg.time_step);
    for (auto& c : comps) {
      c.state = reference_step(c.semantics_id, c.state, c.params, cfg.time_step);
      for (const auto& s : c.state_names) t.states[s].push_back(c.state.at(s));
    }
  }
  return t;
}

Trajectory run_generated(const std::string& out_dir, const SimConfig& cfg,
                         const std::string& runtime) {
  if (!fs::exists(fs::path(out_dir) / "main.py"))
    throw std::runtime_error("no main.py in " + out_dir);
  json args = {{"time_step", cfg.time_step}, {"total_time", cfg.total_time}};
  for (const auto& [k, v] : cfg.initial_conditions) args["initial_" + k] = v;

  fs::path in_path = fs::path(out_dir) / ".sim_args.json";
  fs::path out_path = fs::path(out_dir) / ".sim_out.json";
  fs::path err_path = fs::path(out_dir) / ".sim_err.txt";
  write_file(in_path.string(), args.dump());

  std::string cmd = "cd '" + out_dir + "' && " + runtime +
                    " main.py < .sim_args.json > .sim_out.json 2> .sim_err.txt";
  int rc = std::system(cmd.c_str());
  std::string stderr_text = fs::exists(err_path) ? read_file(err_path.string()) : "";
  if (rc != 0)
    throw std::runtime_error("generated simulation failed (runtime: " + runtime +
                             ", exit code " + std::to_string(rc) + "): " + stderr_text);
  std::string out = read_file(out_path.string());
  json j;
  try {
    j = json::parse(out);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("malformed simulation output: ") + e.what() +
                             "; payload: " + out.substr(0, 200));
  }
  fs::remove(in_path);
  fs::remove(out_path);
  fs::remove(err_path);
  return trajectory_from_json(j);
}

json to_json(const Trajectory& t) {
  json j = {{"time", t.time}};
  for (const auto& [k, v] : t.states) j[k] = v;
  return j;
}

Trajectory trajectory_from_json(const json& j) {
  Trajectory t;
  t.time = j.at("time").get<std::vector<double>>();
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "time") t.states[it.key()] = it.value().get<std::vector<double>>();
  return t;
}

void export_trajectory(const Trajectory& t, const std::string& format, const std::string& path) {
  if (t.time.empty()) throw std::invalid_argument("empty trajectory");
  if (format == "json") {
    write_file(path, to_json(t).dump(2) + "\n");
    return;
  }
  if (format != "csv") throw std::invalid_argument("unknown trajectory format: " + format);
  std::ostringstream out;
  out << "time";
  for (const auto& [k, v] : t.states) out << "," << k;
  out << "\n";
  out.precision(17);
  for (size_t i = 0; i < t.time.size(); ++i) {
    out << t.time[i];
    for (const auto& [k, v] : t.states) out << "," << (i < v.size() ? v[i] : 0.0);
    out << "\n";
  }
  write_file(path, out.str());
}

void plot_trajectory(const Trajectory& t, const std::string& path) {
  if (t.time.empty()) throw std::invalid_argument("empty trajectory");
  const double w = 800, h = 400, margin = 50;
  double tmin = t.time.front(), tmax = t.time.back();
  double ymin = 0, ymax = 0;
  for (const auto& [k, v] : t.states)
    for (double y : v) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (ymax - ymin < 1e-12) {
    ymin -= 1;
    ymax += 1;
  }
  if (tmax - tmin < 1e-12) tmax = tmin + 1;
  auto sx = [&](double x) { return margin + (x - tmin) / (tmax - tmin) * (w - 2 * margin); };
  auto sy = [&](double y) { return h - margin - (y - ymin) / (ymax - ymin) * (h - 2 * margin); };

  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
      << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << h - margin << "\" stroke=\"black\"/>\n";
  int ci = 0;
  int label_y = 20;
  for (const auto& [k, v] : t.states) {
    const char* color = colors[ci++ % 5];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (size_t i = 0; i < t.time.size() && i < v.size(); ++i)
      svg << sx(t.time[i]) << "," << sy(v[i]) << " ";
    svg << "\"/>\n";
    svg << "<text x=\"" << w - margin - 150 << "\" y=\"" << label_y << "\" fill=\"" << color
        << "\">" << k << "</text>\n";
    label_y += 18;
  }
  svg << "</svg>\n";
  write_file(path, svg.str());
}

}  // namespace t2m::simrun
