#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "saddle/torsion.hpp"

namespace saddle {

// Flat key = value run description with '#' comments. Sizes are paper-style
// node-count labels of the full unit square: label N gives h = 1/(N-1), the
// quarter domain (N-1)/2 cells per axis, the square/disk N-1 cells.
struct RunManifest {
  torsion::Scheme scheme = torsion::Scheme::ES;
  Domain domain = Domain::quarter_square;
  int size = 101;  // node-count label, odd
  double lambda = 5.0;
  std::optional<double> epsilon;  // unset = auto (3h)
  int kappa = 50;
  std::optional<double> alpha, beta;  // both set or both auto
  double stop_tolerance = 1e-4;
  long max_outer_iters = 400000;
  double inner_tolerance = 1e-10;
  double disk_radius = 0.5;
  double disk_center_x = 0.5, disk_center_y = 0.5;
  long seed = 1;
  std::string output_dir = "out";
  bool emit_fields = false;

  bool operator==(const RunManifest&) const = default;

  torsion::TorsionConfig to_config() const;
};

GridSpec grid_for_label(int label, Domain domain, double disk_radius = 0.5,
                        double disk_cx = 0.5, double disk_cy = 0.5);

RunManifest parse_manifest(std::istream& is);
RunManifest parse_manifest_file(const std::string& path);
std::string render_manifest(const RunManifest& m);

std::string to_string(torsion::Scheme s);
torsion::Scheme scheme_from_string(const std::string& s);
std::string to_string(Domain d);
Domain domain_from_string(const std::string& s);

// One benchmark table row.
struct BenchRow {
  torsion::Scheme scheme;
  int size = 0;
  long iterations = 0;
  double wall_time = 0.0;
  double final_residual = 0.0;
  double primal_energy = 0.0;
  double dual_energy = 0.0;
  bool converged = false;
  std::string error;  // nonempty when the run failed
};

// history.csv: iter,residual,primal_energy,dual_energy
void write_history_csv(std::ostream& os, const torsion::TorsionResult& result);

// summary.json: BenchRow fields, config echo, termination.
void write_summary_json(std::ostream& os, const RunManifest& manifest,
                        const torsion::TorsionResult& result);

}  // namespace saddle
