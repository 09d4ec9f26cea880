#pragma once

#include "mpt/assemble.hpp"
#include "mpt/config.hpp"

namespace mpt {

struct SweepRow {
  double omega = 0.0;
  std::string regime;  // model actually used; "failed" rows keep the error
  CMat3 M = CMat3::Zero();
  cplx B_diag[3] = {0.0, 0.0, 0.0};
  double normA = 0.0;
  double normRmsi = 0.0;
  bool has_oracle = false;
  cplx oracle_m{0.0, 0.0};
  double residual = 0.0;
  int iterations = 0;
  bool failed = false;
  std::string error;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;  // ascending omega
  bool any_failed = false;
};

// One frequency of the sweep pipeline (also the `tensors` path).
struct FrequencyResult {
  TensorBundle bundle;
  SweepRow row;
};
FrequencyResult run_frequency(const RunConfig& cfg, double omega,
                              std::shared_ptr<const Mesh> mesh);

SweepOutcome run_sweep(const RunConfig& cfg, int workers = 1);

const char* sweep_csv_header();
void write_sweep_csv(std::ostream& os, const SweepOutcome& outcome);

// Two-column (omega, value) plot series extraction from a sweep CSV.
struct PlotSeries {
  std::vector<double> omega;
  std::vector<double> value;
};
PlotSeries extract_series(std::istream& csv, const std::string& column);

}  // namespace mpt
