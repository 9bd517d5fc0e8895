// csv.hpp — Locale-independent CSV output for trajectories.
#pragma once

#include <string>
#include <vector>

#include "cqed/integrator.hpp"

namespace cqed::cli {

// Shortest round-trip decimal representation, always '.'-decimal.
std::string format_double(double v);

// Header "t_fs,population,sx,sy,sz,photon_total[,n0..n{N-1}]".
void write_trajectory_csv(const std::string& path, const integrator::Trajectory& traj,
                          bool per_mode);

// One column per labeled population series, shared time axis. Shorter series
// (e.g. diverged runs) are padded with "nan".
void write_columns_csv(const std::string& path, const std::vector<double>& times_fs,
                       const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& columns);

} // namespace cqed::cli
