#include "cqed/cli/csv.hpp"

#include <charconv>
#include <fstream>

#include "cqed/errors.hpp"
#include "cqed/units.hpp"

namespace cqed::cli {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

void write_trajectory_csv(const std::string& path, const integrator::Trajectory& traj,
                          bool per_mode) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    out << "t_fs,population,sx,sy,sz,photon_total";
    const std::size_t n_modes =
        (per_mode && !traj.observables.empty()) ? traj.observables.front().per_mode.size() : 0;
    for (std::size_t k = 0; k < n_modes; ++k) out << ",n" << k;
    out << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& o = traj.observables[i];
        out << format_double(units::time_from_natural(traj.times[i])) << ','
            << format_double(o.population) << ',' << format_double(o.sx) << ','
            << format_double(o.sy) << ',' << format_double(o.sz) << ','
            << format_double(o.photon_total);
        for (std::size_t k = 0; k < n_modes; ++k)
            out << ',' << format_double(k < o.per_mode.size() ? o.per_mode[k] : 0.0);
        out << "\n";
    }
    if (!out) throw IoError("error writing output file: " + path);
}

void write_columns_csv(const std::string& path, const std::vector<double>& times_fs,
                       const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& columns) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    out << "t_fs";
    for (const auto& l : labels) out << ',' << l;
    out << "\n";
    for (std::size_t i = 0; i < times_fs.size(); ++i) {
        out << format_double(times_fs[i]);
        for (const auto& col : columns)
            out << ',' << (i < col.size() ? format_double(col[i]) : std::string("nan"));
        out << "\n";
    }
    if (!out) throw IoError("error writing output file: " + path);
}

} // namespace cqed::cli
