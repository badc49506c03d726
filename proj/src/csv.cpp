#include "ehfl/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ehfl::csvio {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

void write_round_csv(const std::filesystem::path& path,
                     std::span<const trainer::RoundRecord> records) {
  std::ofstream out = open_out(path);
  out << "t,participants,C_t,loss,accuracy,sig_power,int_power,noise_power,skipped\n";
  for (const auto& r : records) {
    out << r.t << ',' << r.participants << ',' << format_double(r.weight_sum) << ','
        << format_double(r.loss) << ',' << format_double(r.accuracy) << ','
        << format_double(r.signal_power) << ',' << format_double(r.interference_power) << ','
        << format_double(r.noise_power) << ',' << (r.skipped ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("csv: write failed for '" + path.string() + "'");
}

void write_bound_csv(const std::filesystem::path& path,
                     std::span<const bound::TracePoint> trace, std::size_t rows) {
  std::ofstream out = open_out(path);
  out << "t,X,Y,bound_dist,bound_loss\n";
  const std::size_t n = std::min(rows, trace.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = trace[i];
    out << p.t << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
        << format_double(p.dist_bound) << ',' << format_double(p.loss_bound) << '\n';
  }
  if (!out) throw std::runtime_error("csv: write failed for '" + path.string() + "'");
}

void write_manifest(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& resolved) {
  std::ofstream out = open_out(path);
  out << "# resolved configuration; pass back via --config for an identical re-run\n";
  for (const auto& [key, value] : resolved) out << key << " = " << value << '\n';
  if (!out) throw std::runtime_error("csv: write failed for '" + path.string() + "'");
}

}  // namespace ehfl::csvio
