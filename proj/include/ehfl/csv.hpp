#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>

#include "ehfl/bound.hpp"
#include "ehfl/trainer.hpp"

namespace ehfl::csvio {

// Shortest representation that round-trips a double (17 significant digits).
std::string format_double(double v);

// Columns: t,participants,C_t,loss,accuracy,sig_power,int_power,noise_power,skipped
void write_round_csv(const std::filesystem::path& path,
                     std::span<const trainer::RoundRecord> records);

// Columns: t,X,Y,bound_dist,bound_loss; writes at most `rows` leading points.
void write_bound_csv(const std::filesystem::path& path,
                     std::span<const bound::TracePoint> trace, std::size_t rows);

// key = value lines, sorted; parseable as a config file for an exact re-run.
void write_manifest(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& resolved);

}  // namespace ehfl::csvio
