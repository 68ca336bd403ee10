#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "freeknot/sampler.hpp"
#include "freeknot/summary.hpp"

namespace freeknot {

// Standard comment header written at the top of every output file:
// tool version, the kind of output, and the full flag set of the run.
std::string output_header(const std::string& kind, const std::string& args_echo);

// Shortest decimal representation that parses back to exactly v.
std::string format_double(double v);

// Chain dump: one CSV record per retained draw,
//   iter,j,grid_indices,theta,log_post,move,accepted
// with semicolon-joined index and coefficient lists. A "# meta:" comment
// carries the key=value pairs needed to rebuild the states (order, period,
// prior bounds, schedule, seed), so a dump is self-describing.
void write_chain_csv(const std::string& path, const std::vector<ChainDraw>& draws,
                     const std::map<std::string, std::string>& meta,
                     const std::string& args_echo);

struct LoadedChain {
  std::vector<ChainDraw> draws;
  std::map<std::string, std::string> meta;
};

LoadedChain read_chain_csv(const std::string& path);

double meta_num(const std::map<std::string, std::string>& meta, const std::string& key);

void write_band_csv(const std::string& path, const CredibleBand& band,
                    const std::string& args_echo);
void write_histogram_csv(const std::string& path, const KnotHistogram& hist,
                         const std::string& args_echo);
void write_trace_csv(const std::string& path, const DimTrace& trace,
                     const std::string& args_echo);

}  // namespace freeknot
