#include "freeknot/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "freeknot/version.hpp"

namespace freeknot {

namespace {

std::string fmt_double(double v) { return format_double(v); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

MoveKind move_from_name(const std::string& name, long line_no) {
  if (name == "perturb") return MoveKind::perturb;
  if (name == "knot_move") return MoveKind::knot_move;
  if (name == "birth") return MoveKind::birth;
  if (name == "death") return MoveKind::death;
  throw std::runtime_error("line " + std::to_string(line_no) + ": unknown move '" + name + "'");
}

}  // namespace

std::string output_header(const std::string& kind, const std::string& args_echo) {
  std::ostringstream out;
  out << "# freeknot " << kVersion << " " << kind << "\n";
  out << "# args: " << args_echo << "\n";
  return out.str();
}

std::string format_double(double v) {
  char buf[40];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void write_chain_csv(const std::string& path, const std::vector<ChainDraw>& draws,
                     const std::map<std::string, std::string>& meta,
                     const std::string& args_echo) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_chain_csv: cannot open '" + path + "'");
  out << output_header("chain", args_echo);
  out << "# meta:";
  for (const auto& [key, value] : meta) out << " " << key << "=" << value;
  out << "\n";
  out << "iter,j,grid_indices,theta,log_post,move,accepted\n";
  for (const ChainDraw& draw : draws) {
    out << draw.iteration << "," << draw.state.dim() << ",";
    const auto& idx = draw.state.grid_idx();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i > 0) out << ";";
      out << idx[i];
    }
    out << ",";
    const auto& theta = draw.state.theta();
    for (std::size_t i = 0; i < theta.size(); ++i) {
      if (i > 0) out << ";";
      out << fmt_double(theta[i]);
    }
    out << "," << fmt_double(draw.log_post) << "," << move_name(draw.move) << ","
        << (draw.accepted ? 1 : 0) << "\n";
  }
}

LoadedChain read_chain_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_chain_csv: cannot open '" + path + "'");
  LoadedChain chain;
  std::string line;
  long line_no = 0;
  int order = 0;
  double period = 0.0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string meta_tag = "# meta:";
      if (line.compare(0, meta_tag.size(), meta_tag) == 0) {
        std::istringstream fields(line.substr(meta_tag.size()));
        std::string pair;
        while (fields >> pair) {
          const std::size_t eq = pair.find('=');
          if (eq != std::string::npos) {
            chain.meta[pair.substr(0, eq)] = pair.substr(eq + 1);
          }
        }
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // column header
      order = static_cast<int>(meta_num(chain.meta, "order"));
      period = meta_num(chain.meta, "period");
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 7) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 7 chain fields");
    }
    ChainDraw draw{0,
                   SplineState(order, period, {},
                               std::vector<double>(static_cast<std::size_t>(order), 0.0)),
                   MoveKind::perturb, false, 0.0};
    draw.iteration = std::stol(fields[0]);
    const int j = std::stoi(fields[1]);
    std::vector<long> idx;
    if (!fields[2].empty()) {
      for (const std::string& s : split(fields[2], ';')) idx.push_back(std::stol(s));
    }
    std::vector<double> theta;
    if (!fields[3].empty()) {
      for (const std::string& s : split(fields[3], ';')) theta.push_back(std::stod(s));
    }
    if (static_cast<int>(theta.size()) != j) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": dimension does not match coefficient count");
    }
    draw.state = SplineState(order, period, std::move(idx), std::move(theta));
    draw.log_post = std::stod(fields[4]);
    draw.move = move_from_name(fields[5], line_no);
    draw.accepted = fields[6] == "1";
    chain.draws.push_back(std::move(draw));
  }
  if (!header_seen) throw std::runtime_error("read_chain_csv: '" + path + "' has no content");
  return chain;
}

double meta_num(const std::map<std::string, std::string>& meta, const std::string& key) {
  const auto it = meta.find(key);
  if (it == meta.end()) {
    throw std::runtime_error("chain dump is missing meta key '" + key + "'");
  }
  return std::stod(it->second);
}

void write_band_csv(const std::string& path, const CredibleBand& band,
                    const std::string& args_echo) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_band_csv: cannot open '" + path + "'");
  out << output_header("band", args_echo);
  out << "t,mean,lower,upper\n";
  for (std::size_t i = 0; i < band.grid.size(); ++i) {
    out << fmt_double(band.grid[i]) << "," << fmt_double(band.mean[i]) << ","
        << fmt_double(band.lower[i]) << "," << fmt_double(band.upper[i]) << "\n";
  }
}

void write_histogram_csv(const std::string& path, const KnotHistogram& hist,
                         const std::string& args_echo) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_histogram_csv: cannot open '" + path + "'");
  out << output_header("knot-histogram", args_echo);
  out << "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    out << fmt_double(hist.edges[i]) << "," << fmt_double(hist.edges[i + 1]) << ","
        << hist.counts[i] << "\n";
  }
}

void write_trace_csv(const std::string& path, const DimTrace& trace,
                     const std::string& args_echo) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trace_csv: cannot open '" + path + "'");
  out << output_header("dim-trace", args_echo);
  out << "iter,j\n";
  for (std::size_t i = 0; i < trace.iteration.size(); ++i) {
    out << trace.iteration[i] << "," << trace.dim[i] << "\n";
  }
}

}  // namespace freeknot
