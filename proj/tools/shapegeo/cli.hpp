#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shapegeo::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kLiftWarning = 2, kSingular = 3, kBadSet = 4 };

struct RunConfig {
  std::size_t N = 256;         // resample count
  std::size_t segments = 128;  // DP segments per curve
  std::size_t n_offsets = 128;
  std::size_t n_rot = 64;
  std::size_t window_open = 6;
  std::size_t window_closed = 2;
  std::size_t frames = 9;
  double eps_speed = -1.0;  // negative selects the library default
  double eps_z = -1.0;
  unsigned seed = 7;
  double T = 1.0;
  std::size_t steps = 200;
  unsigned threads = 0;
  std::string out;      // main report, stdout when empty
  std::string out_dir;  // frames, SVG strips, trajectories
};

int run(int argc, char** argv);
// Same as run(argc, argv) with explicit arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shapegeo::cli
