#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tnz {

struct RunConfig {
  std::string command;
  std::string input_path;
  std::optional<std::vector<long long>> cocycle_override;
  double tolerance = 1e-12;
  int n = 2;
  std::string format = "json";
  std::string curve = "longitude";
  std::optional<int> face;  // face-pairing for pachner; first eligible one when absent
};

// Exit status: 0 ok, 1 check failure, 2 input error, 3 solver failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tnz
