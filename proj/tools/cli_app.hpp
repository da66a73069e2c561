#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nomic {

// Parsed command line, normalized before dispatch.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string field = "z2";
  std::size_t n_s = 1;
  std::size_t n_a = 1;
  std::string mode = "exhaustive";
  std::optional<std::uint64_t> seed;
  std::size_t samples = 100;
  std::size_t word_length = 8;
  std::string output;
  std::string format = "json";
  std::string builtin;
  std::string initial;
  bool all_initial = false;
  std::string factor;
  std::size_t threads = 1;

  // seed is required in sample mode; reports carry it for replay
  void validate() const;
};

// Full command dispatch with injectable streams; returns the process exit
// code (0 success, 1 usage or infeasible, 2 mathematical failure).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace nomic
