#include <iostream>
#include <string>
#include <vector>

#include "pmd/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto res = pmd::run_command(args, std::cin);
  const bool to_stderr = res.report.error && res.output.front() != '{';
  (to_stderr ? std::cerr : std::cout) << res.output;
  return res.exit_code;
}
