#include <string>
#include <vector>

#include "d3/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return d3::cli::run(args);
}
