#include <string>
#include <vector>

#include "preslab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return preslab::cli::run(args);
}
