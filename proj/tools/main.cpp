#include <string>
#include <vector>

#include "ptbloch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ptbloch::cli::run(args);
}
