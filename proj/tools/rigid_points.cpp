#include <string>
#include <vector>

#include "rigidpoints/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rigidpoints::run_command(args);
}
