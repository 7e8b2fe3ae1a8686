#include <string>
#include <vector>

#include "pallor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pallor::cli_dispatch(args);
}
