#include <string>
#include <vector>

#include "biortho/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return biortho::cli::dispatch(args);
}
