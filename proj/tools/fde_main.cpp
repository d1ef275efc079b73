#include <string>
#include <vector>

#include "fde/cli.hpp"

int main(int argc, char** argv) {
  return fde::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
