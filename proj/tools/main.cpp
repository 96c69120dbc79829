#include <string>
#include <vector>

#include "qdot/cli.hpp"

int main(int argc, char** argv) {
  return qdot::run(std::vector<std::string>(argv, argv + argc));
}
