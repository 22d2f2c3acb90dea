// Prints a generated lava-tube map in the text map format.
#include <iostream>

#include <CLI11.hpp>

#include "lavatube/grid_map.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a lava-tube occupancy map"};
  std::uint64_t seed = 42;
  int width = 20, height = 20;
  double density = 0.2;
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--width", width, "Columns")->check(CLI::PositiveNumber);
  app.add_option("--height", height, "Rows")->check(CLI::PositiveNumber);
  app.add_option("--density", density, "Obstacle probability per cell")->check(CLI::Range(0.0, 0.999999));
  CLI11_PARSE(app, argc, argv);
  try {
    std::cout << lavatube::explore::generate_tube(seed, width, height, density, 1.0).to_text();
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
