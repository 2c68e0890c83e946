#include <iostream>

#include "sciwb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto report = sciwb::dispatch(args);
    std::cout << report.render();
    return report.ok() ? 0 : 1;
  } catch (const sciwb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == sciwb::Errc::UsageError ? 2 : 3;
  }
}
