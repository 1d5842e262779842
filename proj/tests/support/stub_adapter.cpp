// Stand-in for the model adapter process. Usage: stub_adapter [ok|bad-id|count|error|hang|crash]

#include <iostream>
#include <string>
#include <thread>

#include "stub_handler.hpp"

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "ok";
  std::string line;
  while (std::getline(std::cin, line)) {
    if (mode == "crash") return 1;
    if (mode == "hang") std::this_thread::sleep_for(std::chrono::hours(1));
    std::cout << stub::handle(line, mode) << '\n' << std::flush;
  }
  return 0;
}
