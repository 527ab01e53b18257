#include <atomic>
#include <csignal>
#include <iostream>

#include "fibavg/cli.hpp"

namespace {

std::atomic<bool> stop_requested{false};

extern "C" void on_sigint(int) { stop_requested.store(true); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);
  std::vector<std::string> args(argv + 1, argv + argc);
  return fibavg::cli::run(args, std::cout, std::cerr, &stop_requested);
}
