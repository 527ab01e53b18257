#pragma once

#include <atomic>
#include <ostream>
#include <string>
#include <vector>

namespace fibavg::cli {

enum exit_code : int {
  ok = 0,
  violation = 1,  // an audit, identity or family check failed
  usage = 2,
  io = 3,
  interrupted = 130,  // scan paused; the checkpoint holds the resume point
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and progress to `err`. `stop`, when given, is polled between
/// scan blocks so SIGINT can flush a checkpoint.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* stop = nullptr);

}  // namespace fibavg::cli
