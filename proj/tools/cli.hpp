#pragma once

#include "cse/state.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace cse::cli {

enum exit_code : int {
    ok = 0,
    runtime_failure = 1,
    parse_failure = 2,
    step_limit_failure = 3,
    usage_failure = 4,
};

struct CliConfig {
    std::string command;
    std::string input = "-";
    std::uint64_t step_limit = MachineConfig{}.step_limit;
    bool proper_tail_calls = false;
    /// Empty means standard output.
    std::string output;
    int port = 8731;

    MachineConfig machine() const { return MachineConfig{step_limit, proper_tail_calls}; }
};

/// Parses `args` (without the program name) and dispatches. Returns the exit
/// status.
int main(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
         std::ostream& err);

int cmd_run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_trace(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_derive(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_serve(const CliConfig& config, std::istream& in, std::ostream& err);

/// HTTP front for one precomputed trace document: `GET /trace`, `GET /health`.
class TraceServer {
public:
    explicit TraceServer(std::string trace_body);
    ~TraceServer();

    /// Binds to 127.0.0.1. Port 0 picks a free port. Returns the bound port, or
    /// -1 when binding fails.
    int bind(int port);
    /// Serves until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cse::cli
