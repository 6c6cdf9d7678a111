#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace crashsuite::detail {

struct ProcessResult {
    int exit_code = -1;
    bool timed_out = false;
    bool signaled = false;
};

/// Spawns argv[0] in its own process group with cwd and extra environment,
/// stdout and stderr appended to log_file. Kills the group at the deadline.
/// Throws SpawnFailure if the program cannot be executed.
ProcessResult run_process(const std::vector<std::string>& argv, const std::filesystem::path& cwd,
                          const std::vector<std::pair<std::string, std::string>>& extra_env,
                          const std::filesystem::path& log_file, std::chrono::steady_clock::time_point deadline);

}  // namespace crashsuite::detail
