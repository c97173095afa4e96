#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cbandit/cli/config.hpp"

namespace cbandit::cli {

/// Runs the configured algorithm for one seed.
RunLog execute(const RunConfig& cfg, std::uint64_t seed);

// Exit codes: 0 ok, 1 configuration error, 2 numerical-invariant violation.
int cmd_run(const std::string& config_path, const std::optional<std::string>& out,
            const std::optional<std::uint64_t>& seed, std::ostream& progress, std::ostream& diag);
int cmd_verify(const std::string& suite, std::ostream& progress, std::ostream& diag);
int cmd_compare(const std::vector<std::string>& config_paths, const std::string& out, std::ostream& progress,
                std::ostream& diag);

/// NUM_THREADS if set and positive, else the hardware concurrency (at least 1).
int thread_cap();

/// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace cbandit::cli
