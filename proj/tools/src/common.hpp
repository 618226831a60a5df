#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace tailtau::cli {

struct Context {
  CLI::App* app = nullptr;
  int precision = 5;
  std::string command;            // e.g. "experiment grid"
  const CLI::App* leaf = nullptr;
  std::function<void()> action;   // set by the leaf subcommand that was parsed
};

/// Registers `sub` as the command to run and records its path.
void select(Context& ctx, const CLI::App& sub, std::function<void()> action);

std::string fmt(const Context& ctx, double v);

/// Writes `content` to `path`, or to stdout when path is "-".
void write_output(const std::filesystem::path& path, const std::string& content);

/// Effective configuration of the parsed command in config-file syntax. Fed
/// back through --config it reproduces the run.
std::string effective_config(const Context& ctx);

/// FNV-1a of the effective configuration without output locations and
/// thread counts.
std::string effective_config_hash(const Context& ctx);

void write_metadata(const Context& ctx, const std::filesystem::path& path,
                    std::optional<std::uint64_t> seed, const std::string& hash);

/// "<out>.meta" next to a file output; nothing for stdout.
void write_metadata_for(const Context& ctx, const std::filesystem::path& out,
                        std::optional<std::uint64_t> seed);

void add_estimate(CLI::App& app, Context& ctx);
void add_simulate(CLI::App& app, Context& ctx);
void add_theory(CLI::App& app, Context& ctx);
void add_experiment(CLI::App& app, Context& ctx);
void add_hydro(CLI::App& app, Context& ctx);

}  // namespace tailtau::cli
