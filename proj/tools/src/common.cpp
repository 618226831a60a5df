#include "common.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tailtau/error.hpp"
#include "tailtau/experiments.hpp"
#include "tailtau/version.hpp"

namespace tailtau::cli {

void select(Context& ctx, const CLI::App& sub, std::function<void()> action) {
  std::string path = sub.get_name();
  for (const CLI::App* p = sub.get_parent(); p && p->get_parent(); p = p->get_parent()) {
    path = p->get_name() + " " + path;
  }
  ctx.command = path;
  ctx.leaf = &sub;
  ctx.action = std::move(action);
}

std::string fmt(const Context& ctx, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", ctx.precision, v);
  return buf;
}

void write_output(const std::filesystem::path& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw InvalidArgument("cannot write " + path.string());
}

std::string effective_config(const Context& ctx) {
  std::string section = ctx.command;
  std::replace(section.begin(), section.end(), ' ', '.');
  std::ostringstream os;
  os << "precision=" << ctx.precision << "\n[" << section << "]\n";
  std::istringstream in(ctx.leaf->config_to_str(true, false));
  std::string line;
  while (std::getline(in, line)) {
    // Empty lists do not read back; leaving them out keeps the default.
    if (line.size() >= 4 && line.compare(line.size() - 4, 4, "\"{}\"") == 0) continue;
    os << line << '\n';
  }
  return os.str();
}

std::string effective_config_hash(const Context& ctx) {
  std::istringstream in(effective_config(ctx));
  std::string line, kept;
  while (std::getline(in, line)) {
    const auto key = line.substr(0, line.find('='));
    if (key == "out" || key == "out-dir" || key == "threads" || key == "precision") continue;
    kept += line + '\n';
  }
  return config_hash(kept);
}

void write_metadata(const Context& ctx, const std::filesystem::path& path,
                    std::optional<std::uint64_t> seed, const std::string& hash) {
  std::ostringstream os;
  os << "# tailtau " << kVersion << "\n"
     << "# command: " << ctx.command << "\n";
  if (seed) os << "# seed: " << *seed << "\n";
  os << "# config_hash: " << hash << "\n"
     << "# cwd: " << std::filesystem::current_path().string() << "\n"
     << "# rerun from cwd: tailtau --config " << path.string() << "\n"
     << effective_config(ctx);
  write_output(path, os.str());
}

void write_metadata_for(const Context& ctx, const std::filesystem::path& out,
                        std::optional<std::uint64_t> seed) {
  if (out == "-") return;
  auto meta = out;
  meta += ".meta";
  write_metadata(ctx, meta, seed, effective_config_hash(ctx));
}

}  // namespace tailtau::cli
