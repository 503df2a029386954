#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace acl::cli {

using json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

// Output directory: --out, else $ACL_OUT_DIR, else ./acl-out.
std::filesystem::path resolve_out_dir(const std::string& flag);

// Everything a command writes goes through one of these.
class RunContext {
public:
  RunContext(std::string command, std::filesystem::path out, std::vector<std::string> argv);

  const std::filesystem::path& out() const { return out_; }
  std::filesystem::path path(const std::string& name) const { return out_ / name; }

  // Registers a file already written under out().
  void record(const std::string& name);
  void write_text(const std::string& name, const std::string& text);
  void write_json(const std::string& name, const json& j);
  void add_input(const std::filesystem::path& file) { inputs_.push_back(file); }

  json parameters = json::object();
  json settings = json::object();

  // manifest.json with argv, parameters, settings, timing, input hash and
  // checksums of every recorded output.
  void write_manifest(double wall_seconds, int exit_code) const;

private:
  std::string command_;
  std::filesystem::path out_;
  std::vector<std::string> argv_;
  std::vector<std::string> outputs_;
  std::vector<std::filesystem::path> inputs_;
};

struct ReplayReport {
  std::filesystem::path out;
  int exit_code = 0;
  std::vector<std::string> mismatched;
  std::vector<std::string> missing;
  std::size_t compared = 0;

  bool identical() const { return mismatched.empty() && missing.empty(); }
};

// Reruns the command recorded in `manifest` into a fresh directory and
// compares checksums.
ReplayReport replay(const std::filesystem::path& manifest, const std::string& out_flag);

// Strips --out from an argument list.
std::vector<std::string> strip_out_flag(const std::vector<std::string>& args);

} // namespace acl::cli
