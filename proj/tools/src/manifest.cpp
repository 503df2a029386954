#include "acl/cli/manifest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "acl/cli/app.hpp"
#include "acl/error.hpp"

#ifndef ACL_VERSION
#define ACL_VERSION "unknown"
#endif

namespace acl::cli {

namespace fs = std::filesystem;

namespace {

std::string hex(const unsigned char* p, unsigned n) {
  std::ostringstream os;
  for (unsigned k = 0; k < n; ++k) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(p[k]);
  return os.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned n = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &n, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  return hex(md, n);
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ACL_OUT_DIR"); env && *env) return env;
  return "acl-out";
}

RunContext::RunContext(std::string command, fs::path out, std::vector<std::string> argv)
    : command_(std::move(command)), out_(std::move(out)), argv_(std::move(argv)) {
  std::error_code ec;
  fs::create_directories(out_, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_.string() + ": " + ec.message());
}

void RunContext::record(const std::string& name) {
  if (std::find(outputs_.begin(), outputs_.end(), name) == outputs_.end()) outputs_.push_back(name);
}

void RunContext::write_text(const std::string& name, const std::string& text) {
  std::ofstream out(path(name), std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path(name).string());
  out << text;
  out.close();
  record(name);
}

void RunContext::write_json(const std::string& name, const json& j) { write_text(name, j.dump(2) + "\n"); }

void RunContext::write_manifest(double wall_seconds, int exit_code) const {
  json m;
  m["tool"] = "acl";
  m["version"] = ACL_VERSION;
  m["command"] = command_;
  m["argv"] = argv_;
  m["cwd"] = fs::current_path().string();
  m["parameters"] = parameters;
  m["settings"] = settings;
  std::string in = json(argv_).dump();
  json inputs = json::array();
  for (const auto& f : inputs_) {
    const std::string digest = sha256_file(f);
    in += digest;
    inputs.push_back({{"path", fs::absolute(f).string()}, {"sha256", digest}});
  }
  m["inputs"] = inputs;
  m["input_sha256"] = sha256_hex(in);
  m["started_utc"] = utc_now();
  m["wall_seconds"] = wall_seconds;
  m["exit_code"] = exit_code;
  json outs = json::array();
  for (const auto& name : outputs_)
    outs.push_back({{"path", name}, {"bytes", fs::file_size(path(name))}, {"sha256", sha256_file(path(name))}});
  m["outputs"] = outs;
  std::ofstream out(path("manifest.json"), std::ios::binary);
  if (!out) throw ConfigError("cannot write manifest");
  out << m.dump(2) << "\n";
}

std::vector<std::string> strip_out_flag(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--out") {
      ++k;
      continue;
    }
    if (args[k].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[k]);
  }
  return kept;
}

ReplayReport replay(const fs::path& manifest, const std::string& out_flag) {
  const json m = json::parse(read_file(manifest));
  if (!m.contains("argv") || !m.contains("outputs")) throw ConfigError("not a run manifest: " + manifest.string());
  auto args = strip_out_flag(m["argv"].get<std::vector<std::string>>());

  fs::path out;
  if (!out_flag.empty()) {
    out = fs::absolute(out_flag);
    if (fs::exists(out) && !fs::is_empty(out)) throw ConfigError("replay directory is not empty: " + out.string());
  } else {
    const fs::path base = fs::absolute(manifest).parent_path() / "replay";
    out = base;
    for (int k = 1; fs::exists(out); ++k) out = base.string() + "-" + std::to_string(k);
  }
  args.push_back("--out");
  args.push_back(out.string());

  ReplayReport rep;
  rep.out = out;
  const fs::path here = fs::current_path();
  fs::current_path(m.value("cwd", here.string()));
  try {
    rep.exit_code = run(args);
  } catch (...) {
    fs::current_path(here);
    throw;
  }
  fs::current_path(here);

  for (const auto& o : m["outputs"]) {
    const std::string name = o["path"];
    ++rep.compared;
    if (!fs::exists(out / name)) {
      rep.missing.push_back(name);
      continue;
    }
    if (sha256_file(out / name) != o["sha256"].get<std::string>()) rep.mismatched.push_back(name);
  }
  return rep;
}

} // namespace acl::cli
