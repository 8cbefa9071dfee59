#pragma once

// Runs the command-line tool through the shell and captures its exit code,
// stdout and stderr.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cli {

struct Run {
  int code;
  std::string out;
  std::string err;
};

inline Run run(const std::string& args, const std::string& env = {}) {
  const auto err_path = std::filesystem::temp_directory_path() / ("rl_cli_stderr_" + std::to_string(getpid()) + ".txt");
  const std::string cmd =
      env + (env.empty() ? "" : " ") + "'" + std::string(RL_CLI) + "' " + args + " 2>'" + err_path.string() + "'";
  Run r{-1, {}, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

inline std::string quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace cli
