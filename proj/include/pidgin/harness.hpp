#pragma once
// Baby Turing Test runner: SAY/GET dialog scripts executed step by step
// against one engine per script.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pidgin {

struct DialogStep {
  std::string say;
  std::string expect;
  std::size_t line = 0;  // line of the SAY

  bool operator==(const DialogStep&) const = default;
};

struct DialogScript {
  std::string name;
  std::vector<DialogStep> steps;
};

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& reason);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

DialogScript parse_script(std::string_view text, std::string name = {});

struct StepResult {
  std::size_t index = 0;  // 1-based
  std::string say;
  std::string expect;
  std::string actual;
  bool passed = false;

  bool operator==(const StepResult&) const = default;
};

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that answers one statement at a time, keeping state between calls.
class Target {
 public:
  virtual ~Target() = default;
  virtual std::string say(const std::string& statement) = 0;
};

using TargetFactory = std::function<std::unique_ptr<Target>()>;

// Fresh seeded engine in this process.
std::unique_ptr<Target> make_in_process_target();

enum class HttpMethod { Get, Post };

// Talks to a running server at `base_url` (e.g. "http://127.0.0.1:8080").
std::unique_ptr<Target> make_http_target(const std::string& base_url, HttpMethod method);

// Starts a private HTTP server on a loopback ephemeral port for the lifetime
// of the returned target.
std::unique_ptr<Target> make_spawned_http_target(HttpMethod method);

std::vector<StepResult> run_script(const DialogScript& script, Target& target);

struct ScriptReport {
  std::string name;
  std::vector<StepResult> results;
  std::optional<std::string> error;  // format error; the script did not run

  bool passed() const;
  std::size_t failed_steps() const;
};

struct SuiteReport {
  std::vector<ScriptReport> scripts;
  std::vector<std::string> warnings;

  std::size_t step_count() const;
  std::size_t failure_count() const;
  std::size_t failed_scripts() const;
  int exit_code() const { return failed_scripts() == 0 ? 0 : 1; }
};

// `path` is a .dialog file or a directory scanned for *.dialog in
// lexicographic order. Each script gets its own target from `factory`.
SuiteReport run_suite(const std::filesystem::path& path, const TargetFactory& factory);

// Human-readable report; the last line is
// "RESULT scripts=<n> steps=<n> failed=<n>".
std::string format_report(const SuiteReport& report, bool verbose);

}  // namespace pidgin
