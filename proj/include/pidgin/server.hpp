#pragma once
// Carriers for the engine: plain-text HTTP, the console, and dump files.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pidgin/interpreter.hpp"

namespace pidgin {

struct EngineConfig {
  int port = 8080;
  std::string host = "127.0.0.1";
  std::vector<std::string> lexicon_files;
  std::optional<std::string> dump_path;
  std::string default_namespace = "en";
  std::optional<std::string> ui_dir;
  bool repl = false;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks the port range and builds an engine with lexicon files and the dump
// (when the file exists) loaded.
Engine bootstrap(const EngineConfig& config);

void load_lexicon_file(Engine& engine, const std::string& path);

// Replayable statements for everything beyond the core vocabulary, in a
// deterministic order. Empty for a freshly seeded engine.
std::string dump(const Engine& engine, std::string_view ns);

class LoadError : public std::runtime_error {
 public:
  LoadError(std::size_t line, std::string statement, std::string response);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Replays `text` line by line; stops at the first reply other than "Ok.".
void load(Engine& engine, std::string_view text, std::string_view ns);

void save_file(const Engine& engine, const std::string& path, std::string_view ns);
void load_file(Engine& engine, const std::string& path, std::string_view ns);

// Shared engine behind a lock; one request runs all its lines before the
// next request starts.
class Service {
 public:
  explicit Service(Engine engine) : engine_(std::move(engine)) {}

  // One reply line per input line; empty lines answer with empty lines.
  std::string handle_request(std::string_view body);

  template <typename F>
  auto with_engine(F&& f) {
    std::lock_guard lock(mutex_);
    return f(engine_);
  }

 private:
  std::mutex mutex_;
  Engine engine_;
};

// Console loop. Meta-commands: :quit, :save <path>, :load <path>, :lang <tag>.
int run_repl(Engine& engine, std::istream& in, std::ostream& out, std::ostream& err);

// POST / (text/plain body) and GET /?q=<statement> over cpp-httplib.
class HttpFrontend {
 public:
  explicit HttpFrontend(Service& service, std::optional<std::string> ui_dir = std::nullopt);
  ~HttpFrontend();
  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  // port 0 picks an ephemeral port; returns the bound port or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pidgin
