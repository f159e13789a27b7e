#include "pidgin/harness.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "pidgin/server.hpp"
#include "pidgin/text.hpp"

namespace pidgin {

FormatError::FormatError(std::size_t line, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}

DialogScript parse_script(std::string_view input, std::string name) {
  DialogScript script{std::move(name), {}};
  const auto lines = text::split_lines(input);
  std::optional<DialogStep> open;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const std::size_t number = i + 1;
    if (text::trim(line).empty() || line.front() == '#') continue;
    if (line.starts_with("SAY:")) {
      if (open) throw FormatError(number, "SAY without GET for the previous SAY");
      open = DialogStep{line.substr(4), {}, number};
    } else if (line.starts_with("GET:")) {
      if (!open) throw FormatError(number, "GET without preceding SAY");
      open->expect = line.substr(4);
      script.steps.push_back(std::move(*open));
      open.reset();
    } else {
      throw FormatError(number, "expected SAY: or GET:");
    }
  }
  if (open) throw FormatError(open->line, "SAY without GET");
  if (script.steps.empty()) throw FormatError(lines.size(), "script has no steps");
  return script;
}

namespace {

class InProcessTarget : public Target {
 public:
  std::string say(const std::string& statement) override { return engine_.say(statement).text; }

 private:
  Engine engine_;
};

std::string strip_terminator(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

class HttpTarget : public Target {
 public:
  HttpTarget(const std::string& base_url, HttpMethod method) : client_(base_url), method_(method) {
    client_.set_connection_timeout(5);
    client_.set_read_timeout(10);
  }

  std::string say(const std::string& statement) override {
    httplib::Result res = method_ == HttpMethod::Post
                              ? client_.Post("/", statement, "text/plain; charset=UTF-8")
                              : client_.Get("/", httplib::Params{{"q", statement}}, httplib::Headers{});
    if (!res) throw TransportError("HTTP request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw TransportError("HTTP status " + std::to_string(res->status));
    return strip_terminator(res->body);
  }

 private:
  httplib::Client client_;
  HttpMethod method_;
};

class SpawnedHttpTarget : public Target {
 public:
  explicit SpawnedHttpTarget(HttpMethod method) : service_(Engine()), frontend_(service_) {
    const int port = frontend_.bind("127.0.0.1", 0);
    if (port <= 0) throw TransportError("cannot bind loopback port");
    thread_ = std::thread([this] { frontend_.listen(); });
    while (!frontend_.running()) std::this_thread::yield();
    client_ = std::make_unique<HttpTarget>("http://127.0.0.1:" + std::to_string(port), method);
  }

  ~SpawnedHttpTarget() override {
    frontend_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string say(const std::string& statement) override { return client_->say(statement); }

 private:
  Service service_;
  HttpFrontend frontend_;
  std::thread thread_;
  std::unique_ptr<HttpTarget> client_;
};

}  // namespace

std::unique_ptr<Target> make_in_process_target() { return std::make_unique<InProcessTarget>(); }

std::unique_ptr<Target> make_http_target(const std::string& base_url, HttpMethod method) {
  return std::make_unique<HttpTarget>(base_url, method);
}

std::unique_ptr<Target> make_spawned_http_target(HttpMethod method) {
  return std::make_unique<SpawnedHttpTarget>(method);
}

std::vector<StepResult> run_script(const DialogScript& script, Target& target) {
  std::vector<StepResult> results;
  std::optional<std::string> broken;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const auto& step = script.steps[i];
    StepResult r{i + 1, step.say, step.expect, {}, false};
    if (broken) {
      r.actual = "<transport error: " + *broken + ">";
    } else {
      try {
        r.actual = target.say(step.say);
        r.passed = r.actual == step.expect;
      } catch (const TransportError& e) {
        broken = e.what();
        r.actual = "<transport error: " + *broken + ">";
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool ScriptReport::passed() const { return !error && failed_steps() == 0; }

std::size_t ScriptReport::failed_steps() const {
  return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; }));
}

std::size_t SuiteReport::step_count() const {
  std::size_t n = 0;
  for (const auto& s : scripts) n += s.results.size();
  return n;
}

std::size_t SuiteReport::failure_count() const {
  std::size_t n = 0;
  for (const auto& s : scripts) n += s.failed_steps() + (s.error ? 1 : 0);
  return n;
}

std::size_t SuiteReport::failed_scripts() const {
  return static_cast<std::size_t>(std::count_if(scripts.begin(), scripts.end(), [](const auto& s) { return !s.passed(); }));
}

SuiteReport run_suite(const std::filesystem::path& path, const TargetFactory& factory) {
  namespace fs = std::filesystem;
  SuiteReport report;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".dialog") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    if (files.empty()) report.warnings.push_back("no .dialog scripts in " + path.string());
  } else if (fs::is_regular_file(path)) {
    files.push_back(path);
  } else {
    report.scripts.push_back(ScriptReport{path.string(), {}, "no such file or directory"});
    return report;
  }

  for (const auto& file : files) {
    ScriptReport sr{file.filename().string(), {}, std::nullopt};
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      const DialogScript script = parse_script(ss.str(), sr.name);
      auto target = factory();
      sr.results = run_script(script, *target);
    } catch (const FormatError& e) {
      sr.error = e.what();
    } catch (const TransportError& e) {
      sr.error = e.what();
    }
    report.scripts.push_back(std::move(sr));
  }
  return report;
}

std::string format_report(const SuiteReport& report, bool verbose) {
  std::ostringstream out;
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  for (const auto& s : report.scripts) {
    if (s.error) {
      out << "ERROR " << s.name << ": " << *s.error << '\n';
      continue;
    }
    const std::size_t passed = s.results.size() - s.failed_steps();
    out << (s.passed() ? "PASS " : "FAIL ") << s.name << " (" << passed << '/' << s.results.size() << ")\n";
    for (const auto& r : s.results) {
      if (r.passed && !verbose) continue;
      out << "  " << (r.passed ? "ok" : "FAIL") << " step " << r.index << ": SAY:" << r.say << '\n';
      if (r.passed) continue;
      out << "    expected: " << r.expect << '\n';
      out << "    actual:   " << r.actual << '\n';
    }
  }
  const auto plural = [](std::size_t n, const char* word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
  };
  out << plural(report.scripts.size(), "script") << ", " << plural(report.step_count(), "step") << ", "
      << plural(report.failure_count(), "failure") << '\n';
  out << "RESULT scripts=" << report.scripts.size() << " steps=" << report.step_count()
      << " failed=" << report.failure_count() << '\n';
  return out.str();
}

}  // namespace pidgin
