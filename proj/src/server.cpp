#include "pidgin/server.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "httplib.h"
#include "pidgin/text.hpp"

namespace pidgin {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void load_lexicon_file(Engine& engine, const std::string& path) {
  auto tags = mapping_tags(path);
  if (!tags) throw ConfigError(path + ": file name must end in <src>-<tgt>, e.g. names.en-ru.tsv");
  try {
    engine.apply_mapping(parse_mapping(read_file(path)), tags->first, tags->second);
  } catch (const LexiconError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Engine bootstrap(const EngineConfig& config) {
  if (config.port < 1 || config.port > 65535) throw ConfigError("port must be in 1-65535");
  Engine engine("en");
  for (const auto& file : config.lexicon_files) load_lexicon_file(engine, file);
  if (!engine.lexicon().contains(config.default_namespace)) {
    throw ConfigError("namespace '" + config.default_namespace + "' is not loaded");
  }
  engine.set_default_namespace(config.default_namespace);
  if (config.dump_path && std::filesystem::exists(*config.dump_path)) {
    load_file(engine, *config.dump_path, config.default_namespace);
  }
  return engine;
}

std::string dump(const Engine& engine, std::string_view tag) {
  const Graph& graph = engine.graph();
  const Namespace& ns = engine.lexicon().at(tag);
  const auto& core = graph.core();
  std::ostringstream out;

  auto sorted_terms = [&](std::span<const ThingId> ids) {
    std::vector<std::string> terms;
    for (ThingId id : ids) terms.push_back(engine.term(id, ns));
    std::sort(terms.begin(), terms.end());
    return terms;
  };

  // Bare names first so later lines can refer to any named thing.
  for (ThingId id : graph.ids()) {
    if (graph.is_core(id)) continue;
    if (auto name = ns.name_of(id)) out << "There name " << *name << ".\n";
  }
  for (ThingId id : graph.ids()) {
    auto props = graph.values(id, core.has);
    if (props.empty() || !ns.name_of(id)) continue;
    out << text::capitalize(*ns.name_of(id)) << ' ' << engine.term(core.has, ns) << ' '
        << text::join(sorted_terms(props), ", ") << ".\n";
  }
  // Further links of named things, one order per property.
  for (ThingId id : graph.ids()) {
    auto name = ns.name_of(id);
    if (!name) continue;
    std::vector<std::pair<std::string, std::string>> orders;
    for (const auto& link : graph.links(id)) {
      if (link.property == core.name || link.property == core.has) continue;
      orders.emplace_back(engine.term(link.property, ns), text::join(sorted_terms(link.values), " "));
    }
    std::sort(orders.begin(), orders.end());
    for (const auto& [property, values] : orders) {
      out << text::capitalize(*name) << ' ' << property << ' ' << values << ".\n";
    }
  }
  for (ThingId id : graph.ids()) {
    if (graph.is_core(id) || ns.name_of(id) || graph.links(id).empty()) continue;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& link : graph.links(id)) {
      pairs.emplace_back(engine.term(link.property, ns), text::join(sorted_terms(link.values), " "));
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::string> parts;
    for (const auto& [p, v] : pairs) parts.push_back(p + " " + v);
    out << "There " << text::join(parts, ", ") << ".\n";
  }
  return out.str();
}

LoadError::LoadError(std::size_t line, std::string statement, std::string response)
    : std::runtime_error("line " + std::to_string(line) + ": \"" + statement + "\" answered \"" + response + "\""),
      line_(line) {}

void load(Engine& engine, std::string_view input, std::string_view ns) {
  const auto lines = text::split_lines(input);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string trimmed = text::trim(lines[i]);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const Response r = engine.say(lines[i], ns);
    if (r.text != "Ok.") throw LoadError(i + 1, lines[i], r.text);
  }
}

void save_file(const Engine& engine, const std::string& path, std::string_view ns) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << dump(engine, ns);
  }
  std::filesystem::rename(tmp, path);
}

void load_file(Engine& engine, const std::string& path, std::string_view ns) {
  load(engine, read_file(path), ns);
}

std::string Service::handle_request(std::string_view body) {
  if (body.empty()) return {};
  std::lock_guard lock(mutex_);
  std::vector<std::string> replies;
  for (const auto& line : text::split_lines(body)) {
    replies.push_back(text::trim(line).empty() ? std::string() : engine_.say(line).text);
  }
  return text::join(replies, "\n");
}

int run_repl(Engine& engine, std::istream& in, std::ostream& out, std::ostream& err) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = text::trim(line);
    if (trimmed.empty()) {
      out << '\n' << std::flush;
      continue;
    }
    if (trimmed.front() != ':') {
      out << engine.say(line).text << '\n' << std::flush;
      continue;
    }
    const auto space = trimmed.find(' ');
    const std::string command = trimmed.substr(0, space);
    const std::string arg = space == std::string::npos ? std::string() : text::trim(trimmed.substr(space + 1));
    try {
      if (command == ":quit") {
        return 0;
      } else if (command == ":save" && !arg.empty()) {
        save_file(engine, arg, engine.default_namespace());
        err << "saved " << arg << '\n';
      } else if (command == ":load" && !arg.empty()) {
        load_file(engine, arg, engine.default_namespace());
        err << "loaded " << arg << '\n';
      } else if (command == ":lang" && !arg.empty()) {
        engine.set_default_namespace(arg);
        err << "namespace " << arg << '\n';
      } else {
        err << "warning: unknown command " << trimmed << '\n';
      }
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
    }
  }
  return 0;
}

struct HttpFrontend::Impl {
  httplib::Server server;
};

HttpFrontend::HttpFrontend(Service& service, std::optional<std::string> ui_dir) : impl_(std::make_unique<Impl>()) {
  auto& srv = impl_->server;
  auto reply = [](httplib::Response& res, const std::string& body) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(body, "text/plain; charset=UTF-8");
  };
  srv.Get("/", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.handle_request(req.has_param("q") ? req.get_param_value("q") : std::string()));
  });
  srv.Post("/", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.handle_request(req.body));
  });
  srv.Options("/", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  if (ui_dir) srv.set_mount_point("/ui", *ui_dir);
}

HttpFrontend::~HttpFrontend() { stop(); }

int HttpFrontend::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpFrontend::listen() { return impl_->server.listen_after_bind(); }

void HttpFrontend::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpFrontend::running() const { return impl_->server.is_running(); }

}  // namespace pidgin
