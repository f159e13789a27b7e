// pidgin: serve the engine over plain-text HTTP, or chat on the console.

#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "pidgin/server.hpp"

namespace {

pidgin::HttpFrontend* g_frontend = nullptr;

void on_signal(int) {
  if (g_frontend) g_frontend->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled-language knowledge engine"};
  pidgin::EngineConfig config;
  std::string dump_path;
  std::string ui_dir;
  app.add_option("--port", config.port, "HTTP port")->check(CLI::Range(1, 65535));
  app.add_option("--host", config.host, "Address to listen on");
  app.add_option("--lexicon", config.lexicon_files, "Term mapping file named <name>.<src>-<tgt>.tsv")
      ->check(CLI::ExistingFile);
  app.add_option("--dump", dump_path, "Statement dump to load at start and write on exit");
  app.add_option("--lang", config.default_namespace, "Namespace of incoming statements");
  app.add_option("--ui", ui_dir, "Directory served under /ui")->check(CLI::ExistingDirectory);
  app.add_flag("--repl", config.repl, "Console mode instead of HTTP");
  CLI11_PARSE(app, argc, argv);
  if (!dump_path.empty()) config.dump_path = dump_path;
  if (!ui_dir.empty()) config.ui_dir = ui_dir;

  try {
    pidgin::Engine engine = pidgin::bootstrap(config);
    if (config.repl) {
      const int code = pidgin::run_repl(engine, std::cin, std::cout, std::cerr);
      if (config.dump_path) pidgin::save_file(engine, *config.dump_path, engine.default_namespace());
      return code;
    }

    pidgin::Service service(std::move(engine));
    pidgin::HttpFrontend frontend(service, config.ui_dir);
    if (frontend.bind(config.host, config.port) < 0) {
      std::cerr << "cannot bind " << config.host << ':' << config.port << '\n';
      return 1;
    }
    g_frontend = &frontend;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "listening on http://" << config.host << ':' << config.port << '\n';
    frontend.listen();
    g_frontend = nullptr;
    if (config.dump_path) {
      service.with_engine([&](pidgin::Engine& e) {
        pidgin::save_file(e, *config.dump_path, e.default_namespace());
        return 0;
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
