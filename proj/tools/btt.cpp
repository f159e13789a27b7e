// btt: run SAY/GET dialog scripts as functional and regression tests.

#include <iostream>

#include "CLI11.hpp"
#include "pidgin/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Baby Turing Test dialog runner"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run a .dialog file or every .dialog file in a directory");
  std::string path;
  std::string http;
  std::string method = "post";
  bool shared = false;
  bool verbose = false;
  run->add_option("path", path, "Script file or directory")->required();
  run->add_option("--http", http, "Server base URL, or 'spawn' for a fresh local server per script");
  run->add_option("--method", method, "HTTP carrier")->check(CLI::IsMember({"get", "post"}));
  run->add_flag("--shared", shared, "Run every script against one live server");
  run->add_flag("--verbose", verbose, "Print passing steps too");
  CLI11_PARSE(app, argc, argv);

  const auto http_method = method == "get" ? pidgin::HttpMethod::Get : pidgin::HttpMethod::Post;
  pidgin::TargetFactory factory = pidgin::make_in_process_target;
  if (http == "spawn") {
    factory = [http_method] { return pidgin::make_spawned_http_target(http_method); };
  } else if (!http.empty()) {
    if (!shared) {
      std::cerr << "error: a live server keeps state between scripts; pass --shared to accept that,"
                   " or use --http spawn\n";
      return 2;
    }
    std::cerr << "warning: scripts share one server; results depend on script order\n";
    factory = [http, http_method] { return pidgin::make_http_target(http, http_method); };
  }

  const auto report = pidgin::run_suite(path, factory);
  std::cout << pidgin::format_report(report, verbose);
  return report.exit_code();
}
