// lookupdb: seed the demo database, audit referential integrity, render
// display formats and serve the JSON API.
//
// Exit codes: 0 success, 1 validation findings, 2 usage or load errors.

#include <csignal>
#include <iostream>
#include <pthread.h>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"
#include "lookupdb/database.hpp"
#include "lookupdb/error.hpp"
#include "lookupdb/format.hpp"
#include "lookupdb/lookup.hpp"
#include "lookupdb/schema.hpp"
#include "lookupdb/seed.hpp"
#include "lookupdb/service.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;

lookupdb::LocaleSpec locale_from_flag(const std::string& flag) {
  return flag == "us" ? lookupdb::LocaleSpec::us() : lookupdb::LocaleSpec::indonesian();
}

int cmd_seed(const std::string& out_dir) {
  try {
    lookupdb::write_seed(out_dir);
  } catch (const lookupdb::Error& e) {
    std::cerr << "seed: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "seeded " << out_dir << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& manifest_path) {
  try {
    auto db = lookupdb::Database::load(lookupdb::load_manifest(manifest_path));
    auto report = lookupdb::validate_database(db);
    std::cout << report.to_text();
    std::cerr << report.violations.size() << " violation(s) in " << report.checked_row_count
              << " checked row(s)\n";
    return report.ok() ? kExitOk : kExitFindings;
  } catch (const lookupdb::Error& e) {
    std::cerr << "validate: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_fmt(const std::string& value, const std::string& pattern, const std::string& locale) {
  auto decimal = lookupdb::Decimal::parse(value);
  if (!decimal) {
    std::cerr << "fmt: '" << value << "' is not a decimal with at most 4 fractional digits\n";
    return kExitUsage;
  }
  try {
    auto parsed = lookupdb::parse_pattern(pattern);
    std::cout << lookupdb::render(*decimal, parsed, locale_from_flag(locale)) << "\n";
  } catch (const lookupdb::SyntaxError& e) {
    std::cerr << "fmt: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_serve(const std::string& manifest_path, const std::string& host, int port,
              const std::string& locale) {
  std::optional<lookupdb::Database> db;
  try {
    db.emplace(lookupdb::Database::load(lookupdb::load_manifest(manifest_path),
                                        {.write_through = true}));
  } catch (const lookupdb::Error& e) {
    std::cerr << "serve: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!locale.empty()) db->set_locale(locale_from_flag(locale));

  // Route SIGINT/SIGTERM to a waiter thread that stops the server.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  lookupdb::Service service(std::move(*db));
  httplib::Server server;
  service.register_routes(server);

  int bound = port;
  if (port == 0) {
    bound = server.bind_to_any_port(host);
  } else if (!server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    std::cerr << "serve: cannot bind " << host << ":" << port << "\n";
    return kExitUsage;
  }
  std::cout << "listening on " << host << ":" << bound << std::endl;

  std::thread waiter([&server, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen_after_bind();
  if (waiter.joinable()) {
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lookup-validated order-entry database engine"};
  app.require_subcommand(1);

  std::string seed_dir;
  auto* seed = app.add_subcommand("seed", "Write the demo manifest and CSV tables");
  seed->add_option("out_dir", seed_dir, "Output directory")->required();

  std::string validate_manifest;
  auto* validate = app.add_subcommand("validate", "Report orphaned foreign-key values");
  validate->add_option("manifest,--manifest", validate_manifest, "Manifest file")->required();

  std::string fmt_value;
  std::string fmt_pattern;
  std::string fmt_locale = "id";
  auto* fmt = app.add_subcommand("fmt", "Render a decimal with a display-format pattern");
  fmt->add_option("value", fmt_value, "Decimal value")->required();
  fmt->add_option("pattern", fmt_pattern, "Display pattern, e.g. 'US$ #.#,#'")->required();
  fmt->add_option("--locale", fmt_locale, "Rendering symbols")
      ->check(CLI::IsMember({"id", "us"}));

  std::string serve_manifest;
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080;
  std::string serve_locale;
  auto* serve = app.add_subcommand("serve", "Serve the JSON API");
  serve->add_option("--manifest", serve_manifest, "Manifest file")->required();
  serve->add_option("--port", serve_port, "TCP port, 0 picks a free one");
  serve->add_option("--host", serve_host, "Bind address");
  serve->add_option("--locale", serve_locale, "Override the manifest locale")
      ->check(CLI::IsMember({"id", "us"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*seed) return cmd_seed(seed_dir);
  if (*validate) return cmd_validate(validate_manifest);
  if (*fmt) return cmd_fmt(fmt_value, fmt_pattern, fmt_locale);
  if (*serve) return cmd_serve(serve_manifest, serve_host, serve_port, serve_locale);
  return kExitUsage;
}
