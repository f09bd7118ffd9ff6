#include "doctest.h"

#include <sys/wait.h>

#include <chrono>
#include <csignal>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "test_support.hpp"

using namespace lookupdb::testing;
using nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::vector<std::string>& args) {
  TempDir io;
  std::string cmd = quote(LOOKUPDB_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " >" + quote((io / "out").string()) + " 2>" + quote((io / "err").string());
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(io / "out"), read_file(io / "err")};
}

// `lookupdb serve` in the background; stopped with SIGTERM on destruction.
class Server {
 public:
  explicit Server(const std::filesystem::path& manifest) {
    std::string cmd = quote(LOOKUPDB_CLI_PATH) + " serve --port 0 --manifest " + quote(manifest.string()) +
                      " >" + quote((io_ / "out").string()) + " 2>&1 & echo $! >" + quote((io_ / "pid").string());
    CHECK(std::system(cmd.c_str()) == 0);
    for (int i = 0; i < 200 && port_ == 0; ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(25));
      std::string out = std::filesystem::exists(io_ / "out") ? read_file(io_ / "out") : "";
      if (auto pos = out.find("listening on 127.0.0.1:"); pos != std::string::npos) {
        port_ = std::stoi(out.substr(pos + 23));
      }
    }
    pid_ = std::stoi(read_file(io_ / "pid"));
  }
  ~Server() { stop(); }

  int port() const { return port_; }

  void stop() {
    if (pid_ <= 0) return;
    ::kill(pid_, SIGTERM);
    for (int i = 0; i < 200 && ::kill(pid_, 0) == 0; ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(25));
    }
    pid_ = 0;
  }

 private:
  TempDir io_;
  int port_ = 0;
  int pid_ = 0;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("seed is deterministic and validates clean") {
  TempDir a;
  TempDir b;
  CHECK(run({"seed", a.path().string()}).exit_code == 0);
  CHECK(run({"seed", b.path().string()}).exit_code == 0);
  auto files = snapshot_dir(a.path());
  CHECK(files.size() == 7);
  CHECK(files == snapshot_dir(b.path()));
  CHECK(run({"seed", a.path().string()}).exit_code == 0);
  CHECK(snapshot_dir(a.path()) == files);

  std::string emp = files.at("Employee.csv");
  for (const char* who : {"110,Yuki,Ichida", "113,Mary,Page", "114,Bill,Parker", "118,Takashi,Yamamoto",
                          "121,Roberto,Ferrari", "127,Michael,Yanowski"}) {
    CHECK(emp.find(who) != std::string::npos);
  }
  CHECK(files.at("Parts.csv").find("1313,3511,Regulator System,") != std::string::npos);
  CHECK(files.at("Items.csv").find("1003,1,1313,5,0\n") != std::string::npos);

  auto v = run({"validate", (a / "manifest.yaml").string()});
  CHECK(v.exit_code == 0);
  CHECK(v.out.empty());
}

TEST_CASE("seed into an unwritable location fails") {
  TempDir dir;
  write_file(dir / "blocker", "x");
  auto r = run({"seed", (dir / "blocker" / "sub").string()});
  CHECK(r.exit_code != 0);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("validate exit codes") {
  TempDir dir;
  run({"seed", dir.path().string()});
  std::string items = read_file(dir / "Items.csv");
  write_file(dir / "Items.csv", items + "1003,3,9999,1,0\n");
  auto r = run({"validate", "--manifest", (dir / "manifest.yaml").string()});
  CHECK(r.exit_code == 1);
  CHECK(r.out == "Items (1003,3) PartNo 9999 -> missing in Parts.PartNo\n");

  std::filesystem::remove(dir / "Items.csv");
  CHECK(run({"validate", (dir / "manifest.yaml").string()}).exit_code == 2);
  CHECK(run({"validate", (dir / "nope.yaml").string()}).exit_code == 2);
  CHECK(run({"validate"}).exit_code == 2);
  CHECK(run({"frobnicate"}).exit_code == 2);
}

TEST_CASE("fmt") {
  auto r = run({"fmt", "19999.75", "US$ #.#,#", "--locale", "id"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "US$ 19.999,8\n");
  CHECK(run({"fmt", "19999.75", "US$ #.#,#", "--locale", "us"}).out == "US$ 19,999.8\n");
  CHECK(run({"fmt", "0", "#,#"}).out == "0\n");
  CHECK(run({"fmt", "1250", "US$ #.#,#"}).out == "US$ 1.250\n");
  auto bad = run({"fmt", "1", "#.#,#,#"});
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("5") != std::string::npos);
  CHECK(run({"fmt", "abc", "#"}).exit_code == 2);
  CHECK(run({"fmt", "1", "#", "--locale", "fr"}).exit_code == 2);
}

TEST_CASE("serve refuses a dangling binding") {
  TempDir dir;
  run({"seed", dir.path().string()});
  std::string manifest = read_file(dir / "manifest.yaml");
  manifest.replace(manifest.find("list_source: Employee"), 21, "list_source: Staff");
  write_file(dir / "manifest.yaml", manifest);
  auto r = run({"serve", "--port", "0", "--manifest", (dir / "manifest.yaml").string()});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("emp") != std::string::npos);
  CHECK(r.out.find("listening") == std::string::npos);
}

TEST_CASE("serve persists mutations across restarts") {
  TempDir dir;
  run({"seed", dir.path().string()});
  const auto manifest = dir / "manifest.yaml";
  {
    Server server(manifest);
    REQUIRE(server.port() > 0);
    httplib::Client client("127.0.0.1", server.port());
    auto schema = client.Get("/schema");
    REQUIRE(schema);
    CHECK(json::parse(schema->body)["tables"].size() == 6);
    json body = {{"op", "insert"},
                 {"values", {{"OrderNo", 1003}, {"ItemNo", 2}, {"PartNo", 1314}, {"Qty", 3}, {"Discount", 0}}}};
    auto res = client.Post("/tables/Items/mutations", body.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
  }
  Server server(manifest);
  REQUIRE(server.port() > 0);
  httplib::Client client("127.0.0.1", server.port());
  auto res = client.Get("/tables/Items/rows?master_key=1003");
  REQUIRE(res);
  auto rows = json::parse(res->body)["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[1]["values"]["PartNo"] == 1314);
  CHECK(rows[1]["values"]["Harga"] == "1095");
}

}
