#pragma once

#include <memory>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "lookupdb/service.hpp"

namespace lookupdb::testing {

// A Service listening on an ephemeral loopback port for the lifetime of
// the object.
class HttpFixture {
 public:
  explicit HttpFixture(Database db);
  ~HttpFixture();
  HttpFixture(const HttpFixture&) = delete;
  HttpFixture& operator=(const HttpFixture&) = delete;

  Service& service() { return *service_; }
  int port() const { return port_; }

  struct Reply {
    int status = 0;
    nlohmann::json body;
  };
  Reply get(const std::string& path);
  Reply post(const std::string& path, const nlohmann::json& body);
  Reply post_raw(const std::string& path, const std::string& body);

 private:
  std::unique_ptr<Service> service_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace lookupdb::testing
