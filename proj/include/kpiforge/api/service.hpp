#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kpiforge/api/workspace.hpp"
#include "kpiforge/olap/cube.hpp"

namespace kpiforge::api {

struct Request {
  std::string method;  // "GET", "POST", ...
  std::string path;    // decoded path, no query
  std::string query;   // raw (still percent-encoded) query string, no '?'
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Decodes %XX escapes and '+' (as space). Throws invalid_argument on a
/// malformed escape.
std::string percent_decode(std::string_view text);

/// Splits a raw query string into decoded key/value pairs.
std::multimap<std::string, std::string> parse_query(std::string_view raw);

/// Parses the `filters` grammar: comma-separated `dimension:level` pairs.
/// Expects the raw, undecoded parameter value. When the raw value holds a
/// literal ':', each name is percent-encoded separately (so ',' and ':'
/// inside names travel as %2C and %3A); otherwise the whole value is decoded
/// first, which is what encoding the entire value produces. Throws
/// invalid_argument on a malformed pair.
std::vector<olap::Filter> parse_filters(std::string_view raw);

// JSON facade over a Workspace. Endpoints:
//
//   POST /datasets[?name=N]          CSV body -> 201 {id, name, row_count, schema}
//   GET  /datasets/{id}              stored dataset document (per-row export)
//   GET  /datasets/{id}/schema       {id, name, row_count, schema}
//   POST /analyses                   {dataset_id, plan} -> 201 AnalysisRun
//   GET  /analyses/{id}              AnalysisRun
//   GET  /analyses/{id}/condensed    CondensedKpiList
//   POST /cube                       {dataset_id, dimensions, measures} -> 201 cube
//   GET  /cube/{id}                  cube dimensions/levels
//   GET  /cube/{id}/aggregate?measure=M[&group_by=D][&filters=d:l,...]
//
// Errors are {"error": {"code", "message"}} with 400 (unparseable body or
// CSV), 404 (unknown id), 422 (semantically invalid request) or 500.
class Service {
 public:
  explicit Service(Workspace& workspace) : ws_(workspace) {}

  // Thread-safe.
  Response handle(const Request& req);

  // Blocks serving HTTP on host:port until stop() or SIGINT/SIGTERM. Port 0
  // binds an ephemeral port; on_ready receives the bound port.
  void serve(const std::string& host, int port, std::function<void(int)> on_ready = {});

  // Ends a running serve() from another thread.
  void stop();

 private:
  Response route(const Request& req);

  Workspace& ws_;
  std::atomic<void*> server_{nullptr};
};

// Splits "host:port" (KPIFORGE_ADDR format). Throws invalid_argument.
std::pair<std::string, int> parse_address(std::string_view addr);

// KPIFORGE_ADDR, else "127.0.0.1:8080".
std::string default_address();

}  // namespace kpiforge::api
