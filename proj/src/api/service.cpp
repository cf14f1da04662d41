#include "kpiforge/api/service.hpp"

#include <csignal>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "kpiforge/data/dataset.hpp"
#include "kpiforge/error.hpp"
#include "kpiforge/kpi/json_io.hpp"
#include "kpiforge/olap/json_io.hpp"

namespace kpiforge::api {

using nlohmann::json;

std::string percent_decode(std::string_view text) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '+') {
      out.push_back(' ');
    } else if (c == '%') {
      if (i + 2 >= text.size() || hex(text[i + 1]) < 0 || hex(text[i + 2]) < 0) {
        throw Error(ErrorCode::invalid_argument, "malformed percent escape");
      }
      out.push_back(static_cast<char>(hex(text[i + 1]) * 16 + hex(text[i + 2])));
      i += 2;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::multimap<std::string, std::string> parse_query(std::string_view raw) {
  std::multimap<std::string, std::string> out;
  while (!raw.empty()) {
    const auto amp = raw.find('&');
    const auto part = raw.substr(0, amp);
    raw = amp == std::string_view::npos ? std::string_view{} : raw.substr(amp + 1);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      out.emplace(percent_decode(part), "");
    } else {
      out.emplace(percent_decode(part.substr(0, eq)), std::string(part.substr(eq + 1)));
    }
  }
  return out;
}

std::vector<olap::Filter> parse_filters(std::string_view raw) {
  std::vector<olap::Filter> out;
  if (raw.empty()) return out;
  // A value with no literal ':' was percent-encoded as a whole (the usual
  // encodeURIComponent form); decode it first and split on the plain text.
  std::string decoded;
  const bool whole = raw.find(':') == std::string_view::npos;
  if (whole) {
    decoded = percent_decode(raw);
    raw = decoded;
  }
  auto piece = [&](std::string_view s) { return whole ? std::string(s) : percent_decode(s); };
  while (true) {
    const auto comma = raw.find(',');
    const auto pair = raw.substr(0, comma);
    const auto colon = pair.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw Error(ErrorCode::invalid_argument,
                  "filter '" + std::string(pair) + "' is not of the form dimension:level");
    }
    out.push_back({piece(pair.substr(0, colon)), piece(pair.substr(colon + 1))});
    if (comma == std::string_view::npos) break;
    raw = raw.substr(comma + 1);
  }
  return out;
}

namespace {

Response json_response(int status, const json& body) {
  return {status, "application/json", body.dump()};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::malformed_csv:
    case ErrorCode::empty_file: return 400;
    case ErrorCode::io: return 500;
    default: return 422;
  }
}

Response error_response(int status, std::string_view code, std::string_view message) {
  return json_response(status, {{"error", {{"code", code}, {"message", message}}}});
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  while (!path.empty()) {
    const auto slash = path.find('/');
    const auto seg = path.substr(0, slash);
    if (!seg.empty()) out.emplace_back(seg);
    if (slash == std::string_view::npos) break;
    path = path.substr(slash + 1);
  }
  return out;
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed_csv, std::string("request body is not valid JSON: ") + e.what());
  }
}

json schema_json(const data::Dataset& ds) {
  json cols = json::array();
  for (const auto& s : ds.schema()) {
    cols.push_back({{"name", s.name},
                    {"kind", data::to_string(s.kind)},
                    {"distinct_count", s.distinct_count},
                    {"missing_count", s.missing_count}});
  }
  return {{"id", ds.id()}, {"name", ds.name()}, {"row_count", ds.row_count()}, {"schema", cols}};
}

std::vector<std::string> string_list(const json& body, const char* key) {
  const auto& v = body.at(key);
  if (!v.is_array()) throw Error(ErrorCode::invalid_argument, std::string(key) + " must be an array");
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.get<std::string>());
  return out;
}

const std::string* query_value(const std::multimap<std::string, std::string>& q, const char* key) {
  const auto it = q.find(key);
  return it == q.end() ? nullptr : &it->second;
}

}  // namespace

Response Service::handle(const Request& req) {
  try {
    return route(req);
  } catch (const Error& e) {
    const char* code = nullptr;
    if (req.method == "POST" && e.code() == ErrorCode::malformed_csv &&
        std::string_view(e.what()).starts_with("request body")) {
      code = "invalid_json";
    }
    return error_response(status_for(e.code()), code ? code : to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error_response(422, "invalid_request", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

Response Service::route(const Request& req) {
  const auto seg = split_path(req.path);
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";

  if (seg.size() >= 1 && seg[0] == "datasets") {
    if (post && seg.size() == 1) {
      const auto q = parse_query(req.query);
      const auto* name = query_value(q, "name");
      const auto ds = data::load_csv(req.body, name ? percent_decode(*name) : "upload");
      const auto id = ws_.datasets().save(ds);
      return json_response(201, schema_json(ds.with_id(id)));
    }
    if (get && seg.size() == 2) return {200, "application/json", ws_.datasets().load_document(seg[1])};
    if (get && seg.size() == 3 && seg[2] == "schema") {
      return json_response(200, schema_json(ws_.datasets().load(seg[1])));
    }
  }

  if (seg.size() >= 1 && seg[0] == "analyses") {
    if (post && seg.size() == 1) {
      const auto body = parse_body(req.body);
      if (!body.is_object() || !body.contains("dataset_id") || !body.contains("plan")) {
        throw Error(ErrorCode::invalid_plan, "body must be {\"dataset_id\": ..., \"plan\": {...}}");
      }
      const auto dataset_id = body.at("dataset_id").get<std::string>();
      if (!ws_.datasets().contains(dataset_id)) {
        throw Error(ErrorCode::not_found, "unknown dataset '" + dataset_id + "'");
      }
      const auto plan = kpi::plan_from_json(body.at("plan"));
      const auto run = ws_.analyze(dataset_id, plan);
      return {201, "application/json", ws_.load_run_document(run.id)};
    }
    if (get && seg.size() == 2) return {200, "application/json", ws_.load_run_document(seg[1])};
    if (get && seg.size() == 3 && seg[2] == "condensed") {
      const auto doc = json::parse(ws_.load_run_document(seg[1]));
      return json_response(200, doc.at("condensed"));
    }
  }

  if (seg.size() >= 1 && seg[0] == "cube") {
    if (post && seg.size() == 1) {
      const auto body = parse_body(req.body);
      if (!body.is_object()) throw Error(ErrorCode::invalid_argument, "body must be a JSON object");
      const auto dataset_id = body.at("dataset_id").get<std::string>();
      auto [def, cube] = ws_.create_cube(dataset_id, string_list(body, "dimensions"),
                                         string_list(body, "measures"));
      json out = olap::cube_to_json(*cube);
      out["cube_id"] = def.id;
      out["dataset_id"] = def.dataset_id;
      return json_response(201, out);
    }
    if (get && seg.size() == 2) {
      json out = olap::cube_to_json(*ws_.cube(seg[1]));
      out["cube_id"] = seg[1];
      return json_response(200, out);
    }
    if (get && seg.size() == 3 && seg[2] == "aggregate") {
      auto cube = ws_.cube(seg[1]);
      const auto q = parse_query(req.query);
      const auto* measure = query_value(q, "measure");
      if (!measure || measure->empty()) {
        throw Error(ErrorCode::invalid_argument, "query parameter 'measure' is required");
      }
      std::optional<std::string> group_by;
      if (const auto* g = query_value(q, "group_by"); g && !g->empty()) group_by = percent_decode(*g);
      olap::Cube view = *cube;
      if (const auto* f = query_value(q, "filters"); f && !f->empty()) {
        view = olap::dice(view, {parse_filters(*f)});
      }
      const auto result = olap::aggregate(view, percent_decode(*measure),
                                          group_by ? std::optional<std::string_view>(*group_by)
                                                   : std::nullopt);
      return json_response(200, olap::aggregate_to_json(result));
    }
  }

  return error_response(404, "no_route", req.method + " " + req.path + " is not an endpoint");
}

std::pair<std::string, int> parse_address(std::string_view addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == addr.size()) {
    throw Error(ErrorCode::invalid_argument, "address must be host:port, got '" + std::string(addr) + "'");
  }
  int port = 0;
  for (char c : addr.substr(colon + 1)) {
    if (c < '0' || c > '9') throw Error(ErrorCode::invalid_argument, "port must be numeric");
    port = port * 10 + (c - '0');
    if (port > 65535) throw Error(ErrorCode::invalid_argument, "port out of range");
  }
  return {std::string(addr.substr(0, colon)), port};
}

std::string default_address() {
  if (const char* env = std::getenv("KPIFORGE_ADDR"); env && *env) return env;
  return "127.0.0.1:8080";
}

void Service::serve(const std::string& host, int port, std::function<void(int)> on_ready) {
  httplib::Server server;

  auto forward = [this](const httplib::Request& in, httplib::Response& out) {
    Request req{in.method, in.path, "", in.body};
    if (const auto q = in.target.find('?'); q != std::string::npos) req.query = in.target.substr(q + 1);
    const auto res = handle(req);
    out.status = res.status;
    out.set_header("Access-Control-Allow-Origin", "*");
    out.set_content(res.body, res.content_type);
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Options(".*", [](const httplib::Request&, httplib::Response& out) {
    out.status = 204;
    out.set_header("Access-Control-Allow-Origin", "*");
    out.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    out.set_header("Access-Control-Allow-Headers", "Content-Type");
  });

  const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::io, "cannot bind " + host + ":" + std::to_string(port));

  // Signals are taken synchronously on a helper thread; stop() is not
  // async-signal-safe.
  sigset_t signals, previous;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, &previous);
  std::atomic<bool> done{false};
  std::thread waiter([&server, &done, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    if (!done) server.stop();
  });

  server_ = &server;
  if (on_ready) on_ready(bound);
  server.listen_after_bind();
  server_ = nullptr;

  // Wake the waiter if the server ended some other way.
  done = true;
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
}

void Service::stop() {
  if (auto* s = static_cast<httplib::Server*>(server_.load())) s->stop();
}

}  // namespace kpiforge::api
