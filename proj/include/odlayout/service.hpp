#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "odlayout/ingest.hpp"
#include "odlayout/pipeline.hpp"

namespace odl {

enum class OutputKind { SceneJson, Svg, Metrics };

/// Decoded body of POST /layout.
struct LayoutRequest {
  CompoundGraph graph;
  std::set<std::string> expansion;
  LayoutConfig config;
  FunctionNetworkOptions fn_options;
  OutputKind output = OutputKind::SceneJson;
};

/// Malformed request; maps to HTTP 400.
class RequestError : public Error {
 public:
  using Error::Error;
};

/// Throws RequestError (or ParseError for a bad graph document).
LayoutRequest parse_layout_request(std::string_view body);

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Pure request handlers. Identical bodies give byte-identical responses.
HttpResponse handle_layout(std::string_view body);
HttpResponse handle_validate(std::string_view body);
HttpResponse handle_health();

/// Canonical JSON body for a finished pipeline run.
std::string layout_response_body(const LayoutResult& result, OutputKind output);

/// HTTP front end for the handlers above.
class LayoutServer {
 public:
  LayoutServer();
  ~LayoutServer();
  LayoutServer(const LayoutServer&) = delete;
  LayoutServer& operator=(const LayoutServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call after bind().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace odl
