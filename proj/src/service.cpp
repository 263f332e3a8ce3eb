#include "odlayout/service.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>

#include "json_util.hpp"

namespace odl {

using detail::json;

namespace {

json parse_body(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw RequestError(std::string("request body is not valid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RequestError("cannot read graph_path '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Graph text and format from a body holding "graph" or "graph_path".
CompoundGraph load_graph(const json& doc, const FunctionNetworkOptions& fn) {
  const bool inline_graph = doc.contains("graph");
  const bool path_graph = doc.contains("graph_path");
  if (inline_graph == path_graph) {
    throw RequestError("exactly one of \"graph\" and \"graph_path\" is required");
  }

  std::optional<InputFormat> format;
  if (auto it = doc.find("format"); it != doc.end()) {
    if (!it->is_string() || !(format = parse_input_format(it->get<std::string>()))) {
      throw RequestError("format: expected \"generic\" or \"fn\"");
    }
  }

  std::string text;
  if (inline_graph) {
    const json& g = doc.at("graph");
    if (g.is_string()) {
      text = g.get<std::string>();
    } else if (g.is_object()) {
      text = g.dump();
    } else {
      throw RequestError("graph: expected an object or a string");
    }
  } else {
    const json& p = doc.at("graph_path");
    if (!p.is_string()) throw RequestError("graph_path: expected a string");
    text = read_file(p.get<std::string>());
    if (!format) format = format_for_path(p.get<std::string>());
  }
  return parse_graph(text, format.value_or(InputFormat::Generic), fn);
}

bool bool_field(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw RequestError("config." + key + ": expected a boolean");
  return v.get<bool>();
}

std::string string_field(const json& v, const std::string& key) {
  if (!v.is_string()) throw RequestError("config." + key + ": expected a string");
  return v.get<std::string>();
}

json diagnostics_json(const std::vector<Diagnostic>& diagnostics) {
  json list = json::array();
  for (const Diagnostic& d : diagnostics) list.push_back(json::parse(to_json(d)));
  return list;
}

HttpResponse error_response(int status, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  return {status, detail::dump_canonical(extra)};
}

HttpResponse parse_error_response(const ParseError& e) {
  json extra = json::object();
  if (!e.path().empty()) extra["path"] = e.path();
  if (e.line() > 0) {
    extra["line"] = e.line();
    extra["column"] = e.column();
  }
  return error_response(400, e.what(), std::move(extra));
}

}  // namespace

LayoutRequest parse_layout_request(std::string_view body) {
  const json doc = parse_body(body);
  if (!doc.is_object()) throw RequestError("request body must be a JSON object");
  static const std::set<std::string> known = {"graph",     "graph_path", "format",
                                              "expansion", "config",     "output"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw RequestError("unknown request field '" + key + "'");
  }

  LayoutRequest request;
  if (auto it = doc.find("config"); it != doc.end()) {
    if (!it->is_object()) throw RequestError("config: expected an object");
    for (const auto& [key, value] : it->items()) {
      if (key == "sibling_gap") {
        if (!value.is_number() || value.get<double>() < 0.0) {
          throw RequestError("config.sibling_gap: expected a non-negative number");
        }
        request.config.tree.sibling_gap = value.get<double>();
      } else if (key == "duplicate_mode") {
        auto mode = parse_duplicate_mode(string_field(value, key));
        if (!mode) throw RequestError("config.duplicate_mode: expected \"each\" or \"single\"");
        request.config.duplicate_mode = *mode;
      } else if (key == "proximity_metric") {
        auto metric = parse_proximity_metric(string_field(value, key));
        if (!metric) {
          throw RequestError("config.proximity_metric: expected \"edge_gap\" or \"center_gap\"");
        }
        request.config.tree.proximity = *metric;
      } else if (key == "baseline") {
        request.config.baseline = bool_field(value, key);
      } else if (key == "reverse_arrows") {
        request.fn_options.reverse_arrows = bool_field(value, key);
      } else if (key == "suppress_duplicate_edges") {
        request.config.suppress_duplicate_edges = bool_field(value, key);
      } else if (key == "strict") {
        request.config.strict = bool_field(value, key);
      } else {
        throw RequestError("config." + key + ": unknown configuration key");
      }
    }
  }

  if (auto it = doc.find("expansion"); it != doc.end()) {
    if (!it->is_array()) throw RequestError("expansion: expected an array of group ids");
    for (const json& id : *it) {
      if (!id.is_string()) throw RequestError("expansion: expected an array of group ids");
      request.expansion.insert(id.get<std::string>());
    }
  }

  if (auto it = doc.find("output"); it != doc.end()) {
    const std::string out = it->is_string() ? it->get<std::string>() : "";
    if (out == "scene-json") {
      request.output = OutputKind::SceneJson;
    } else if (out == "svg") {
      request.output = OutputKind::Svg;
    } else if (out == "metrics") {
      request.output = OutputKind::Metrics;
    } else {
      throw RequestError("output: expected \"scene-json\", \"svg\" or \"metrics\"");
    }
  }

  request.graph = load_graph(doc, request.fn_options);
  return request;
}

std::string layout_response_body(const LayoutResult& result, OutputKind output) {
  // Roots are always open, so the echo lists them alongside the closed request.
  std::set<std::string> expansion = result.expansion.expanded;
  if (result.laid_out) {
    for (const LayoutTreeNode& root : result.tree.roots) expansion.insert(root.group_id);
  }
  json doc = {{"diagnostics", diagnostics_json(result.diagnostics)},
              {"expansion", json(expansion)},
              {"fatal", result.fatal}};
  if (result.laid_out) {
    doc["metrics"] = json::parse(to_json(result.metrics));
    if (output == OutputKind::SceneJson) doc["scene"] = json::parse(to_json(result.scene));
    if (output == OutputKind::Svg) doc["svg"] = to_svg(result.scene);
  }
  return detail::dump_canonical(doc);
}

HttpResponse handle_layout(std::string_view body) {
  try {
    const LayoutRequest request = parse_layout_request(body);
    const LayoutResult result = run_pipeline(request.graph, request.expansion, request.config);
    return {result.fatal ? 422 : 200, layout_response_body(result, request.output)};
  } catch (const ParseError& e) {
    return parse_error_response(e);
  } catch (const RequestError& e) {
    return error_response(400, e.what());
  } catch (const std::exception& e) {
    return error_response(500, std::string("internal error: ") + e.what());
  }
}

HttpResponse handle_validate(std::string_view body) {
  try {
    const json doc = parse_body(body);
    if (!doc.is_object()) throw RequestError("request body must be a JSON object");
    CompoundGraph graph;
    if (doc.contains("graph") || doc.contains("graph_path")) {
      FunctionNetworkOptions fn;
      if (auto it = doc.find("config"); it != doc.end() && it->contains("reverse_arrows")) {
        fn.reverse_arrows = bool_field(it->at("reverse_arrows"), "reverse_arrows");
      }
      graph = load_graph(doc, fn);
    } else {
      graph = parse_generic(body);
    }
    const ValidationResult result = validate(graph);
    const json out = {{"diagnostics", diagnostics_json(result.diagnostics)},
                      {"fatal", result.fatal()}};
    return {200, detail::dump_canonical(out)};
  } catch (const ParseError& e) {
    return parse_error_response(e);
  } catch (const RequestError& e) {
    return error_response(400, e.what());
  } catch (const std::exception& e) {
    return error_response(500, std::string("internal error: ") + e.what());
  }
}

HttpResponse handle_health() { return {200, R"({"status":"ok"})"}; }

// ---------------------------------------------------------------------------

struct LayoutServer::Impl {
  httplib::Server server;
};

LayoutServer::LayoutServer() : impl_(std::make_unique<Impl>()) {
  auto reply = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl_->server.Post("/layout", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_layout(req.body));
  });
  impl_->server.Post("/validate", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_validate(req.body));
  });
  impl_->server.Get("/health", [reply](const httplib::Request&, httplib::Response& res) {
    reply(res, handle_health());
  });
}

LayoutServer::~LayoutServer() { stop(); }

int LayoutServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool LayoutServer::listen() { return impl_->server.listen_after_bind(); }

void LayoutServer::stop() { impl_->server.stop(); }

}  // namespace odl
