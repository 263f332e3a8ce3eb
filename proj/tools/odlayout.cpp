// odlayout: lay out a compound graph and write scene JSON, SVG or metrics.
//
//   odlayout [layout] --in graph.cg.json --expand A,B --svg out.svg
//   odlayout --serve 8080

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "odlayout/ingest.hpp"
#include "odlayout/pipeline.hpp"
#include "odlayout/service.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFatal = 1;
constexpr int kUsage = 2;

bool write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << '\n';
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text << '\n';
  return static_cast<bool>(out);
}

void report_parse_error(const odl::ParseError& e) {
  nlohmann::json j = {{"code", "ParseError"},
                      {"severity", "fatal"},
                      {"subject", e.path()},
                      {"message", e.what()}};
  if (e.line() > 0) {
    j["line"] = e.line();
    j["column"] = e.column();
  }
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args.front() == "layout") args.erase(args.begin());
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back

  CLI::App app{"Overview+detail layout for compound graphs", "odlayout"};
  std::string input;
  std::string format;
  std::vector<std::string> expand;
  std::string duplicate_mode = "each";
  std::string proximity = "edge_gap";
  bool suppress = false;
  bool baseline = false;
  bool no_reverse = false;
  std::string svg_path;
  std::string json_path;
  bool metrics = false;
  bool strict = false;
  double sibling_gap = odl::TreeConfig{}.sibling_gap;
  int serve_port = -1;
  std::string host = "127.0.0.1";

  app.add_option("--in", input, "Input graph (.cg.json or .fn.json)");
  app.add_option("--format", format, "Input format")->check(CLI::IsMember({"generic", "fn"}));
  app.add_option("--expand", expand, "Comma-separated group ids to expand")->delimiter(',');
  app.add_option("--duplicate-mode", duplicate_mode, "Duplicate group policy")
      ->check(CLI::IsMember({"each", "single"}));
  app.add_option("--proximity", proximity, "Direction rule metric")
      ->check(CLI::IsMember({"edge_gap", "center_gap"}));
  app.add_flag("--suppress-duplicate-edges", suppress, "Omit dashed duplicate links");
  app.add_flag("--baseline", baseline, "Centred right-growing frame placement");
  app.add_flag("--no-reverse-arrows", no_reverse, "Keep Function Network wire direction");
  app.add_option("--svg", svg_path, "Write SVG to PATH ('-' for stdout)");
  app.add_option("--json", json_path, "Write scene JSON to PATH ('-' for stdout)");
  app.add_flag("--metrics", metrics, "Print metrics JSON to stdout");
  app.add_flag("--strict", strict, "Treat every diagnostic as fatal");
  app.add_option("--sibling-gap", sibling_gap, "Minimum gap between frames")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--serve", serve_port, "Run the HTTP layout service on PORT")
      ->check(CLI::Range(0, 65535));
  app.add_option("--host", host, "Address for --serve");

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (serve_port >= 0) {
    odl::LayoutServer server;
    const int bound = server.bind(host, serve_port);
    if (bound < 0) {
      std::cerr << "cannot bind " << host << ":" << serve_port << '\n';
      return kUsage;
    }
    std::cerr << "listening on " << host << ":" << bound << '\n';
    return server.listen() ? kOk : kFatal;
  }

  if (input.empty()) {
    std::cerr << "--in is required (see --help)\n";
    return kUsage;
  }
  std::ifstream in(input, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << input << '\n';
    return kUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();

  const odl::InputFormat fmt =
      format.empty() ? odl::format_for_path(input) : *odl::parse_input_format(format);
  odl::CompoundGraph graph;
  try {
    graph = odl::parse_graph(text.str(), fmt, {!no_reverse});
  } catch (const odl::ParseError& e) {
    report_parse_error(e);
    return kFatal;
  }

  odl::LayoutConfig config;
  config.duplicate_mode = *odl::parse_duplicate_mode(duplicate_mode);
  config.tree.proximity = *odl::parse_proximity_metric(proximity);
  config.tree.sibling_gap = sibling_gap;
  config.suppress_duplicate_edges = suppress;
  config.baseline = baseline;
  config.strict = strict;

  const odl::LayoutResult result =
      odl::run_pipeline(graph, std::set<std::string>(expand.begin(), expand.end()), config);
  for (const odl::Diagnostic& d : result.diagnostics) std::cerr << odl::to_json(d) << '\n';

  if (result.laid_out) {
    bool ok = true;
    if (!json_path.empty()) ok &= write_output(json_path, odl::to_json(result.scene));
    if (!svg_path.empty()) ok &= write_output(svg_path, odl::to_svg(result.scene));
    if (metrics) ok &= write_output("-", odl::to_json(result.metrics));
    if (json_path.empty() && svg_path.empty() && !metrics) {
      ok &= write_output("-", odl::to_json(result.scene));
    }
    if (!ok) {
      std::cerr << "failed to write output\n";
      return kUsage;
    }
  }
  return result.fatal ? kFatal : kOk;
}
