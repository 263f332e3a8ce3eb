#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "odlayout/model.hpp"

namespace odl {

/// Malformed input. Syntax errors carry a 1-based line and column; schema
/// errors carry the JSON path of the offending field (e.g. "groups[1].id").
class ParseError : public Error {
 public:
  ParseError(std::string message, std::string path, std::size_t line = 0, std::size_t column = 0)
      : Error(std::move(message)), path_(std::move(path)), line_(line), column_(column) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string path_;
  std::size_t line_;
  std::size_t column_;
};

/// Generic compound-graph document (`.cg.json`).
CompoundGraph parse_generic(std::string_view text);

/// Inverse of parse_generic for graphs it can represent.
std::string to_generic_json(const CompoundGraph& graph);

struct FunctionNetworkOptions {
  // Lay wires out from the value's producer to its consumer; the arrowhead
  // stays on the producer side as in the source notation.
  bool reverse_arrows = true;
};

/// Function Network subset (`.fn.json`): nested boxes with ports and wires.
CompoundGraph parse_function_network(std::string_view text,
                                     const FunctionNetworkOptions& options = {});

enum class InputFormat { Generic, FunctionNetwork };

std::optional<InputFormat> parse_input_format(std::string_view name);
/// `.fn.json` selects the Function Network reader, anything else the generic one.
InputFormat format_for_path(std::string_view path);

CompoundGraph parse_graph(std::string_view text, InputFormat format,
                          const FunctionNetworkOptions& options = {});

}  // namespace odl
