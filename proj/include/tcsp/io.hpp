#ifndef TCSP_IO_HPP
#define TCSP_IO_HPP

// Text formats and JSON reports.
//
// Template files hold one relation per line:
//
//     lt/2   = name: lt
//     R/3    = orbits: <0,0,1>;<1,0,0>
//     S/2    = pp: exists h. lt(x,h) & lt(h,y)
//
// `pp:` lines may use every symbol defined above them. `#` starts a comment.
// Instance files start with `template <path>` (relative to the instance
// file) and continue in the format of parse_instance().

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tcsp/instance.hpp"
#include "tcsp/polymorphism.hpp"
#include "tcsp/solver.hpp"

namespace tcsp {

/// Throws ParseError (with line number), UnknownSymbolError or ArityError.
Template parse_template(std::string_view text);

std::string read_file(const std::filesystem::path& path);
Template load_template_file(const std::filesystem::path& path);

/// The path named on the `template` line, if any.
std::optional<std::string> template_reference(std::string_view instance_text);

struct LoadedInstance {
  Template tmpl;
  Instance instance;
};

/// Reads an instance file; `template_override` replaces its `template` line.
LoadedInstance load_instance_file(const std::filesystem::path& path,
                                  const std::optional<std::filesystem::path>& template_override = {});

using Json = nlohmann::ordered_json;

/// {"satisfiable": bool, "witness": {...} | null, "trace": [{"stage", "sets"}]}
Json to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

/// {"class", "preserved": {op: bool}, "matrix": {op: {symbol: bool}}}
Json to_json(const Classification& c);
Classification classification_from_json(const Json& j);

}  // namespace tcsp

#endif  // TCSP_IO_HPP
