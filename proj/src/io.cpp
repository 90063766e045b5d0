#include "tcsp/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "tcsp/error.hpp"
#include "tcsp/pp_formula.hpp"

namespace tcsp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) f(line, line_no);
  }
}

TemporalRelation parse_orbits(std::string_view body, std::size_t arity, std::size_t line_no) {
  std::vector<OrderTuple> orbits;
  std::size_t pos = 0;
  body = trim(body);
  while (!body.empty() && pos < body.size()) {
    std::size_t semi = body.find(';', pos);
    std::string_view item = trim(body.substr(pos, semi == std::string_view::npos ? body.npos : semi - pos));
    if (!item.empty()) {
      try {
        orbits.push_back(parse_order_tuple(item));
      } catch (const ParseError& e) {
        throw ParseError(std::string("bad orbit '") + std::string(item) + "': " + e.what(), line_no, pos);
      }
    }
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return TemporalRelation(arity, std::move(orbits));
}

}  // namespace

Template parse_template(std::string_view text) {
  Template out;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const std::size_t eq = line.find('=');
    const std::size_t slash = line.find('/');
    if (eq == std::string_view::npos || slash == std::string_view::npos || slash > eq) {
      throw ParseError("expected SYMBOL/ARITY = ...", line_no, 0);
    }
    std::string symbol(trim(line.substr(0, slash)));
    if (symbol.empty()) throw ParseError("missing relation symbol", line_no, 0);
    std::size_t arity = 0;
    try {
      arity = static_cast<std::size_t>(std::stoul(std::string(trim(line.substr(slash + 1, eq - slash - 1)))));
    } catch (const std::logic_error&) {
      throw ParseError("bad arity for " + symbol, line_no, slash + 1);
    }
    std::string_view rhs = trim(line.substr(eq + 1));
    const std::size_t colon = rhs.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected name:, orbits: or pp:", line_no, eq + 1);
    const std::string_view kind = trim(rhs.substr(0, colon));
    const std::string_view body = trim(rhs.substr(colon + 1));

    TemporalRelation rel;
    if (kind == "name") {
      rel = named(body);
    } else if (kind == "orbits") {
      rel = parse_orbits(body, arity, line_no);
    } else if (kind == "pp") {
      try {
        rel = evaluate(body, out);
      } catch (const ParseError& e) {
        throw ParseError(std::string("in pp formula: ") + e.what(), line_no, eq + 1);
      }
    } else {
      throw ParseError("unknown definition kind '" + std::string(kind) + "'", line_no, eq + 1);
    }
    if (rel.arity() != arity) {
      throw ArityError("line " + std::to_string(line_no) + ": " + symbol + " declared with arity " +
                       std::to_string(arity) + " but defines arity " + std::to_string(rel.arity()));
    }
    rel.set_name(symbol);
    out.add(symbol, std::move(rel));
  });
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Template load_template_file(const std::filesystem::path& path) { return parse_template(read_file(path)); }

std::optional<std::string> template_reference(std::string_view instance_text) {
  std::optional<std::string> out;
  for_each_line(instance_text, [&](std::string_view line, std::size_t) {
    if (out || line.substr(0, 8) != "template") return;
    if (line.size() > 8 && !std::isspace(static_cast<unsigned char>(line[8]))) return;
    out = std::string(trim(line.substr(8)));
  });
  return out;
}

LoadedInstance load_instance_file(const std::filesystem::path& path,
                                  const std::optional<std::filesystem::path>& template_override) {
  const std::string text = read_file(path);
  std::filesystem::path tmpl_path;
  if (template_override) {
    tmpl_path = *template_override;
  } else {
    auto ref = template_reference(text);
    if (!ref || ref->empty()) throw Error(path.string() + ": no template given");
    tmpl_path = std::filesystem::path(*ref);
    if (tmpl_path.is_relative()) tmpl_path = path.parent_path() / tmpl_path;
  }
  LoadedInstance out{load_template_file(tmpl_path), {}};
  out.instance = parse_instance(text, out.tmpl);
  return out;
}

Json to_json(const Verdict& v) {
  Json j;
  j["satisfiable"] = v.satisfiable;
  if (v.witness) {
    Json w = Json::object();
    for (const auto& [name, rank] : *v.witness) w[name] = rank;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  Json trace = Json::array();
  for (const auto& step : v.trace) trace.push_back({{"stage", step.stage}, {"sets", step.sets}});
  j["trace"] = std::move(trace);
  return j;
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  v.satisfiable = j.at("satisfiable").get<bool>();
  if (!j.at("witness").is_null()) {
    Assignment w;
    for (const auto& [name, rank] : j.at("witness").items()) w[name] = rank.get<int>();
    v.witness = std::move(w);
  }
  for (const auto& step : j.at("trace")) {
    v.trace.push_back({step.at("stage").get<std::string>(), step.at("sets").get<std::vector<std::vector<std::string>>>()});
  }
  return v;
}

Json to_json(const Classification& c) {
  Json j;
  j["class"] = std::string(to_string(c.logic_class));
  Json preserved = Json::object();
  Json matrix = Json::object();
  const auto& ops = classification_ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    preserved[ops[i].name()] = static_cast<bool>(c.preserved[i]);
    Json row = Json::object();
    for (std::size_t r = 0; r < c.symbols.size(); ++r) row[c.symbols[r]] = static_cast<bool>(c.matrix[i][r]);
    matrix[ops[i].name()] = std::move(row);
  }
  j["preserved"] = std::move(preserved);
  j["matrix"] = std::move(matrix);
  return j;
}

Classification classification_from_json(const Json& j) {
  Classification c;
  c.logic_class = parse_logic_class(j.at("class").get<std::string>());
  const auto& ops = classification_ops();
  c.matrix.resize(ops.size());
  bool symbols_read = false;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    c.preserved[i] = j.at("preserved").at(ops[i].name()).get<bool>();
    for (const auto& [symbol, value] : j.at("matrix").at(ops[i].name()).items()) {
      if (!symbols_read) c.symbols.push_back(symbol);
      c.matrix[i].push_back(value.get<bool>());
    }
    symbols_read = true;
  }
  return c;
}

}  // namespace tcsp
