#include "vsplit/dg_format.hpp"

#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <system_error>
#include <vector>

#include "vsplit/errors.hpp"

namespace vsplit {
namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(std::move(t));
  return out;
}

// Returns the value part if `line` is `key: value`.
std::optional<std::string_view> directive(std::string_view line, std::string_view key) {
  if (line.size() <= key.size() || line.substr(0, key.size()) != key) return std::nullopt;
  if (line[key.size()] != ':') return std::nullopt;
  return trim(line.substr(key.size() + 1));
}

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

DiGraph parse_digraph(std::string_view text) {
  std::optional<std::string> name;
  std::optional<std::vector<std::string>> vertices;
  std::optional<bool> auto_loops;
  bool in_arrows = false;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> arrow_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    if (in_arrows) {
      auto toks = tokens(line);
      if (toks.size() != 2) throw ParseError(line_no, "expected '<tail> <head>'");
      arrow_lines.emplace_back(line_no, std::move(toks));
      continue;
    }
    if (auto v = directive(line, "digraph")) {
      if (name) throw ParseError(line_no, "repeated 'digraph:' directive");
      auto toks = tokens(*v);
      if (toks.size() > 1) throw ParseError(line_no, "graph name must be a single token");
      name = toks.empty() ? std::string{} : toks.front();
    } else if (auto v = directive(line, "vertices")) {
      if (vertices) throw ParseError(line_no, "repeated 'vertices:' directive");
      vertices = tokens(*v);
    } else if (auto v = directive(line, "loops")) {
      if (auto_loops) throw ParseError(line_no, "repeated 'loops:' directive");
      if (*v == "auto") {
        auto_loops = true;
      } else if (*v == "explicit") {
        auto_loops = false;
      } else {
        throw ParseError(line_no, "loops must be 'auto' or 'explicit'");
      }
    } else if (line == "arrows:") {
      if (!vertices) throw ParseError(line_no, "'arrows:' before 'vertices:'");
      in_arrows = true;
    } else {
      throw ParseError(line_no, "unrecognized line '" + std::string(line) + "'");
    }
  }
  if (!vertices) throw ParseError(line_no, "missing 'vertices:' directive");
  if (!in_arrows) throw ParseError(line_no, "missing 'arrows:' directive");

  DiGraph g;
  g.set_name(name.value_or(std::string{}));
  for (auto& label : *vertices) g.add_vertex(std::move(label));
  const bool loops = auto_loops.value_or(true);
  if (loops) g.add_loops();
  for (const auto& [no, toks] : arrow_lines) {
    const Vertex t = g.at(toks[0]);
    const Vertex h = g.at(toks[1]);
    // Under `loops: auto` a listed loop is already present.
    if (loops && t == h) continue;
    g.add_arrow(t, h);
  }
  return g;
}

std::string emit_digraph(const DiGraph& g, TextFormat format) {
  std::ostringstream out;
  if (format == TextFormat::Dot) {
    const std::string name = g.name().empty() ? "G" : g.name();
    out << "digraph " << (is_identifier(name) ? name : dot_quote(name)) << " {\n";
    for (const Arrow& a : g.star_arrows())
      out << "  " << dot_quote(g.label(a.tail)) << " -> " << dot_quote(g.label(a.head)) << ";\n";
    out << "}\n";
    return out.str();
  }

  bool reflexive = true;
  for (Vertex v = 0; v < g.size(); ++v) reflexive = reflexive && g.has_arrow(v, v);
  if (!g.name().empty()) out << "digraph: " << g.name() << "\n";
  out << "vertices:";
  for (const auto& l : g.labels()) out << ' ' << l;
  out << "\nloops: " << (reflexive ? "auto" : "explicit") << "\narrows:\n";
  for (const Arrow& a : reflexive ? g.star_arrows() : g.arrows())
    out << g.label(a.tail) << ' ' << g.label(a.head) << '\n';
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DiGraph read_digraph_file(const std::filesystem::path& path) {
  return parse_digraph(read_text_file(path));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

}  // namespace vsplit
