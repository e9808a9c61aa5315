#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vsplit/digraph.hpp"

namespace vsplit {

enum class TextFormat { Dg, Dot };

// Parses a dg document:
//
//   # comment
//   digraph: <name>
//   vertices: a b c
//   loops: auto | explicit
//   arrows:
//   a b
//   b c
//
// Throws ParseError, DuplicateVertex, DuplicateArrow, UnknownVertex.
DiGraph parse_digraph(std::string_view text);

// Emits dg (reparses to an equal graph) or DOT (non-loop arrows only).
// Output order is deterministic: vertex order, then arrows by tail/head.
std::string emit_digraph(const DiGraph& g, TextFormat format = TextFormat::Dg);

std::string read_text_file(const std::filesystem::path& path);
DiGraph read_digraph_file(const std::filesystem::path& path);

// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace vsplit
