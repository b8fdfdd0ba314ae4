#pragma once

// The .hmtx hypergraph text format.
//
//   # optional comment lines
//   n m
//   w k v_1 ... v_k        (m records)
//
// Fields are separated by spaces, lines end in LF. Weights are written in
// shortest round-trip decimal form.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hypersparse/core.hpp"

namespace hsp {

struct HmtxRecord {
  double weight = 1.0;
  std::vector<Vertex> vertices;
};

struct HmtxDocument {
  std::size_t n = 0;
  std::vector<HmtxRecord> records;
  std::vector<std::string> comments;  // text after '#', in file order
};

/// Syntax-level parse. Throws ParseError carrying the 1-based line number.
HmtxDocument parse_document(std::string_view text);

struct ParsedHypergraph {
  Hypergraph hypergraph;
  std::vector<std::string> warnings;
};

/// Parses and normalizes: repeated vertices inside a record are merged and
/// records left with fewer than two vertices are dropped with a warning.
ParsedHypergraph parse(std::string_view text);

std::string serialize(const Hypergraph& h,
                      const std::vector<std::string>& comments = {});

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace hsp
