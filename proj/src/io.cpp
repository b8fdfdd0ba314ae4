#include "hypersparse/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hsp {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, const char* what) {
  T value{};
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, std::string("expected ") + what + ", got '" +
                               std::string(field) + "'");
  }
  return value;
}

}  // namespace

HmtxDocument parse_document(std::string_view text) {
  HmtxDocument doc;
  bool have_header = false;
  std::size_t expected = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#') {
      doc.comments.emplace_back(line.substr(first + 1));
      continue;
    }
    const auto fields = split_fields(line);
    if (!have_header) {
      if (fields.size() != 2) throw ParseError(line_no, "header must be 'n m'");
      doc.n = parse_number<std::size_t>(fields[0], line_no, "vertex count");
      expected = parse_number<std::size_t>(fields[1], line_no, "record count");
      have_header = true;
      doc.records.reserve(expected);
      continue;
    }
    if (doc.records.size() == expected) {
      throw ParseError(line_no, "more records than the header announces");
    }
    if (fields.size() < 2) throw ParseError(line_no, "record must be 'w k v_1 ... v_k'");
    HmtxRecord rec;
    rec.weight = parse_number<double>(fields[0], line_no, "weight");
    if (!std::isfinite(rec.weight) || !(rec.weight > 0.0)) {
      throw ParseError(line_no, "weight must be finite and positive");
    }
    const auto k = parse_number<std::size_t>(fields[1], line_no, "record size");
    if (fields.size() != k + 2) {
      throw ParseError(line_no, "record announces " + std::to_string(k) +
                                    " vertices but lists " +
                                    std::to_string(fields.size() - 2));
    }
    rec.vertices.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto v = parse_number<std::size_t>(fields[i + 2], line_no, "vertex id");
      if (v >= doc.n) {
        throw ParseError(line_no, "vertex id " + std::to_string(v) +
                                      " out of range [0, " +
                                      std::to_string(doc.n) + ")");
      }
      rec.vertices.push_back(static_cast<Vertex>(v));
    }
    doc.records.push_back(std::move(rec));
  }
  if (!have_header) throw ParseError(line_no, "missing header line");
  if (doc.records.size() != expected) {
    throw ParseError(line_no, "expected " + std::to_string(expected) +
                                  " records, found " +
                                  std::to_string(doc.records.size()));
  }
  return doc;
}

ParsedHypergraph parse(std::string_view text) {
  HmtxDocument doc = parse_document(text);
  std::vector<HyperEdge> edges;
  edges.reserve(doc.records.size());
  for (auto& rec : doc.records) {
    edges.push_back(HyperEdge{std::move(rec.vertices), rec.weight});
  }
  Normalized norm = normalize(Hypergraph(doc.n, std::move(edges)));
  return ParsedHypergraph{std::move(norm.hypergraph), std::move(norm.warnings)};
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw InputError("cannot format number");
  return std::string(buf, ptr);
}

std::string serialize(const Hypergraph& h,
                      const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) {
    out += '#';
    out += c;
    out += '\n';
  }
  out += std::to_string(h.num_vertices());
  out += ' ';
  out += std::to_string(h.num_edges());
  out += '\n';
  for (const auto& e : h.edges()) {
    out += format_double(e.weight);
    out += ' ';
    out += std::to_string(e.size());
    for (Vertex v : e.vertices) {
      out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
}

}  // namespace hsp
