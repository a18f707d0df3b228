// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "omi/io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace omi {
namespace {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::uint64_t parse_uint(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

// Parses "key=<int>"; nullopt if the token has a different key.
std::optional<std::uint64_t> parse_keyed(const std::string& tok,
                                         const std::string& key,
                                         std::size_t line) {
  if (tok.rfind(key + "=", 0) != 0) return std::nullopt;
  return parse_uint(tok.substr(key.size() + 1), line);
}

struct Block {
  std::string kind;
  std::size_t m = 0;
  std::optional<std::size_t> n;
  std::size_t header_line = 0;
  std::vector<std::optional<std::uint32_t>> class_of;
  std::map<std::uint32_t, std::uint32_t> caps;
  std::vector<std::optional<Edge>> edges;
  std::optional<std::size_t> rank;
};

MatroidPtr finish(Block& b) {
  const std::size_t line = b.header_line;
  if (b.kind == "partition") {
    std::vector<std::uint32_t> class_of(b.m);
    std::uint32_t classes = 0;
    for (std::size_t e = 0; e < b.m; ++e) {
      if (!b.class_of[e]) {
        throw ParseError(line, "element " + std::to_string(e) + " has no class");
      }
      class_of[e] = *b.class_of[e];
      classes = std::max(classes, class_of[e] + 1);
    }
    for (const auto& [cls, cap] : b.caps) classes = std::max(classes, cls + 1);
    std::vector<std::uint32_t> capacity(classes, 0);
    for (std::uint32_t c : class_of) {
      if (!b.caps.count(c)) {
        throw ParseError(line, "class " + std::to_string(c) + " has no capacity");
      }
    }
    for (const auto& [cls, cap] : b.caps) capacity[cls] = cap;
    return std::make_shared<PartitionMatroid>(std::move(class_of),
                                              std::move(capacity));
  }
  if (b.kind == "graphic") {
    std::vector<Edge> edges(b.m);
    std::size_t n = 0;
    for (std::size_t e = 0; e < b.m; ++e) {
      if (!b.edges[e]) {
        throw ParseError(line, "element " + std::to_string(e) + " has no edge");
      }
      edges[e] = *b.edges[e];
      n = std::max<std::size_t>(n, std::max(edges[e].u, edges[e].v) + 1);
    }
    if (b.n) {
      if (*b.n < n) throw ParseError(line, "edge endpoint exceeds n");
      n = *b.n;
    }
    return std::make_shared<GraphicMatroid>(n, std::move(edges));
  }
  if (!b.rank) throw ParseError(line, "uniform matroid without a rank line");
  return std::make_shared<UniformMatroid>(b.m, *b.rank);
}

std::uint32_t element_arg(const std::string& s, const Block& b,
                          std::size_t line) {
  const std::uint64_t e = parse_uint(s, line);
  if (e >= b.m) throw ParseError(line, "element id " + s + " >= m");
  return static_cast<std::uint32_t>(e);
}

}  // namespace

MatroidDocument read_matroid_document(std::istream& in) {
  MatroidDocument doc;
  std::optional<Block> block;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = tokenize(raw);
    if (tok.empty() || tok[0][0] == '#') continue;
    const std::string& head = tok[0];
    if (head == "matroid") {
      if (block) doc.matroids.push_back(finish(*block));
      if (tok.size() < 3) throw ParseError(line, "expected 'matroid <kind> m=<int>'");
      block.emplace();
      block->kind = tok[1];
      block->header_line = line;
      if (block->kind != "partition" && block->kind != "graphic" &&
          block->kind != "uniform") {
        throw ParseError(line, "unknown matroid kind '" + tok[1] + "'");
      }
      auto m = parse_keyed(tok[2], "m", line);
      if (!m) throw ParseError(line, "expected m=<int>");
      block->m = *m;
      for (std::size_t i = 3; i < tok.size(); ++i) {
        auto n = parse_keyed(tok[i], "n", line);
        if (!n || block->kind != "graphic") {
          throw ParseError(line, "unexpected header token '" + tok[i] + "'");
        }
        block->n = *n;
      }
      block->class_of.assign(block->kind == "partition" ? block->m : 0,
                             std::nullopt);
      block->edges.assign(block->kind == "graphic" ? block->m : 0, std::nullopt);
      continue;
    }
    if (head == "set") {
      if (tok.size() < 2) throw ParseError(line, "expected 'set <name> ...'");
      auto& dst = doc.sets[tok[1]];
      for (std::size_t i = 2; i < tok.size(); ++i) {
        dst.push_back(static_cast<Element>(parse_uint(tok[i], line)));
      }
      continue;
    }
    if (head == "attr") {
      if (tok.size() != 3) throw ParseError(line, "expected 'attr <key> <value>'");
      doc.attrs[tok[1]] = tok[2];
      continue;
    }
    if (!block) throw ParseError(line, "'" + head + "' before any matroid header");
    Block& b = *block;
    if (head == "class" && b.kind == "partition" && tok.size() == 3) {
      const auto e = element_arg(tok[1], b, line);
      if (b.class_of[e]) throw ParseError(line, "duplicate class line");
      b.class_of[e] = static_cast<std::uint32_t>(parse_uint(tok[2], line));
    } else if (head == "cap" && b.kind == "partition" && tok.size() == 3) {
      b.caps[static_cast<std::uint32_t>(parse_uint(tok[1], line))] =
          static_cast<std::uint32_t>(parse_uint(tok[2], line));
    } else if (head == "edge" && b.kind == "graphic" && tok.size() == 4) {
      const auto e = element_arg(tok[1], b, line);
      if (b.edges[e]) throw ParseError(line, "duplicate edge line");
      b.edges[e] = Edge{static_cast<Vertex>(parse_uint(tok[2], line)),
                        static_cast<Vertex>(parse_uint(tok[3], line))};
    } else if (head == "rank" && b.kind == "uniform" && tok.size() == 2) {
      b.rank = parse_uint(tok[1], line);
    } else {
      throw ParseError(line, "unexpected line for " + b.kind + " block: " + raw);
    }
  }
  if (block) doc.matroids.push_back(finish(*block));
  return doc;
}

MatroidDocument read_matroid_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_matroid_document(in);
}

void write_matroid(std::ostream& out, const Matroid& m) {
  const std::size_t size = m.id_bound();
  if (const auto* p = dynamic_cast<const PartitionMatroid*>(&m)) {
    out << "matroid partition m=" << size << "\n";
    for (Element e = 0; e < size; ++e) {
      out << "class " << e << " " << p->class_of(e) << "\n";
    }
    for (std::uint32_t c = 0; c < p->class_count(); ++c) {
      out << "cap " << c << " " << p->capacity(c) << "\n";
    }
  } else if (const auto* g = dynamic_cast<const GraphicMatroid*>(&m)) {
    out << "matroid graphic m=" << size << " n=" << g->vertex_count() << "\n";
    for (Element e = 0; e < size; ++e) {
      out << "edge " << e << " " << g->edge(e).u << " " << g->edge(e).v << "\n";
    }
  } else if (const auto* u = dynamic_cast<const UniformMatroid*>(&m)) {
    out << "matroid uniform m=" << size << "\n";
    out << "rank " << u->rank_bound() << "\n";
  } else {
    throw std::invalid_argument("cannot serialise a " +
                                std::string(to_string(m.kind())) + " matroid");
  }
}

void write_matroid_document(std::ostream& out, const MatroidDocument& doc) {
  for (const auto& m : doc.matroids) write_matroid(out, *m);
  for (const auto& [name, elems] : doc.sets) {
    out << "set " << name;
    for (Element e : elems) out << " " << e;
    out << "\n";
  }
  for (const auto& [key, value] : doc.attrs) {
    out << "attr " << key << " " << value << "\n";
  }
}

Graph read_graph(std::istream& in) {
  Graph g;
  std::vector<std::optional<Edge>> edges;
  bool have_header = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = tokenize(raw);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "graph") {
      if (have_header || tok.size() != 3) throw ParseError(line, "bad graph header");
      auto m = parse_keyed(tok[1], "m", line);
      auto n = parse_keyed(tok[2], "n", line);
      if (!m || !n) throw ParseError(line, "expected 'graph m=<int> n=<int>'");
      edges.assign(*m, std::nullopt);
      g.vertex_count = *n;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line, "missing graph header");
    if (tok[0] == "bipartition" && tok.size() == 2) {
      g.left_count = parse_uint(tok[1], line);
    } else if (tok[0] == "e" && tok.size() == 4) {
      const auto id = parse_uint(tok[1], line);
      if (id >= edges.size()) throw ParseError(line, "edge id >= m");
      if (edges[id]) throw ParseError(line, "duplicate edge id");
      const auto u = parse_uint(tok[2], line);
      const auto v = parse_uint(tok[3], line);
      if (u >= g.vertex_count || v >= g.vertex_count) {
        throw ParseError(line, "endpoint >= n");
      }
      edges[id] = Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    } else {
      throw ParseError(line, "unexpected line: " + raw);
    }
  }
  if (!have_header) throw std::runtime_error("empty graph document");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!edges[i]) throw std::runtime_error("edge " + std::to_string(i) + " missing");
    g.edges.push_back(*edges[i]);
  }
  if (g.left_count && !bipartition(g)) {
    throw std::runtime_error("edges do not respect the declared bipartition");
  }
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "graph m=" << g.edges.size() << " n=" << g.vertex_count << "\n";
  if (g.left_count) out << "bipartition " << *g.left_count << "\n";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    out << "e " << i << " " << g.edges[i].u << " " << g.edges[i].v << "\n";
  }
}

}  // namespace omi
