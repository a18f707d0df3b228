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

// Plain-text instance files.
//
// Matroid documents hold one or more matroid blocks, optionally followed by
// named element sets and attributes. Blank lines and lines starting with '#'
// are ignored. Tokens are separated by whitespace.
//
//   matroid partition m=<int>          one block per matroid
//   class <elem> <cls>                 every element needs exactly one class
//   cap <cls> <k>                      every class used needs a capacity
//
//   matroid graphic m=<int> [n=<int>]  n defaults to 1 + max endpoint
//   edge <elem> <u> <v>                every element needs exactly one edge
//
//   matroid uniform m=<int>
//   rank <k>
//
//   set <name> <elem>...               named subset (e.g. T, Etilde, Itilde)
//   attr <key> <value>                 free-form metadata
//
// Graph documents:
//
//   graph m=<int> n=<int>              m edges on n vertices
//   bipartition <u-count>              optional; left side is [0, u-count)
//   e <elem> <u> <v>                   every element needs exactly one line
//
// Readers throw std::runtime_error with a line number on malformed input.

#ifndef OMI_IO_H_
#define OMI_IO_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "omi/graph.h"
#include "omi/matroid.h"

namespace omi {

struct MatroidDocument {
  std::vector<MatroidPtr> matroids;
  std::map<std::string, std::vector<Element>> sets;
  std::map<std::string, std::string> attrs;
};

MatroidDocument read_matroid_document(std::istream& in);
MatroidDocument read_matroid_document_file(const std::string& path);

// Writes one block. Supports partition, uniform and graphic matroids only;
// throws std::invalid_argument for other kinds.
void write_matroid(std::ostream& out, const Matroid& m);
void write_matroid_document(std::ostream& out, const MatroidDocument& doc);

Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace omi

#endif  // OMI_IO_H_
