#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpat/hypergraph.hpp"

namespace mpat {

// --- Benson-style simplex triple files ---------------------------------
// nverts: one integer per simplex; simplices: node ids consumed in order;
// times: one timestamp per simplex (optional file). Node ids are remapped
// densely in order of first appearance; original ids are kept as labels.

struct BensonParseStats {
  std::uint64_t duplicate_nodes_removed = 0;
  std::uint64_t empty_edges_dropped = 0;
};

Hypergraph parse_benson(const std::string& nverts_path,
                        const std::string& simplices_path,
                        const std::string& times_path = "",
                        BensonParseStats* stats = nullptr);

// Inverse of parse_benson using the node labels; used for round-trip checks
// and to export synthetic hypergraphs.
void write_benson(const Hypergraph& h, const std::string& nverts_path,
                  const std::string& simplices_path,
                  const std::string& times_path = "");

// --- JSONL paper records ------------------------------------------------
// One JSON object per line: id, time ("YYYY-MM" or integer epoch seconds),
// authors (nonempty list of strings), optional abstract, citations, fields.

struct PaperRecord {
  std::string id;
  std::int64_t month = 0;  // absolute month index (year*12 + month-1)
  int year = 0;
  std::vector<std::string> authors;
  std::string abstract;
  bool has_abstract = false;
  double citations = 0.0;
  bool has_citations = false;
  std::vector<std::string> fields;
};

std::vector<PaperRecord> read_paper_records(const std::string& path);

// Author coauthorship hypergraph: one edge per paper (month timestamps),
// authors matched on normalized names (trimmed, inner whitespace collapsed,
// lowercased). name_collisions counts normalized names with more than one
// raw spelling.
struct AuthorGraph {
  Hypergraph hypergraph;
  std::uint64_t name_collisions = 0;
  // paper_edges[i] = edge index of records[i] in the hypergraph.
  std::vector<std::uint32_t> paper_edges;
};

AuthorGraph build_author_hypergraph(const std::vector<PaperRecord>& records);

std::string normalize_author_name(const std::string& raw);

// --- Tabular output -----------------------------------------------------

enum class OutFormat { Csv, Json };

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(const std::string& path, OutFormat format) const;
};

// Fixed "%.12g" rendering so reruns are byte-identical.
std::string fmt_double(double v);

}  // namespace mpat
