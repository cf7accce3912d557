#include "mpat/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mpat/error.hpp"

namespace mpat {

namespace {

std::vector<std::int64_t> read_int_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCategory::Input, "cannot open file: " + path);
  std::vector<std::int64_t> out;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Trim whitespace; skip blank lines.
    std::size_t a = line.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r\n");
    std::string tok = line.substr(a, b - a + 1);
    try {
      std::size_t used = 0;
      std::int64_t v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (...) {
      fail(ErrorCategory::Format,
           path + ":" + std::to_string(lineno) + ": not an integer: " + tok);
    }
  }
  return out;
}

}  // namespace

Hypergraph parse_benson(const std::string& nverts_path,
                        const std::string& simplices_path,
                        const std::string& times_path,
                        BensonParseStats* stats) {
  std::vector<std::int64_t> nverts = read_int_lines(nverts_path);
  std::vector<std::int64_t> simplices = read_int_lines(simplices_path);
  std::vector<std::int64_t> times;
  if (!times_path.empty()) {
    times = read_int_lines(times_path);
    if (times.size() != nverts.size())
      fail(ErrorCategory::Format,
           times_path + ": expected " + std::to_string(nverts.size()) +
               " timestamps, found " + std::to_string(times.size()));
  }
  std::uint64_t expected = 0;
  for (std::int64_t c : nverts) {
    if (c < 0)
      fail(ErrorCategory::Format, nverts_path + ": negative simplex size");
    expected += static_cast<std::uint64_t>(c);
  }
  if (expected != simplices.size())
    fail(ErrorCategory::Format,
         simplices_path + ": expected " + std::to_string(expected) +
             " node entries (sum of nverts), found " +
             std::to_string(simplices.size()));

  std::map<std::int64_t, NodeId> remap;
  std::vector<std::string> labels;
  std::vector<HyperEdge> edges;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < nverts.size(); ++i) {
    HyperEdge e;
    for (std::int64_t j = 0; j < nverts[i]; ++j) {
      std::int64_t raw = simplices[cursor++];
      auto [it, fresh] = remap.try_emplace(
          raw, static_cast<NodeId>(labels.size()));
      if (fresh) labels.push_back(std::to_string(raw));
      e.nodes.push_back(it->second);
    }
    if (!times.empty()) e.time = times[i];
    edges.push_back(std::move(e));
  }
  const std::uint32_t n_nodes = static_cast<std::uint32_t>(labels.size());
  Hypergraph h(n_nodes, std::move(edges), std::move(labels));
  if (stats) {
    stats->duplicate_nodes_removed = h.stats().duplicate_nodes_removed;
    stats->empty_edges_dropped = h.stats().empty_edges_dropped;
  }
  return h;
}

void write_benson(const Hypergraph& h, const std::string& nverts_path,
                  const std::string& simplices_path,
                  const std::string& times_path) {
  std::ofstream nv(nverts_path), sx(simplices_path);
  if (!nv || !sx)
    fail(ErrorCategory::Input, "cannot open output files for writing");
  std::ofstream tm;
  if (!times_path.empty()) {
    if (!h.has_timestamps())
      fail(ErrorCategory::Input,
           "hypergraph has no timestamps; omit the times path");
    tm.open(times_path);
    if (!tm) fail(ErrorCategory::Input, "cannot open " + times_path);
  }
  for (const auto& e : h.edges()) {
    nv << e.nodes.size() << "\n";
    for (NodeId v : e.nodes) sx << h.label_of(v) << "\n";
    if (tm.is_open()) tm << *e.time << "\n";
  }
}

std::vector<PaperRecord> read_paper_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCategory::Input, "cannot open file: " + path);
  std::vector<PaperRecord> out;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      fail(ErrorCategory::Format,
           path + ":" + std::to_string(lineno) + ": bad JSON: " + e.what());
    }
    PaperRecord r;
    auto here = [&] { return path + ":" + std::to_string(lineno) + ": "; };
    if (j.contains("id")) {
      if (j["id"].is_string())
        r.id = j["id"].get<std::string>();
      else if (j["id"].is_number_integer())
        r.id = std::to_string(j["id"].get<std::int64_t>());
      else
        fail(ErrorCategory::Format, here() + "id must be string or integer");
    } else {
      r.id = "line" + std::to_string(lineno);
    }
    if (!j.contains("time"))
      fail(ErrorCategory::Format, here() + "missing time field");
    if (j["time"].is_string()) {
      std::string t = j["time"].get<std::string>();
      if (t.size() != 7 || t[4] != '-')
        fail(ErrorCategory::Format, here() + "time string must be YYYY-MM");
      try {
        int year = std::stoi(t.substr(0, 4));
        int month = std::stoi(t.substr(5, 2));
        if (month < 1 || month > 12) throw std::out_of_range(t);
        r.month = static_cast<std::int64_t>(year) * 12 + (month - 1);
        r.year = year;
      } catch (...) {
        fail(ErrorCategory::Format, here() + "time string must be YYYY-MM");
      }
    } else if (j["time"].is_number_integer()) {
      std::int64_t epoch = j["time"].get<std::int64_t>();
      // Epoch seconds; month index derived in formation.cpp's calendar.
      std::int64_t days = epoch / 86400;
      if (epoch % 86400 < 0) --days;
      std::int64_t z = days + 719468;
      std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
      std::int64_t doe = z - era * 146097;
      std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
      std::int64_t y = yoe + era * 400;
      std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
      std::int64_t mp = (5 * doy + 2) / 153;
      std::int64_t month = mp < 10 ? mp + 3 : mp - 9;
      if (month <= 2) ++y;
      r.month = y * 12 + (month - 1);
      r.year = static_cast<int>(y);
    } else {
      fail(ErrorCategory::Format, here() + "time must be YYYY-MM or epoch");
    }
    if (!j.contains("authors") || !j["authors"].is_array() ||
        j["authors"].empty())
      fail(ErrorCategory::Format, here() + "authors must be a nonempty list");
    for (const auto& a : j["authors"]) {
      if (!a.is_string())
        fail(ErrorCategory::Format, here() + "author names must be strings");
      r.authors.push_back(a.get<std::string>());
    }
    if (j.contains("abstract") && j["abstract"].is_string()) {
      r.abstract = j["abstract"].get<std::string>();
      r.has_abstract = true;
    }
    if (j.contains("citations") && j["citations"].is_number()) {
      r.citations = j["citations"].get<double>();
      r.has_citations = true;
    }
    if (j.contains("fields") && j["fields"].is_array())
      for (const auto& f : j["fields"])
        if (f.is_string()) r.fields.push_back(f.get<std::string>());
    out.push_back(std::move(r));
  }
  return out;
}

std::string normalize_author_name(const std::string& raw) {
  std::string out;
  bool pending_space = false;
  for (char ch : raw) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

AuthorGraph build_author_hypergraph(const std::vector<PaperRecord>& records) {
  std::map<std::string, NodeId> ids;
  std::map<std::string, std::string> first_spelling;
  std::uint64_t collisions = 0;
  std::vector<std::string> labels;
  std::vector<HyperEdge> edges;
  std::vector<std::uint32_t> paper_edges;
  for (const auto& r : records) {
    HyperEdge e;
    for (const auto& raw : r.authors) {
      std::string norm = normalize_author_name(raw);
      if (norm.empty()) continue;
      auto [it, fresh] = ids.try_emplace(
          norm, static_cast<NodeId>(labels.size()));
      if (fresh) {
        labels.push_back(norm);
        first_spelling[norm] = raw;
      } else if (first_spelling[norm] != raw) {
        ++collisions;
        first_spelling[norm] = raw;
      }
      e.nodes.push_back(it->second);
    }
    if (e.nodes.empty())
      fail(ErrorCategory::Input,
           "paper " + r.id + " has no usable author names");
    e.time = r.month;
    paper_edges.push_back(static_cast<std::uint32_t>(edges.size()));
    edges.push_back(std::move(e));
  }
  const std::uint32_t n_nodes = static_cast<std::uint32_t>(labels.size());
  AuthorGraph g{Hypergraph(n_nodes, std::move(edges), std::move(labels)),
                collisions, std::move(paper_edges)};
  return g;
}

void Table::add_row(std::vector<std::string> row) {
  rows.push_back(std::move(row));
}

namespace {

std::string csv_escape(const std::string& s) {
  bool need = s.find_first_of(",\"\n") != std::string::npos;
  if (!need) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

void Table::write(const std::string& path, OutFormat format) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCategory::Input, "cannot open output file: " + path);
  if (format == OutFormat::Csv) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(header[i]);
    }
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(row[i]);
      }
      out << '\n';
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < header.size() && i < row.size(); ++i)
        obj[header[i]] = row[i];
      arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace mpat
