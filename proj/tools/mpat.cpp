// Command-line surface for the m-pattern toolkit: pattern enumeration,
// analytic and Monte Carlo prevalence curves, censuses, ego sweeps,
// formation time series, cohort resampling bands and the citation
// comparison pipeline.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>

#include "mpat/census.hpp"
#include "mpat/citation.hpp"
#include "mpat/cohort.hpp"
#include "mpat/ego.hpp"
#include "mpat/error.hpp"
#include "mpat/formation.hpp"
#include "mpat/io.hpp"
#include "mpat/monte_carlo.hpp"
#include "mpat/null_model.hpp"
#include "mpat/parallel.hpp"
#include "mpat/version.hpp"

namespace {

using nlohmann::ordered_json;

struct GlobalOpts {
  std::uint64_t seed = 12345;
  int parallelism = 0;  // 0 = hardware
  std::string out_format = "csv";
  std::uint64_t budget = mpat::kDefaultBudget;

  mpat::OutFormat format() const {
    return out_format == "json" ? mpat::OutFormat::Json : mpat::OutFormat::Csv;
  }
  std::string ext() const { return out_format == "json" ? ".json" : ".csv"; }
};

struct InputOpts {
  std::string prefix;     // expands to <prefix>-nverts.txt etc.
  std::string nverts, simplices, times;
  std::string jsonl;
  std::string time_unit = "auto";  // month | epoch | auto
};

void add_input_opts(CLI::App* cmd, InputOpts& in, bool allow_jsonl = true) {
  cmd->add_option("--input", in.prefix,
                  "simplex file prefix (<prefix>-nverts.txt, "
                  "<prefix>-simplices.txt, <prefix>-times.txt)");
  cmd->add_option("--nverts", in.nverts, "simplex size file");
  cmd->add_option("--simplices", in.simplices, "simplex node file");
  cmd->add_option("--times", in.times, "simplex timestamp file");
  if (allow_jsonl)
    cmd->add_option("--jsonl", in.jsonl, "paper records (one JSON per line)");
  cmd->add_option("--time-unit", in.time_unit,
                  "timestamp unit: month | epoch | auto")
      ->check(CLI::IsMember({"month", "epoch", "auto"}));
}

struct LoadedInput {
  mpat::Hypergraph hypergraph{0, {}};
  mpat::TimeUnit unit = mpat::TimeUnit::EpochSeconds;
  std::vector<std::string> files;
  bool from_jsonl = false;
  std::vector<mpat::PaperRecord> records;  // only for jsonl inputs
  std::vector<std::uint32_t> paper_edges;
};

LoadedInput load_input(const InputOpts& in) {
  LoadedInput out;
  if (!in.jsonl.empty()) {
    out.records = mpat::read_paper_records(in.jsonl);
    auto graph = mpat::build_author_hypergraph(out.records);
    out.hypergraph = std::move(graph.hypergraph);
    out.paper_edges = std::move(graph.paper_edges);
    out.unit = mpat::TimeUnit::MonthIndex;
    out.files.push_back(in.jsonl);
    out.from_jsonl = true;
  } else {
    std::string nv = in.nverts, sx = in.simplices, tm = in.times;
    if (!in.prefix.empty()) {
      if (nv.empty()) nv = in.prefix + "-nverts.txt";
      if (sx.empty()) sx = in.prefix + "-simplices.txt";
      if (tm.empty()) {
        std::string candidate = in.prefix + "-times.txt";
        if (std::ifstream(candidate).good()) tm = candidate;
      }
    }
    if (nv.empty() || sx.empty())
      mpat::fail(mpat::ErrorCategory::Input,
                 "no input: pass --input PREFIX, --nverts/--simplices, or "
                 "--jsonl");
    out.hypergraph = mpat::parse_benson(nv, sx, tm);
    out.unit = mpat::TimeUnit::EpochSeconds;
    out.files = {nv, sx};
    if (!tm.empty()) out.files.push_back(tm);
  }
  if (in.time_unit == "month") out.unit = mpat::TimeUnit::MonthIndex;
  if (in.time_unit == "epoch") out.unit = mpat::TimeUnit::EpochSeconds;
  return out;
}

void write_manifest(const std::string& prefix, const std::string& subcommand,
                    const GlobalOpts& g, const ordered_json& params,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
  ordered_json m;
  m["tool"] = "mpat";
  m["version"] = mpat::kVersion;
  m["pattern_id_format"] = mpat::kPatternIdFormat;
  m["subcommand"] = subcommand;
  m["seed"] = g.seed;
  m["parallelism"] = g.parallelism;
  m["budget"] = g.budget;
  m["out_format"] = g.out_format;
  m["parameters"] = params;
  m["inputs"] = inputs;
  m["outputs"] = outputs;
  std::ofstream f(prefix + ".manifest.json");
  if (!f)
    mpat::fail(mpat::ErrorCategory::Input,
               "cannot write manifest for prefix: " + prefix);
  f << m.dump(2) << '\n';
}

std::vector<double> parse_grid(const std::string& spec) {
  // "log:<lo>:<hi>:<points per decade>"
  if (spec.rfind("log:", 0) != 0)
    mpat::fail(mpat::ErrorCategory::Input,
               "grid must look like log:<lo>:<hi>:<ppd>");
  std::string body = spec.substr(4);
  double lo = 0, hi = 0;
  int ppd = 0;
  std::size_t c1 = body.find(':');
  std::size_t c2 = c1 == std::string::npos ? c1 : body.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    mpat::fail(mpat::ErrorCategory::Input,
               "grid must look like log:<lo>:<hi>:<ppd>");
  try {
    lo = std::stod(body.substr(0, c1));
    hi = std::stod(body.substr(c1 + 1, c2 - c1 - 1));
    ppd = std::stoi(body.substr(c2 + 1));
  } catch (...) {
    mpat::fail(mpat::ErrorCategory::Input, "bad grid spec: " + spec);
  }
  return mpat::log_grid(lo, hi, ppd);
}

mpat::Table curve_table(const mpat::PrevalenceCurve& curve, bool monte_carlo) {
  mpat::Table t;
  t.header = {"p", "pattern_id", "pattern_name", "value", "stderr", "kind"};
  for (std::size_t g = 0; g < curve.p_grid.size(); ++g) {
    const auto& table = curve.tables[g];
    const auto& basis = table.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      t.add_row({mpat::fmt_double(curve.p_grid[g]), basis.ids()[i],
                 basis.names()[i], mpat::fmt_double(table.values[i].value),
                 monte_carlo ? mpat::fmt_double(table.values[i].stderr_) : "",
                 monte_carlo ? "monte-carlo" : "analytic"});
    }
  }
  return t;
}

// --- subcommand runners --------------------------------------------------

int run_enumerate(int m, const std::string& prefix, const GlobalOpts& g) {
  const auto& basis = mpat::PatternBasis::get(m);
  mpat::Table t;
  t.header = {"pattern_id", "name", "gamma"};
  for (std::size_t i = 0; i < basis.size(); ++i)
    t.add_row({basis.ids()[i], basis.names()[i],
               std::to_string(basis.gammas()[i])});
  if (prefix.empty()) {
    for (const auto& h : t.header) std::printf("%-28s", h.c_str());
    std::printf("\n");
    for (const auto& row : t.rows) {
      for (const auto& cell : row) std::printf("%-28s", cell.c_str());
      std::printf("\n");
    }
    return 0;
  }
  std::string out = prefix + g.ext();
  t.write(out, g.format());
  write_manifest(prefix, "enumerate", g, ordered_json{{"m", m}}, {}, {out});
  return 0;
}

int run_prevalence(std::int64_t n, int m, const std::string& grid_spec,
                   bool labelled, const std::string& prefix,
                   const GlobalOpts& g) {
  auto grid = parse_grid(grid_spec);
  auto curve = mpat::analytic_curve(n, m, grid, labelled);
  std::string out = prefix + g.ext();
  curve_table(curve, false).write(out, g.format());
  write_manifest(prefix, "prevalence", g,
                 ordered_json{{"N", n},
                              {"m", m},
                              {"grid", grid_spec},
                              {"labelled", labelled}},
                 {}, {out});
  return 0;
}

int run_simulate(std::int64_t n, int m, const std::string& grid_spec,
                 int replicates, const std::string& prefix,
                 const GlobalOpts& g) {
  auto grid = parse_grid(grid_spec);
  auto curve = mpat::mc_curve(n, m, grid, replicates, g.seed, g.parallelism,
                              g.budget);
  std::string out = prefix + g.ext();
  curve_table(curve, true).write(out, g.format());
  write_manifest(prefix, "simulate", g,
                 ordered_json{{"N", n},
                              {"m", m},
                              {"grid", grid_spec},
                              {"replicates", replicates}},
                 {}, {out});
  return 0;
}

int run_census(const InputOpts& in, int m, std::uint64_t samples,
               const std::string& prefix, const GlobalOpts& g) {
  LoadedInput input = load_input(in);
  mpat::PatternCensus census =
      samples == 0
          ? mpat::census_all(input.hypergraph, m, g.budget,
                             mpat::resolve_workers(g.parallelism))
          : mpat::census_sampled(input.hypergraph, m, samples, g.seed,
                                 mpat::resolve_workers(g.parallelism));
  mpat::Table t;
  t.header = {"pattern_id", "pattern_name", "count", "frequency"};
  for (const auto& [id, count] : census.counts) {
    t.add_row({id, mpat::pattern_name(mpat::pattern_from_id(id)),
               std::to_string(count),
               mpat::fmt_double(census.total
                                    ? static_cast<double>(count) /
                                          static_cast<double>(census.total)
                                    : 0.0)});
  }
  std::string out = prefix + g.ext();
  t.write(out, g.format());
  write_manifest(
      prefix, "census", g,
      ordered_json{{"m", m},
                   {"samples", samples},
                   {"mode", samples == 0 ? "exhaustive" : "sampled"},
                   {"total", census.total},
                   {"N", input.hypergraph.num_nodes()},
                   {"edges", input.hypergraph.edges().size()}},
      input.files, {out});
  return 0;
}

int run_ego(const InputOpts& in, int m, std::uint32_t size_min,
            std::uint32_t size_max, bool include_ego_edges,
            int bins_per_decade, const std::string& prefix,
            const GlobalOpts& g) {
  LoadedInput input = load_input(in);
  auto egos = mpat::sweep_egos(input.hypergraph, m, size_min, size_max,
                               include_ego_edges,
                               mpat::resolve_workers(g.parallelism));
  const auto& basis = mpat::PatternBasis::get(m);

  mpat::Table per_ego;
  per_ego.header = {"ego", "label", "N_e", "p_e"};
  for (const auto& name : basis.names()) per_ego.header.push_back("freq:" + name);
  for (const auto& ego : egos) {
    std::vector<std::string> row = {
        std::to_string(ego.ego), input.hypergraph.label_of(ego.ego),
        std::to_string(ego.n_e), mpat::fmt_double(ego.p_e)};
    for (std::size_t i = 0; i < basis.size(); ++i)
      row.push_back(mpat::fmt_double(
          ego.census.total == 0
              ? 0.0
              : static_cast<double>(ego.census.counts[i].second) /
                    static_cast<double>(ego.census.total)));
    per_ego.add_row(std::move(row));
  }

  // Rolling averages of data and model point clouds (egos with p_e = 0
  // cannot sit on a log axis and are skipped).
  auto model = mpat::model_counterpart(egos, m);
  mpat::Table binned;
  binned.header = {"series",       "segment", "center", "pattern_id",
                   "pattern_name", "mean",    "count"};
  std::uint64_t skipped = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<std::pair<double, double>> data_pts, model_pts;
    for (std::size_t e = 0; e < egos.size(); ++e) {
      if (!(egos[e].p_e > 0.0)) {
        if (i == 0) ++skipped;
        continue;
      }
      double f = egos[e].census.total == 0
                     ? 0.0
                     : static_cast<double>(egos[e].census.counts[i].second) /
                           static_cast<double>(egos[e].census.total);
      data_pts.emplace_back(egos[e].p_e, f);
      model_pts.emplace_back(egos[e].p_e, model[e].values[i].value);
    }
    auto emit = [&](const char* series, const mpat::BinnedCurve& c) {
      for (std::size_t s = 0; s < c.segment.size(); ++s)
        binned.add_row({series, std::to_string(c.segment[s]),
                        mpat::fmt_double(c.center[s]), basis.ids()[i],
                        basis.names()[i], mpat::fmt_double(c.mean[s]),
                        std::to_string(c.count[s])});
    };
    if (!data_pts.empty()) {
      emit("data", mpat::rolling_average(data_pts, bins_per_decade));
      emit("model", mpat::rolling_average(model_pts, bins_per_decade));
    }
  }

  auto delta = mpat::dataset_delta(egos, m);
  mpat::Table dt;
  dt.header = {"pattern_id", "pattern_name", "p_data", "p_model", "delta_f",
               "finite"};
  for (std::size_t i = 0; i < basis.size(); ++i)
    dt.add_row({basis.ids()[i], basis.names()[i],
                mpat::fmt_double(delta.p_data[i]),
                mpat::fmt_double(delta.p_model[i]),
                mpat::fmt_double(delta.delta[i].value),
                delta.delta[i].finite ? "true" : "false"});

  std::string f1 = prefix + ".egos" + g.ext();
  std::string f2 = prefix + ".binned" + g.ext();
  std::string f3 = prefix + ".delta" + g.ext();
  per_ego.write(f1, g.format());
  binned.write(f2, g.format());
  dt.write(f3, g.format());
  write_manifest(prefix, "ego", g,
                 ordered_json{{"m", m},
                              {"size_min", size_min},
                              {"size_max", size_max},
                              {"include_ego_edges", include_ego_edges},
                              {"bins_per_decade", bins_per_decade},
                              {"egos", egos.size()},
                              {"egos_skipped_zero_density", skipped}},
                 input.files, {f1, f2, f3});
  return 0;
}

int run_formation(const InputOpts& in, int m, const std::string& prefix,
                  const GlobalOpts& g) {
  LoadedInput input = load_input(in);
  auto events = mpat::formation_patterns(input.hypergraph, m);

  // Attach covid flags when abstracts are available.
  if (input.from_jsonl) {
    std::vector<bool> covid(input.hypergraph.edges().size(), false);
    for (std::size_t r = 0; r < input.records.size(); ++r)
      if (input.records[r].has_abstract)
        covid[input.paper_edges[r]] =
            mpat::covid_flag(input.records[r].abstract);
    for (auto& ev : events) ev.flags["covid"] = covid[ev.edge_index];
  }

  mpat::Table et;
  et.header = {"time", "month", "pattern_id", "pattern_name", "nodes",
               "covid"};
  for (const auto& ev : events) {
    std::string nodes;
    for (std::size_t i = 0; i < ev.nodes.size(); ++i) {
      if (i) nodes += '|';
      nodes += input.hypergraph.label_of(ev.nodes[i]);
    }
    auto cov = ev.flags.find("covid");
    et.add_row({std::to_string(ev.time),
                mpat::month_string(mpat::month_of(ev.time, input.unit)),
                ev.pattern,
                mpat::pattern_name(mpat::pattern_from_id(ev.pattern)), nodes,
                cov == ev.flags.end() ? "" : (cov->second ? "true" : "false")});
  }

  std::vector<mpat::PatternId> universe;
  if (m <= 5) {
    universe = mpat::PatternBasis::get(m).ids();
  } else {
    std::set<mpat::PatternId> seen;
    for (const auto& ev : events) seen.insert(ev.pattern);
    universe.assign(seen.begin(), seen.end());
  }
  auto monthly = mpat::monthly_frequencies(events, universe, input.unit);
  mpat::Table mt;
  mt.header = {"month", "pattern_id", "pattern_name", "count", "total",
               "frequency"};
  for (const auto& row : monthly.rows)
    for (std::size_t i = 0; i < universe.size(); ++i)
      mt.add_row({mpat::month_string(row.month), universe[i],
                  mpat::pattern_name(mpat::pattern_from_id(universe[i])),
                  std::to_string(row.counts[i]), std::to_string(row.total),
                  mpat::fmt_double(static_cast<double>(row.counts[i]) /
                                   static_cast<double>(row.total))});

  std::string f1 = prefix + ".events" + g.ext();
  std::string f2 = prefix + ".monthly" + g.ext();
  et.write(f1, g.format());
  mt.write(f2, g.format());
  write_manifest(prefix, "formation", g,
                 ordered_json{{"m", m}, {"events", events.size()}},
                 input.files, {f1, f2});
  return 0;
}

int run_cohort(const InputOpts& in, int m, std::uint64_t replicates,
               bool with_replacement, const std::string& prefix,
               const GlobalOpts& g) {
  LoadedInput input = load_input(in);
  if (!input.from_jsonl)
    mpat::fail(mpat::ErrorCategory::Input,
               "cohort requires --jsonl records with abstracts");
  auto events = mpat::formation_patterns(input.hypergraph, m);
  std::vector<int> event_of_edge(input.hypergraph.edges().size(), -1);
  for (std::size_t i = 0; i < events.size(); ++i)
    event_of_edge[events[i].edge_index] = static_cast<int>(i);

  std::vector<mpat::CohortRecord> records;
  for (std::size_t r = 0; r < input.records.size(); ++r) {
    int ev = event_of_edge[input.paper_edges[r]];
    if (ev < 0) continue;  // paper is not an m-author paper
    mpat::CohortRecord rec;
    rec.paper_id = input.records[r].id;
    rec.month = input.records[r].month;
    rec.pattern_index = events[ev].pattern_index;
    rec.covid = input.records[r].has_abstract &&
                mpat::covid_flag(input.records[r].abstract);
    records.push_back(std::move(rec));
  }
  auto band = mpat::resample_band(records, m, replicates, g.seed,
                                  with_replacement,
                                  mpat::resolve_workers(g.parallelism));
  const auto& basis = mpat::PatternBasis::get(m);
  mpat::Table t;
  t.header = {"pattern_id", "pattern_name", "mean", "p2_5", "p97_5",
              "observed", "significant"};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& e = band.entries[i];
    t.add_row({basis.ids()[i], basis.names()[i], mpat::fmt_double(e.mean),
               mpat::fmt_double(e.p2_5), mpat::fmt_double(e.p97_5),
               mpat::fmt_double(e.observed),
               e.significant ? "true" : "false"});
  }
  std::string out = prefix + g.ext();
  t.write(out, g.format());
  write_manifest(prefix, "cohort", g,
                 ordered_json{{"m", m},
                              {"replicates", replicates},
                              {"with_replacement", with_replacement},
                              {"records", records.size()},
                              {"cohort_size", band.cohort_size}},
                 input.files, {out});
  return 0;
}

int run_cite(const InputOpts& in, int m, const std::string& class1_spec,
             const std::string& class2_spec, const std::string& field,
             bool as_of_publication, const std::string& prefix,
             const GlobalOpts& g) {
  LoadedInput input = load_input(in);
  if (!input.from_jsonl)
    mpat::fail(mpat::ErrorCategory::Input, "cite requires --jsonl records");
  std::vector<mpat::PaperRecord> records = std::move(input.records);

  // Optional field filter (case-insensitive exact match on any field tag).
  if (!field.empty()) {
    std::string want = mpat::normalize_author_name(field);
    std::vector<mpat::PaperRecord> kept;
    for (auto& r : records)
      for (const auto& f : r.fields)
        if (mpat::normalize_author_name(f) == want) {
          kept.push_back(std::move(r));
          break;
        }
    records = std::move(kept);
  }
  auto graph = mpat::build_author_hypergraph(records);
  auto events = mpat::formation_patterns(graph.hypergraph, m);
  std::vector<int> event_of_edge(graph.hypergraph.edges().size(), -1);
  for (std::size_t i = 0; i < events.size(); ++i)
    event_of_edge[events[i].edge_index] = static_cast<int>(i);

  // Author statistics. Snapshot mode uses the full corpus; as-of-publication
  // restricts each paper's author statistics to strictly earlier papers.
  struct AuthorStat {
    double pubs = 0, cites = 0;
    int first_year = 0;
    bool any = false;
  };
  int snapshot_year = 0;
  for (const auto& r : records) snapshot_year = std::max(snapshot_year, r.year);

  std::vector<mpat::CitePaper> papers;
  const std::uint32_t n_authors = graph.hypergraph.num_nodes();
  std::vector<AuthorStat> snap(n_authors);
  if (!as_of_publication) {
    for (std::size_t r = 0; r < records.size(); ++r) {
      for (mpat::NodeId v :
           graph.hypergraph.edges()[graph.paper_edges[r]].nodes) {
        auto& s = snap[v];
        s.pubs += 1;
        if (records[r].has_citations) s.cites += records[r].citations;
        if (!s.any || records[r].year < s.first_year)
          s.first_year = records[r].year;
        s.any = true;
      }
    }
  }

  // Order papers by month for the as-of-publication sweep.
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return records[a].month < records[b].month;
                   });
  std::vector<AuthorStat> running(as_of_publication ? n_authors : 0);
  std::size_t admitted = 0;
  std::int64_t admitted_month = std::numeric_limits<std::int64_t>::min();

  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    std::size_t r = order[oi];
    const auto& rec = records[r];
    if (as_of_publication) {
      // Admit all papers with month strictly before this one.
      while (admitted < oi) {
        std::size_t pr = order[admitted];
        if (records[pr].month >= rec.month) break;
        for (mpat::NodeId v :
             graph.hypergraph.edges()[graph.paper_edges[pr]].nodes) {
          auto& s = running[v];
          s.pubs += 1;
          if (records[pr].has_citations) s.cites += records[pr].citations;
          if (!s.any || records[pr].year < s.first_year)
            s.first_year = records[pr].year;
          s.any = true;
        }
        ++admitted;
      }
      admitted_month = rec.month;
    }
    (void)admitted_month;
    int ev = event_of_edge[graph.paper_edges[r]];
    if (ev < 0) continue;
    if (!rec.has_citations) continue;
    const auto& nodes = graph.hypergraph.edges()[graph.paper_edges[r]].nodes;
    const auto& stats = as_of_publication ? running : snap;
    mpat::PaperFeatures f;
    int ref_year = as_of_publication ? rec.year : snapshot_year;
    f.age = static_cast<double>(snapshot_year - rec.year);
    for (mpat::NodeId v : nodes) {
      const auto& s = stats[v];
      f.mean_author_citations += s.cites;
      f.mean_author_publications += s.pubs;
      f.mean_career_length +=
          s.any ? static_cast<double>(ref_year - s.first_year) : 0.0;
    }
    f.mean_author_citations /= static_cast<double>(nodes.size());
    f.mean_author_publications /= static_cast<double>(nodes.size());
    f.mean_career_length /= static_cast<double>(nodes.size());
    mpat::CitePaper paper;
    paper.id = rec.id;
    paper.year = rec.year;
    paper.features = f;
    paper.citations = rec.citations;
    paper.pattern_index = events[ev].pattern_index;
    papers.push_back(std::move(paper));
  }

  auto parse_classes = [&](const std::string& spec,
                           std::vector<int> fallback) -> std::vector<int> {
    if (spec.empty()) return fallback;
    const auto& basis = mpat::PatternBasis::get(m);
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      std::size_t end = spec.find(',', pos);
      if (end == std::string::npos) end = spec.size();
      std::string name = spec.substr(pos, end - pos);
      if (!name.empty())
        out.push_back(basis.index_of(
            mpat::pattern_id(mpat::parse_name(name, m))));
      pos = end + 1;
    }
    if (out.empty())
      mpat::fail(mpat::ErrorCategory::Input, "empty pattern class: " + spec);
    return out;
  };
  std::vector<int> class1 =
      parse_classes(class1_spec, mpat::default_first_time_classes(m));
  std::vector<int> class2 =
      parse_classes(class2_spec, mpat::default_repeat_classes(m));

  auto cmp = mpat::compare_structures(papers, class1, class2, g.seed);

  const auto& basis = mpat::PatternBasis::get(m);
  auto class_names = [&](const std::vector<int>& cls) {
    std::string s;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i) s += '+';
      s += basis.names()[cls[i]];
    }
    return s;
  };
  mpat::Table t;
  t.header = {"field", "team_size", "mu1", "sigma1", "mu2", "sigma2", "z",
              "n_test1", "n_test2"};
  t.add_row({field.empty() ? "all" : field, std::to_string(m),
             mpat::fmt_double(cmp.group1.mu), mpat::fmt_double(cmp.group1.sigma_mu),
             mpat::fmt_double(cmp.group2.mu), mpat::fmt_double(cmp.group2.sigma_mu),
             mpat::fmt_double(cmp.z), std::to_string(cmp.n_test1),
             std::to_string(cmp.n_test2)});
  std::string f1 = prefix + g.ext();
  std::string f2 = prefix + ".report.json";
  t.write(f1, g.format());

  ordered_json report;
  report["field"] = field.empty() ? "all" : field;
  report["team_size"] = m;
  report["class1"] = class_names(class1);
  report["class2"] = class_names(class2);
  report["seed"] = cmp.seed;
  report["as_of_publication"] = as_of_publication;
  report["n_selected"] = {cmp.n_selected1, cmp.n_selected2};
  report["n_balanced_per_side"] = cmp.n_balanced;
  report["n_train"] = cmp.n_train;
  report["n_test"] = {cmp.n_test1, cmp.n_test2};
  report["n_excluded_zero_citations"] = {cmp.group1.n_excluded,
                                         cmp.group2.n_excluded};
  report["mu1"] = cmp.group1.mu;
  report["sigma_mu1"] = cmp.group1.sigma_mu;
  report["mu2"] = cmp.group2.mu;
  report["sigma_mu2"] = cmp.group2.sigma_mu;
  report["z"] = cmp.z;
  report["author_name_collisions"] = graph.name_collisions;
  std::ofstream rf(f2);
  rf << report.dump(2) << '\n';

  write_manifest(prefix, "cite", g,
                 ordered_json{{"m", m},
                              {"field", field.empty() ? "all" : field},
                              {"class1", class_names(class1)},
                              {"class2", class_names(class2)},
                              {"as_of_publication", as_of_publication},
                              {"papers", papers.size()}},
                 input.files, {f1, f2});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"m-pattern census and null-model toolkit for hypergraphs"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed for all randomized steps");
  app.add_option("--parallelism", g.parallelism,
                 "worker threads (0 = hardware)");
  app.add_option("--out-format", g.out_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--budget", g.budget,
                 "work budget (subsets / candidate edges)");

  // enumerate
  int en_m = 3;
  std::string en_out;
  auto* en = app.add_subcommand("enumerate", "list all m-patterns");
  en->fallthrough();
  en->add_option("-m", en_m, "pattern size")->required();
  en->add_option("-o,--out", en_out, "output prefix (stdout when omitted)");

  // prevalence
  std::int64_t pv_n = 50;
  int pv_m = 3;
  std::string pv_grid = "log:1e-5:1:25", pv_out = "prevalence";
  bool pv_labelled = false;
  auto* pv = app.add_subcommand("prevalence", "analytic prevalence curves");
  pv->fallthrough();
  pv->add_option("-N", pv_n, "node count")->required();
  pv->add_option("-m", pv_m, "pattern size")->required();
  pv->add_option("--grid", pv_grid, "log:<lo>:<hi>:<points per decade>");
  pv->add_flag("--labelled", pv_labelled, "labelled prevalence (gamma = 1)");
  pv->add_option("-o,--out", pv_out, "output prefix");

  // simulate
  std::int64_t sm_n = 50;
  int sm_m = 3, sm_reps = 100;
  std::string sm_grid = "log:1e-5:1:25", sm_out = "simulate";
  auto* sm = app.add_subcommand("simulate", "Monte Carlo prevalence curves");
  sm->fallthrough();
  sm->add_option("-N", sm_n, "node count")->required();
  sm->add_option("-m", sm_m, "pattern size")->required();
  sm->add_option("--grid", sm_grid, "log:<lo>:<hi>:<points per decade>");
  sm->add_option("--replicates", sm_reps, "independent draws per grid point");
  sm->add_option("-o,--out", sm_out, "output prefix");

  // census
  InputOpts cs_in;
  int cs_m = 3;
  std::uint64_t cs_samples = 0;
  std::string cs_out = "census";
  auto* cs = app.add_subcommand("census", "m-pattern census of a hypergraph");
  cs->fallthrough();
  add_input_opts(cs, cs_in);
  cs->add_option("-m", cs_m, "pattern size")->required();
  cs->add_option("--samples", cs_samples,
                 "sampled census size (0 = exhaustive)");
  cs->add_option("-o,--out", cs_out, "output prefix");

  // ego
  InputOpts eg_in;
  int eg_m = 3, eg_bins = 10;
  std::uint32_t eg_min = 10, eg_max = 50;
  bool eg_include = false;
  std::string eg_out = "ego";
  auto* eg = app.add_subcommand(
      "ego", "ego sweep, rolling averages and data-vs-model deltas");
  eg->fallthrough();
  add_input_opts(eg, eg_in);
  eg->add_option("-m", eg_m, "pattern size")->required();
  eg->add_option("--size-min", eg_min, "minimum ego size");
  eg->add_option("--size-max", eg_max, "maximum ego size");
  eg->add_flag("--include-ego-edges", eg_include,
               "keep restrictions of edges containing the ego");
  eg->add_option("--bins-per-decade", eg_bins, "rolling average bins");
  eg->add_option("-o,--out", eg_out, "output prefix");

  // formation
  InputOpts fm_in;
  int fm_m = 2;
  std::string fm_out = "formation";
  auto* fm = app.add_subcommand(
      "formation", "history patterns of new edges in a temporal hypergraph");
  fm->fallthrough();
  add_input_opts(fm, fm_in);
  fm->add_option("-m", fm_m, "team size")->required();
  fm->add_option("-o,--out", fm_out, "output prefix");

  // cohort
  InputOpts ch_in;
  int ch_m = 2;
  std::uint64_t ch_reps = 10000;
  bool ch_with_replacement = false;
  std::string ch_out = "cohort";
  auto* ch = app.add_subcommand(
      "cohort", "flagged-cohort resampling bands (stratified by month)");
  ch->fallthrough();
  add_input_opts(ch, ch_in);
  ch->add_option("-m", ch_m, "team size")->required();
  ch->add_option("--replicates", ch_reps, "resampling replicates");
  ch->add_flag("--with-replacement", ch_with_replacement,
               "draw with replacement inside each month");
  ch->add_option("-o,--out", ch_out, "output prefix");

  // cite
  InputOpts ct_in;
  int ct_m = 2;
  std::string ct_class1, ct_class2, ct_field, ct_out = "cite";
  bool ct_asof = false;
  auto* ct = app.add_subcommand(
      "cite", "citation performance comparison of collaboration structures");
  ct->fallthrough();
  add_input_opts(ct, ct_in);
  ct->add_option("-m", ct_m, "team size (2 or 3)")->required();
  ct->add_option("--class1", ct_class1,
                 "comma-separated pattern names (default: first-time "
                 "collaborations without first-time authors)");
  ct->add_option("--class2", ct_class2,
                 "comma-separated pattern names (default: repeat "
                 "collaboration)");
  ct->add_option("--field", ct_field, "keep only papers tagged with field");
  ct->add_flag("--as-of-publication", ct_asof,
               "author statistics from strictly earlier papers only");
  ct->add_option("-o,--out", ct_out, "output prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (en->parsed()) return run_enumerate(en_m, en_out, g);
    if (pv->parsed())
      return run_prevalence(pv_n, pv_m, pv_grid, pv_labelled, pv_out, g);
    if (sm->parsed())
      return run_simulate(sm_n, sm_m, sm_grid, sm_reps, sm_out, g);
    if (cs->parsed()) return run_census(cs_in, cs_m, cs_samples, cs_out, g);
    if (eg->parsed())
      return run_ego(eg_in, eg_m, eg_min, eg_max, eg_include, eg_bins, eg_out,
                     g);
    if (fm->parsed()) return run_formation(fm_in, fm_m, fm_out, g);
    if (ch->parsed())
      return run_cohort(ch_in, ch_m, ch_reps, ch_with_replacement, ch_out, g);
    if (ct->parsed())
      return run_cite(ct_in, ct_m, ct_class1, ct_class2, ct_field, ct_asof,
                      ct_out, g);
  } catch (const mpat::Error& e) {
    nlohmann::json err;
    err["error"] = mpat::to_string(e.category());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return e.category() == mpat::ErrorCategory::Capacity ? 2 : 1;
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = "internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
