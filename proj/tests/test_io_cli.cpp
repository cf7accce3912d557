#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mpat/cohort.hpp"
#include "mpat/error.hpp"
#include "mpat/formation.hpp"
#include "mpat/io.hpp"

using namespace mpat;
namespace fs = std::filesystem;

#ifndef MPAT_FIXTURE_DIR
#define MPAT_FIXTURE_DIR "tests/fixtures"
#endif
#ifndef MPAT_GOLDEN_DIR
#define MPAT_GOLDEN_DIR "tests/golden"
#endif
#ifndef MPAT_CLI_PATH
#define MPAT_CLI_PATH "./mpat"
#endif

namespace {

std::string fixture(const std::string& name) {
  return std::string(MPAT_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_lines(const std::string& path,
                 const std::vector<std::string>& lines) {
  std::ofstream out(path);
  for (const auto& l : lines) out << l << "\n";
}

}  // namespace

TEST_CASE("parse_benson remaps ids densely in first-appearance order") {
  fs::create_directories("io_tmp");
  write_lines("io_tmp/a-nverts.txt", {"2", "3"});
  write_lines("io_tmp/a-simplices.txt", {"7", "9", "7", "8", "11"});
  write_lines("io_tmp/a-times.txt", {"100", "200"});
  Hypergraph h = parse_benson("io_tmp/a-nverts.txt", "io_tmp/a-simplices.txt",
                              "io_tmp/a-times.txt");
  CHECK(h.num_nodes() == 4);
  REQUIRE(h.edges().size() == 2);
  CHECK(h.edges()[0].nodes == std::vector<NodeId>({0, 1}));
  CHECK(*h.edges()[0].time == 100);
  CHECK(h.edges()[1].nodes == std::vector<NodeId>({0, 2, 3}));
  CHECK(*h.edges()[1].time == 200);
  CHECK(h.node_labels() ==
        std::vector<std::string>({"7", "9", "8", "11"}));

  // empty files -> empty hypergraph
  write_lines("io_tmp/e-nverts.txt", {});
  write_lines("io_tmp/e-simplices.txt", {});
  Hypergraph he = parse_benson("io_tmp/e-nverts.txt", "io_tmp/e-simplices.txt");
  CHECK(he.num_nodes() == 0);
  CHECK(he.edges().empty());

  // count mismatch and parse failures carry line info
  write_lines("io_tmp/b-nverts.txt", {"2", "2"});
  write_lines("io_tmp/b-simplices.txt", {"1", "2", "3"});
  CHECK_THROWS_AS(
      parse_benson("io_tmp/b-nverts.txt", "io_tmp/b-simplices.txt"), Error);
  write_lines("io_tmp/c-nverts.txt", {"x"});
  CHECK_THROWS_AS(
      parse_benson("io_tmp/c-nverts.txt", "io_tmp/b-simplices.txt"), Error);
  CHECK_THROWS_AS(parse_benson("io_tmp/missing.txt", "io_tmp/b-simplices.txt"),
                  Error);
}

TEST_CASE("benson round-trip preserves the hypergraph") {
  Hypergraph h = parse_benson(fixture("formation-nverts.txt"),
                              fixture("formation-simplices.txt"),
                              fixture("formation-times.txt"));
  fs::create_directories("io_tmp");
  write_benson(h, "io_tmp/rt-nverts.txt", "io_tmp/rt-simplices.txt",
               "io_tmp/rt-times.txt");
  Hypergraph back = parse_benson("io_tmp/rt-nverts.txt",
                                 "io_tmp/rt-simplices.txt",
                                 "io_tmp/rt-times.txt");
  REQUIRE(back.edges().size() == h.edges().size());
  for (std::size_t i = 0; i < h.edges().size(); ++i) {
    CHECK(back.edges()[i].nodes == h.edges()[i].nodes);
    CHECK(*back.edges()[i].time == *h.edges()[i].time);
  }
  CHECK(back.node_labels() == h.node_labels());
}

TEST_CASE("author name normalization") {
  CHECK(normalize_author_name("  Ada   Lovelace ") == "ada lovelace");
  CHECK(normalize_author_name("ADA LOVELACE") == "ada lovelace");
  CHECK(normalize_author_name("") == "");
}

TEST_CASE("paper records parse and flag correctly") {
  auto records = read_paper_records(fixture("cohort.jsonl"));
  REQUIRE(records.size() == 15);
  CHECK(records[0].id == "h1");
  CHECK(records[0].month == 2019 * 12 + 0);
  CHECK(records[0].year == 2019);
  CHECK(records[0].authors == std::vector<std::string>({"Ada"}));
  CHECK(records[5].id == "p1");
  CHECK(covid_flag(records[5].abstract));
  CHECK_FALSE(covid_flag(records[6].abstract));

  fs::create_directories("io_tmp");
  write_lines("io_tmp/bad1.jsonl", {R"({"id":"x","time":"2020-13","authors":["a"]})"});
  CHECK_THROWS_AS(read_paper_records("io_tmp/bad1.jsonl"), Error);
  write_lines("io_tmp/bad2.jsonl", {R"({"id":"x","time":"2020-01","authors":[]})"});
  CHECK_THROWS_AS(read_paper_records("io_tmp/bad2.jsonl"), Error);
  write_lines("io_tmp/bad3.jsonl", {"not json"});
  CHECK_THROWS_AS(read_paper_records("io_tmp/bad3.jsonl"), Error);
}

TEST_CASE("cohort fixture formation patterns match the hand derivation") {
  auto records = read_paper_records(fixture("cohort.jsonl"));
  auto graph = build_author_hypergraph(records);
  auto events = formation_patterns(graph.hypergraph, 2);

  // record id -> expected pattern name for every 2-author paper
  std::vector<std::pair<std::string, std::string>> expected = {
      {"h3", "2^0-1^0"}, {"p1", "2^0-1^2"}, {"p2", "2^1-1^0"},
      {"p3", "2^0-1^2"}, {"p4", "2^1-1^0"}, {"p5", "2^0-1^1"},
      {"p6", "2^0-1^1"}, {"p7", "2^1-1^0"}, {"p8", "2^1-1^0"},
      {"p9", "2^0-1^2"}, {"p10", "2^1-1^0"},
  };
  REQUIRE(events.size() == expected.size());
  std::map<std::uint32_t, std::string> edge_to_id;
  for (std::size_t r = 0; r < records.size(); ++r)
    edge_to_id[graph.paper_edges[r]] = records[r].id;
  std::map<std::string, std::string> got;
  for (const auto& ev : events)
    got[edge_to_id[ev.edge_index]] =
        pattern_name(pattern_from_id(ev.pattern));
  for (const auto& [id, name] : expected) CHECK(got[id] == name);

  // observed covid frequencies: repeat 3/5, veterans-never-together 2/5
  std::vector<CohortRecord> cohort;
  std::map<std::uint32_t, int> event_of_edge;
  for (std::size_t i = 0; i < events.size(); ++i)
    event_of_edge[events[i].edge_index] = static_cast<int>(i);
  for (std::size_t r = 0; r < records.size(); ++r) {
    auto it = event_of_edge.find(graph.paper_edges[r]);
    if (it == event_of_edge.end()) continue;
    cohort.push_back({records[r].id, records[r].month,
                      events[it->second].pattern_index,
                      covid_flag(records[r].abstract)});
  }
  auto band = resample_band(cohort, 2, 400, 7);
  const auto& basis = PatternBasis::get(2);
  CHECK(band.cohort_size == 5);
  CHECK(band.entries[basis.repeat_index()].observed == doctest::Approx(0.6));
  int veterans = basis.index_of(pattern_id(parse_name("2^0-1^2", 2)));
  CHECK(band.entries[veterans].observed == doctest::Approx(0.4));
}

// --- CLI golden runs ------------------------------------------------------

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(MPAT_CLI_PATH) + " " + args + " > /dev/null";
  return std::system(cmd.c_str());
}

void compare_or_regen(const std::string& produced, const std::string& name) {
  std::string golden = std::string(MPAT_GOLDEN_DIR) + "/" + name;
  if (std::getenv("MPAT_REGEN_GOLDEN")) {
    fs::create_directories(MPAT_GOLDEN_DIR);
    fs::copy_file(produced, golden, fs::copy_options::overwrite_existing);
    return;
  }
  CHECK_MESSAGE(slurp(produced) == slurp(golden), "mismatch vs " << golden);
}

}  // namespace

TEST_CASE("cli pipelines reproduce the committed golden outputs") {
  fs::create_directories("cli_out");
  std::string fx = MPAT_FIXTURE_DIR;

  REQUIRE(run_cli("enumerate -m 3 -o cli_out/enum3") == 0);
  compare_or_regen("cli_out/enum3.csv", "enum3.csv");
  compare_or_regen("cli_out/enum3.manifest.json", "enum3.manifest.json");

  REQUIRE(run_cli("prevalence -m 3 -N 50 --grid log:1e-4:1e-1:5 "
                  "-o cli_out/prev") == 0);
  compare_or_regen("cli_out/prev.csv", "prev.csv");

  REQUIRE(run_cli("--seed 2718 simulate -m 3 -N 30 --grid log:1e-3:1e-2:4 "
                  "--replicates 20 -o cli_out/sim") == 0);
  compare_or_regen("cli_out/sim.csv", "sim.csv");

  REQUIRE(run_cli("census --input " + fx + "/census -m 3 -o cli_out/census") ==
          0);
  compare_or_regen("cli_out/census.csv", "census.csv");

  REQUIRE(run_cli("formation --input " + fx +
                  "/formation --time-unit month -m 2 -o cli_out/form") == 0);
  compare_or_regen("cli_out/form.events.csv", "form.events.csv");
  compare_or_regen("cli_out/form.monthly.csv", "form.monthly.csv");

  REQUIRE(run_cli("--seed 99 cohort --jsonl " + fx +
                  "/cohort.jsonl -m 2 --replicates 400 -o cli_out/cohort") ==
          0);
  compare_or_regen("cli_out/cohort.csv", "cohort.csv");

  REQUIRE(run_cli("--seed 4242 cite --jsonl " + fx +
                  "/cite.jsonl -m 2 -o cli_out/cite") == 0);
  compare_or_regen("cli_out/cite.csv", "cite.csv");
  compare_or_regen("cli_out/cite.report.json", "cite.report.json");

  // a tiny ego sweep over a synthetic input
  REQUIRE(run_cli("ego --input " + fx +
                  "/census -m 3 --size-min 1 --size-max 50 -o cli_out/ego") ==
          0);
  compare_or_regen("cli_out/ego.egos.csv", "ego.egos.csv");
  compare_or_regen("cli_out/ego.binned.csv", "ego.binned.csv");
  compare_or_regen("cli_out/ego.delta.csv", "ego.delta.csv");

  // an ego sweep with nonzero densities exercises the binned curves
  REQUIRE(run_cli("ego --input " + fx +
                  "/egograph -m 3 --size-min 10 --size-max 50 "
                  "-o cli_out/ego_dense") == 0);
  compare_or_regen("cli_out/ego_dense.egos.csv", "ego_dense.egos.csv");
  compare_or_regen("cli_out/ego_dense.binned.csv", "ego_dense.binned.csv");
  compare_or_regen("cli_out/ego_dense.delta.csv", "ego_dense.delta.csv");

  // labelled analytic curves
  REQUIRE(run_cli("prevalence -m 4 -N 100 --grid log:1e-3:1e-2:3 --labelled "
                  "-o cli_out/prev_lab") == 0);
  compare_or_regen("cli_out/prev_lab.csv", "prev_lab.csv");

  // sampled census
  REQUIRE(run_cli("--seed 7 census --input " + fx +
                  "/census -m 3 --samples 800 -o cli_out/census_s") == 0);
  compare_or_regen("cli_out/census_s.csv", "census_s.csv");

  // json output format
  REQUIRE(run_cli("--out-format json enumerate -m 2 -o cli_out/enum2") == 0);
  compare_or_regen("cli_out/enum2.json", "enum2.json");

  // formation from paper records
  REQUIRE(run_cli("formation --jsonl " + fx +
                  "/cohort.jsonl -m 2 -o cli_out/form_j") == 0);
  compare_or_regen("cli_out/form_j.events.csv", "form_j.events.csv");

  // author statistics reconstructed as of publication
  REQUIRE(run_cli("--seed 4242 cite --jsonl " + fx +
                  "/cite.jsonl -m 2 --as-of-publication -o cli_out/cite_asof") ==
          0);
  compare_or_regen("cli_out/cite_asof.report.json", "cite_asof.report.json");
}

TEST_CASE("cli reruns are byte-identical") {
  fs::create_directories("cli_out");
  std::string fx = MPAT_FIXTURE_DIR;
  REQUIRE(run_cli("--seed 99 cohort --jsonl " + fx +
                  "/cohort.jsonl -m 2 --replicates 400 -o cli_out/cohort_b") ==
          0);
  CHECK(slurp("cli_out/cohort_b.csv") == slurp("cli_out/cohort.csv"));
  REQUIRE(run_cli("--seed 2718 simulate -m 3 -N 30 --grid log:1e-3:1e-2:4 "
                  "--replicates 20 --parallelism 3 -o cli_out/sim_b") == 0);
  CHECK(slurp("cli_out/sim_b.csv") == slurp("cli_out/sim.csv"));
}

TEST_CASE("cli error reporting and exit codes") {
  // capacity errors exit 2
  int rc = std::system((std::string(MPAT_CLI_PATH) +
                        " --budget 5 census --input " +
                        std::string(MPAT_FIXTURE_DIR) +
                        "/census -m 3 -o cli_out/never 2> cli_out/err.json "
                        "> /dev/null")
                           .c_str());
  CHECK(WEXITSTATUS(rc) == 2);
  std::string err = slurp("cli_out/err.json");
  CHECK(err.find("\"capacity\"") != std::string::npos);

  // input errors exit 1
  rc = std::system((std::string(MPAT_CLI_PATH) +
                    " census --nverts does-not-exist.txt --simplices x.txt "
                    "-m 3 -o cli_out/never 2> /dev/null > /dev/null")
                       .c_str());
  CHECK(WEXITSTATUS(rc) == 1);
}
