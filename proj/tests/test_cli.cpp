#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sigbasis/basis.hpp"
#include "sigbasis/cli.hpp"
#include "sigbasis/io.hpp"
#include "sigbasis/regress.hpp"
#include "sigbasis/signature.hpp"
#include "sigbasis/stochastic.hpp"
#include "sigbasis/words.hpp"

using namespace sigbasis;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args,
              const std::string& stdin_text = "") {
  std::ostringstream out, err;
  std::istringstream in(stdin_text);
  CliResult r;
  r.code = cli_run(args, out, err, in);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("shuffle prints the worked product exactly") {
  const CliResult r = run({"shuffle", "1", "21"});
  CHECK(r.code == 0);
  CHECK(r.out == "121 + 2*211\n");
  CHECK(r.err.empty());
}

TEST_CASE("shuffle json output round-trips to the library product") {
  const CliResult r = run({"shuffle", "1", "21", "--format", "json"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("schema") == "word_poly");
  CHECK(j.at("config").at("d") == 2);
  const WordPoly back = word_poly_from_json(j, 2);
  CHECK(back == shuffle(Word::parse(2, "1"), Word::parse(2, "21")));
}

TEST_CASE("shuffle rejects words with non-digit letters") {
  const CliResult r = run({"shuffle", "1x", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("non-digit") != std::string::npos);
}

TEST_CASE("basis gen emits the library family with its config") {
  const CliResult r =
      run({"basis", "gen", "--family", "suffix", "--order", "3", "--dim", "1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("config").at("family") == "suffix");
  CHECK(word_set_from_json(j) == enumerate_words(WordKind::SuffixesUpTo, 3, 1));
}

TEST_CASE("basis gen honors a pad map file") {
  const std::string pad_file = "/tmp/sigbasis_cli_pad.json";
  write_json_file(pad_file, Json{{"1", 1}});
  const CliResult r = run({"basis", "gen", "--family", "suffix", "--order",
                           "3", "--dim", "1", "--pad", pad_file});
  REQUIRE(r.code == 0);
  const WordSet got = word_set_from_json(Json::parse(r.out));
  const WordSet expected = construct_family(
      FamilyKind::SuffixPadded, 3, 1, {{Word::parse(1, "1"), 1}});
  CHECK(got == expected);
}

TEST_CASE("basis check certifies a generated family piped through stdin") {
  const CliResult gen =
      run({"basis", "gen", "--family", "suffix", "--order", "3", "--dim", "1"});
  REQUIRE(gen.code == 0);
  const CliResult check = run({"basis", "check", "--order", "3"}, gen.out);
  REQUIRE(check.code == 0);
  const Json j = Json::parse(check.out);
  CHECK(j.at("is_basis") == true);
  CHECK(j.at("total_rank") == 8);
  CHECK(j.at("config").at("set") == "<stdin>");
}

TEST_CASE("basis check reads a file and defaults to the set's own order") {
  const std::string set_file = "/tmp/sigbasis_cli_set.json";
  write_json_file(set_file,
                  word_set_to_json(enumerate_words(WordKind::PrefixesUpTo, 2, 2)));
  const CliResult r = run({"basis", "check", "--set", set_file});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("is_basis") == true);
  CHECK(j.at("total_rank") == 9);  // (d+1)^N = 3^2

  const CliResult garbage = run({"basis", "check"}, "{not json");
  CHECK(garbage.code == 1);
}

TEST_CASE("simulate writes a binary batch identical to the library's") {
  const std::string file = "/tmp/sigbasis_cli_sim.bin";
  const CliResult r =
      run({"simulate", "--process", "ou", "--dim", "2", "--steps", "20",
           "--n", "5", "--seed", "11", "--out", file});
  REQUIRE(r.code == 0);
  const Json summary = Json::parse(r.out);
  CHECK(summary.at("schema") == "simulate_summary");
  CHECK(summary.at("paths_written") == 5);
  CHECK(summary.at("config").at("seed") == 11);

  std::ostringstream direct(std::ios::binary);
  write_paths_binary(direct, simulate(ou_spec(2, 1.0), 20, 5, 11, 1));
  CHECK(slurp(file) == direct.str());
}

TEST_CASE("simulate csv format stores one self-describing path") {
  const std::string file = "/tmp/sigbasis_cli_sim.csv";
  const CliResult r =
      run({"simulate", "--process", "bm", "--steps", "4", "--n", "1",
           "--seed", "2", "--format", "csv", "--out", file});
  REQUIRE(r.code == 0);
  const std::string text = slurp(file);
  CHECK(text.find("# schema=simulate version=1") == 0);
  CHECK(text.find("# seed=2") != std::string::npos);
  std::istringstream in(text);
  const PiecewisePath back = read_path_csv(in);
  const auto direct = simulate(brownian_spec(1, 1.0), 4, 1, 2, 1);
  CHECK(back.timestamps() == direct[0].timestamps());
  CHECK(back.points() == direct[0].points());

  const CliResult multi =
      run({"simulate", "--process", "bm", "--steps", "4", "--n", "3",
           "--seed", "2", "--format", "csv", "--out", file});
  CHECK(multi.code == 1);
  CHECK(multi.err.find("single path") != std::string::npos);
}

TEST_CASE("the seed environment variable fills in when the flag is absent") {
  const std::string with_flag = "/tmp/sigbasis_cli_seedflag.bin";
  const std::string with_env = "/tmp/sigbasis_cli_seedenv.bin";
  REQUIRE(run({"simulate", "--steps", "6", "--n", "2", "--seed", "9",
               "--out", with_flag})
              .code == 0);
  setenv("SIGBASIS_SEED", "9", 1);
  const CliResult r =
      run({"simulate", "--steps", "6", "--n", "2", "--out", with_env});
  unsetenv("SIGBASIS_SEED");
  REQUIRE(r.code == 0);
  CHECK(slurp(with_env) == slurp(with_flag));
}

TEST_CASE("sig compute is a thin adapter over the signature engine") {
  const std::string file = "/tmp/sigbasis_cli_sigpaths.bin";
  REQUIRE(run({"simulate", "--process", "ou", "--dim", "2", "--steps", "20",
               "--n", "5", "--seed", "11", "--out", file})
              .code == 0);
  const CliResult r = run({"sig", "compute", "--paths", file, "--order", "3",
                           "--words", "all", "--workers", "1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("schema") == "sig_values");
  CHECK(j.at("config").at("direction") == "fwd");

  const auto paths = simulate(ou_spec(2, 1.0), 20, 5, 11, 1);
  const WordSet words = enumerate_words(WordKind::AllUpTo, 3, 2);
  const auto rows = sig_batch(paths, SigPlan(words, Direction::Forward), 1);
  CHECK(j.at("values").get<std::vector<std::vector<double>>>() == rows);
  std::vector<std::string> listed;
  for (const Word& w : words.words()) listed.push_back(w.str());
  CHECK(j.at("words").get<std::vector<std::string>>() == listed);
}

TEST_CASE("sig compute reports the closed-form operation count") {
  const std::string file = "/tmp/sigbasis_cli_sigops.bin";
  REQUIRE(run({"simulate", "--steps", "10", "--n", "2", "--seed", "4",
               "--out", file})
              .code == 0);
  const CliResult r =
      run({"sig", "compute", "--paths", file, "--order", "2", "--words",
           "suffix", "--direction", "bwd", "--count-ops"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  const WordSet suffix = enumerate_words(WordKind::SuffixesUpTo, 2, 1);
  const std::uint64_t expected =
      cost_closed_form(Direction::Backward, suffix, 10);
  REQUIRE(j.at("ops").size() == 2);
  CHECK(j.at("ops")[0] == expected);
  CHECK(j.at("ops")[1] == expected);
}

TEST_CASE("sig compute on a one-row path file is invalid input") {
  const std::string file = "/tmp/sigbasis_cli_onerow.csv";
  {
    std::ofstream out(file);
    out << "t,x1\n0,1\n";
  }
  const CliResult r =
      run({"sig", "compute", "--paths", file, "--order", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("two sample points") != std::string::npos);
}

TEST_CASE("sig compute validates word-set files against the paths") {
  const std::string paths_file = "/tmp/sigbasis_cli_d1.bin";
  REQUIRE(run({"simulate", "--steps", "5", "--n", "1", "--seed", "6",
               "--out", paths_file})
              .code == 0);
  const std::string words_file = "/tmp/sigbasis_cli_words_d2.json";
  write_json_file(words_file,
                  word_set_to_json(enumerate_words(WordKind::SuffixesUpTo, 2, 2)));
  const CliResult mismatch =
      run({"sig", "compute", "--paths", paths_file, "--words", words_file});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.err.find("dimension") != std::string::npos);

  const std::string words_d1 = "/tmp/sigbasis_cli_words_d1.json";
  write_json_file(words_d1,
                  word_set_to_json(enumerate_words(WordKind::SuffixesUpTo, 2, 1)));
  const CliResult conflict = run({"sig", "compute", "--paths", paths_file,
                                  "--words", words_d1, "--order", "3"});
  CHECK(conflict.code == 1);
  CHECK(conflict.err.find("conflicts") != std::string::npos);

  const CliResult ok =
      run({"sig", "compute", "--paths", paths_file, "--words", words_d1});
  CHECK(ok.code == 0);
}

TEST_CASE("gram is a thin adapter over the library diagnostics") {
  const std::string file = "/tmp/sigbasis_cli_gram.bin";
  REQUIRE(run({"simulate", "--process", "ou", "--dim", "1", "--steps", "20",
               "--n", "40", "--seed", "13", "--out", file})
              .code == 0);
  const CliResult r = run(
      {"gram", "--paths", file, "--words", "suffix", "--order", "2"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  const auto paths = simulate(ou_spec(1, 1.0), 20, 40, 13, 1);
  const GramReport direct =
      gram_report(paths, enumerate_words(WordKind::SuffixesUpTo, 2, 1), 2, 1);
  CHECK(j.at("min_eigenvalue").get<double>() == direct.min_eigenvalue);
  CHECK(j.at("max_eigenvalue").get<double>() == direct.max_eigenvalue);
  CHECK(j.at("determinant_sign") == direct.determinant_sign);
  CHECK(j.at("sample_size") == 40);
  CHECK(j.at("config").at("words") == "suffix");
}

TEST_CASE("experiment regression mirrors algorithm1 exactly") {
  const CliResult r =
      run({"experiment", "regression", "--order", "2", "--n-true", "2",
           "--n-test", "60", "--n-train", "40", "--batches", "2", "--steps",
           "5", "--seed", "3", "--workers", "1"});
  REQUIRE(r.code == 0);
  Json got = Json::parse(r.out);

  Algo1Config cfg;
  cfg.N = 2;
  cfg.n_true = 2;
  cfg.n_test = 60;
  cfg.n_train = 40;
  cfg.batches = 2;
  cfg.K = 5;
  cfg.seed = 3;
  Json expected = experiment_report_to_json(algorithm1(cfg));
  got.erase("timing");
  expected.erase("timing");
  CHECK(got.dump() == expected.dump());
}

TEST_CASE("experiment regression csv emit carries the deltas") {
  const CliResult r =
      run({"experiment", "regression", "--order", "2", "--n-true", "2",
           "--n-test", "60", "--n-train", "40", "--batches", "2", "--steps",
           "5", "--seed", "3", "--emit", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# schema=experiment_report version=1") == 0);
  CHECK(r.out.find("batch,delta\n0,") != std::string::npos);
}

TEST_CASE("experiment timing emits the counter ratio of the cost model") {
  const CliResult r =
      run({"experiment", "timing", "--order", "2", "--n", "40", "--steps",
           "10", "--repeats", "3"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("schema") == "timing_table");
  CHECK(j.at("config").at("n") == 40);
  const WordSet all = enumerate_words(WordKind::AllUpTo, 2, 1);
  const WordSet suffix = enumerate_words(WordKind::SuffixesUpTo, 2, 1);
  const double expected =
      static_cast<double>(cost_closed_form(Direction::Forward, suffix, 10)) /
      static_cast<double>(cost_closed_form(Direction::Forward, all, 10));
  CHECK(j.at("counter_ratio").get<double>() == expected);
}

TEST_CASE("usage problems exit with code 1 and explain themselves") {
  const CliResult none = run({});
  CHECK(none.code == 1);
  CHECK_FALSE(none.err.empty());

  const CliResult unknown = run({"frobnicate"});
  CHECK(unknown.code == 1);
  CHECK_FALSE(unknown.err.empty());

  const CliResult bad_flag = run({"shuffle", "1", "2", "--bogus"});
  CHECK(bad_flag.code == 1);
  CHECK_FALSE(bad_flag.err.empty());

  const CliResult missing =
      run({"basis", "gen", "--family", "suffix", "--order", "3"});
  CHECK(missing.code == 1);

  const CliResult bad_member =
      run({"shuffle", "1", "2", "--format", "yaml"});
  CHECK(bad_member.code == 1);

  const CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("shuffle") != std::string::npos);
}

#ifdef SIGBASIS_BIN
TEST_CASE("the installed binary pipes gen into check") {
  const std::string cmd = std::string(SIGBASIS_BIN) +
                          " basis gen --family suffix --order 3 --dim 1 | " +
                          SIGBASIS_BIN +
                          " basis check --order 3 > /tmp/sigbasis_cli_pipe.json";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const Json j = Json::parse(slurp("/tmp/sigbasis_cli_pipe.json"));
  CHECK(j.at("is_basis") == true);
  CHECK(j.at("total_rank") == 8);

  const std::string fail =
      std::string(SIGBASIS_BIN) + " frobnicate 2>/dev/null";
  const int status = std::system(fail.c_str());
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 1);
}
#endif
