#include "sigbasis/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sigbasis/basis.hpp"
#include "sigbasis/errors.hpp"
#include "sigbasis/freealg.hpp"
#include "sigbasis/io.hpp"
#include "sigbasis/regress.hpp"
#include "sigbasis/signature.hpp"
#include "sigbasis/stochastic.hpp"
#include "sigbasis/words.hpp"

namespace sigbasis {

namespace {

int default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// "-" designates the primary output stream handed to cli_run.
std::ostream& resolve_out(const std::string& path, std::ostream& fallback,
                          std::ofstream& file) {
  if (path == "-") return fallback;
  file.open(path);
  if (!file) throw InvalidInput("cannot open '" + path + "' for writing");
  return file;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// key=value pairs for CSV comment headers, from a flat config object.
std::vector<std::pair<std::string, std::string>> config_pairs(const Json& j) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [key, value] : j.items()) {
    pairs.emplace_back(key,
                       value.is_string() ? value.get<std::string>()
                                         : value.dump());
  }
  return pairs;
}

// Path files are sniffed, not judged by extension: binary batches open with
// the magic bytes, anything else is treated as a one-path CSV.
std::vector<PiecewisePath> load_paths(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot open '" + file + "'");
  char magic[8] = {};
  in.read(magic, sizeof magic);
  const bool binary =
      in.gcount() == 8 && std::string(magic, 8) == "SIGPATHS";
  in.close();
  if (binary) return read_paths_binary_file(file);
  std::ifstream text(file);
  if (!text) throw DataError("cannot open '" + file + "'");
  std::vector<PiecewisePath> paths;
  paths.push_back(read_path_csv(text));
  return paths;
}

// all | prefix | suffix | a word-set JSON file. Named kinds need the order
// flag; a file brings its own truncation order along.
WordSet resolve_words(const std::string& selector, int order, int d) {
  if (selector == "all" || selector == "prefix" || selector == "suffix") {
    if (order < 0) {
      throw InvalidInput("--order is required with --words " + selector);
    }
    const WordKind kind = selector == "all"      ? WordKind::AllUpTo
                          : selector == "prefix" ? WordKind::PrefixesUpTo
                                                 : WordKind::SuffixesUpTo;
    return enumerate_words(kind, order, d);
  }
  const WordSet ws = word_set_from_json(read_json_file(selector));
  if (order >= 0 && order != ws.order()) {
    throw InvalidInput("--order " + std::to_string(order) +
                       " conflicts with the word-set file's order " +
                       std::to_string(ws.order()));
  }
  if (ws.dim() != d) {
    throw InvalidInput("word-set file has alphabet dimension " +
                       std::to_string(ws.dim()) + " but the paths have d = " +
                       std::to_string(d));
  }
  return ws;
}

SdeSpec resolve_process(const std::string& name, int d, double T) {
  if (name == "bm") return brownian_spec(d, T);
  if (name == "ou") return ou_spec(d, T);
  throw InvalidInput("unknown process '" + name + "'");
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, std::istream& in) {
  CLI::App app{"bases-of-words toolkit: shuffles, word bases, signatures, "
               "SDE simulation, and regression experiments",
               "sigbasis"};
  app.require_subcommand(1);

  // ---- shuffle ----
  auto* shuffle_cmd =
      app.add_subcommand("shuffle", "shuffle product of two words");
  std::string sh_w, sh_v, sh_format = "text", sh_out = "-";
  int sh_dim = -1;
  shuffle_cmd->add_option("w", sh_w, "left word, digits or 'e'")->required();
  shuffle_cmd->add_option("v", sh_v, "right word, digits or 'e'")->required();
  shuffle_cmd->add_option("--dim", sh_dim,
                          "alphabet dimension (default: largest letter)");
  shuffle_cmd->add_option("--format", sh_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  shuffle_cmd->add_option("--out", sh_out, "output file, - for stdout");
  shuffle_cmd->callback([&] {
    int d = sh_dim;
    if (d < 0) {
      d = 1;
      for (const std::string& text : {sh_w, sh_v}) {
        if (text == "e") continue;
        for (char c : text) {
          if (c >= '1' && c <= '9') d = std::max(d, c - '0');
        }
      }
    }
    const WordPoly product =
        shuffle(Word::parse(d, sh_w), Word::parse(d, sh_v));
    std::ofstream file;
    std::ostream& os = resolve_out(sh_out, out, file);
    if (sh_format == "text") {
      os << product.str() << '\n';
    } else {
      emit_json(os, Json{{"schema", "word_poly"},
                         {"version", kSchemaVersion},
                         {"config", Json{{"w", sh_w}, {"v", sh_v}, {"d", d}}},
                         {"result", word_poly_to_json(product)}});
    }
  });

  // ---- basis gen / basis check ----
  auto* basis_cmd = app.add_subcommand("basis", "word bases");
  basis_cmd->require_subcommand(1);

  auto* gen_cmd = basis_cmd->add_subcommand(
      "gen", "construct a guaranteed basis-of-words family");
  std::string gen_family, gen_pad, gen_out = "-";
  int gen_order = 0, gen_dim = 0;
  gen_cmd->add_option("--family", gen_family, "prefix or suffix")
      ->required()
      ->check(CLI::IsMember({"prefix", "suffix"}));
  gen_cmd->add_option("--order", gen_order, "truncation order N")->required();
  gen_cmd->add_option("--dim", gen_dim, "alphabet dimension d")->required();
  gen_cmd->add_option("--pad", gen_pad, "JSON file of per-word zero pads");
  gen_cmd->add_option("--out", gen_out, "output file, - for stdout");
  gen_cmd->callback([&] {
    const FamilyKind kind = gen_family == "prefix" ? FamilyKind::PrefixPadded
                                                   : FamilyKind::SuffixPadded;
    std::map<Word, int> pad;
    if (!gen_pad.empty()) {
      pad = pad_map_from_json(read_json_file(gen_pad), gen_dim);
    }
    const WordSet family = construct_family(kind, gen_order, gen_dim, pad);
    Json j = word_set_to_json(family);
    j["config"] = Json{{"family", gen_family},
                       {"order", gen_order},
                       {"dim", gen_dim},
                       {"pad", gen_pad}};
    std::ofstream file;
    emit_json(resolve_out(gen_out, out, file), j);
  });

  auto* check_cmd = basis_cmd->add_subcommand(
      "check", "certify a word set as a basis of words");
  std::string check_set, check_out = "-";
  int check_order = -1;
  check_cmd->add_option("--set", check_set,
                        "word-set JSON file (default: read stdin)");
  check_cmd->add_option("--order", check_order,
                        "truncation order N (default: the set's own)");
  check_cmd->add_option("--out", check_out, "output file, - for stdout");
  check_cmd->callback([&] {
    Json doc;
    if (check_set.empty()) {
      const std::string text{std::istreambuf_iterator<char>(in),
                             std::istreambuf_iterator<char>()};
      doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
      if (doc.is_discarded()) {
        throw DataError("standard input is not valid JSON");
      }
    } else {
      doc = read_json_file(check_set);
    }
    const WordSet ws = word_set_from_json(doc);
    const int order = check_order < 0 ? ws.order() : check_order;
    Json j = basis_certificate_to_json(is_basis_of_words(ws, order));
    j["config"] = Json{{"set", check_set.empty() ? "<stdin>" : check_set},
                       {"order", order}};
    std::ofstream file;
    emit_json(resolve_out(check_out, out, file), j);
  });

  // ---- sig compute ----
  auto* sig_cmd = app.add_subcommand("sig", "signature computation");
  sig_cmd->require_subcommand(1);
  auto* compute_cmd = sig_cmd->add_subcommand(
      "compute", "signature components of stored paths");
  std::string sc_paths, sc_words = "all", sc_direction = "fwd",
              sc_emit = "json", sc_out = "-";
  int sc_order = -1, sc_workers = default_workers();
  bool sc_count_ops = false;
  compute_cmd->add_option("--paths", sc_paths, "path file (CSV or binary)")
      ->required();
  compute_cmd->add_option("--order", sc_order, "truncation order N");
  compute_cmd->add_option("--words", sc_words,
                          "all, prefix, suffix, or a word-set JSON file");
  compute_cmd->add_option("--direction", sc_direction, "fwd or bwd")
      ->check(CLI::IsMember({"fwd", "bwd"}));
  compute_cmd->add_option("--emit", sc_emit, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  compute_cmd->add_flag("--count-ops", sc_count_ops,
                        "report elementary operation counts per path");
  compute_cmd->add_option("--workers", sc_workers, "parallel workers");
  compute_cmd->add_option("--out", sc_out, "output file, - for stdout");
  compute_cmd->callback([&] {
    const auto paths = load_paths(sc_paths);
    const WordSet words = resolve_words(sc_words, sc_order, paths[0].dim());
    const Direction dir =
        sc_direction == "fwd" ? Direction::Forward : Direction::Backward;
    std::vector<std::vector<double>> rows;
    std::vector<std::uint64_t> ops;
    if (sc_count_ops) {
      for (const PiecewisePath& p : paths) {
        auto [sig, counter] = dir == Direction::Forward
                                  ? sig_forward(p, words)
                                  : sig_backward(p, words);
        rows.push_back(sig.values());
        ops.push_back(counter.elementary_ops);
      }
    } else {
      rows = sig_batch(paths, SigPlan(words, dir), sc_workers);
    }
    Json config{{"paths", sc_paths},   {"order", words.order()},
                {"words", sc_words},   {"direction", sc_direction},
                {"count_ops", sc_count_ops}, {"workers", sc_workers}};
    std::ofstream file;
    std::ostream& os = resolve_out(sc_out, out, file);
    if (sc_emit == "json") {
      Json listed = Json::array();
      for (const Word& w : words.words()) listed.push_back(w.str());
      Json j{{"schema", "sig_values"},
             {"version", kSchemaVersion},
             {"config", std::move(config)},
             {"words", std::move(listed)},
             {"values", rows}};
      if (sc_count_ops) j["ops"] = ops;
      emit_json(os, j);
    } else {
      auto pairs = config_pairs(config);
      for (std::size_t k = 0; k < ops.size(); ++k) {
        pairs.emplace_back("ops_path_" + std::to_string(k),
                           std::to_string(ops[k]));
      }
      write_sig_csv(os, words, rows, pairs);
    }
  });

  // ---- simulate ----
  auto* sim_cmd =
      app.add_subcommand("simulate", "sample SDE paths by Euler-Maruyama");
  std::string sim_process = "bm", sim_format = "bin", sim_out;
  int sim_dim = 1, sim_steps = 100, sim_n = 1,
      sim_workers = default_workers();
  double sim_T = 1.0;
  std::uint64_t sim_seed = 0;
  sim_cmd->add_option("--process", sim_process, "bm or ou")
      ->check(CLI::IsMember({"bm", "ou"}));
  sim_cmd->add_option("--dim", sim_dim, "state dimension d");
  sim_cmd->add_option("--steps", sim_steps, "Euler grid steps K");
  sim_cmd->add_option("--n", sim_n, "number of paths");
  sim_cmd->add_option("--seed", sim_seed, "RNG seed")
      ->envname("SIGBASIS_SEED");
  sim_cmd->add_option("--horizon", sim_T, "time horizon T");
  sim_cmd->add_option("--format", sim_format,
                      "bin (batch) or csv (single path)")
      ->check(CLI::IsMember({"bin", "csv"}));
  sim_cmd->add_option("--workers", sim_workers, "parallel workers");
  sim_cmd->add_option("--out", sim_out, "output file")->required();
  sim_cmd->callback([&] {
    const SdeSpec spec = resolve_process(sim_process, sim_dim, sim_T);
    const auto paths = simulate(spec, sim_steps, sim_n, sim_seed, sim_workers);
    const Json config{{"process", sim_process}, {"dim", sim_dim},
                      {"steps", sim_steps},     {"n", sim_n},
                      {"seed", sim_seed},       {"horizon", sim_T},
                      {"format", sim_format},   {"out", sim_out},
                      {"workers", sim_workers}};
    if (sim_format == "bin") {
      write_paths_binary_file(sim_out, paths);
    } else {
      if (sim_n != 1) {
        throw InvalidInput(
            "--format csv stores a single path; use --n 1 or --format bin");
      }
      std::ofstream file(sim_out);
      if (!file) {
        throw InvalidInput("cannot open '" + sim_out + "' for writing");
      }
      write_csv_header(file, "simulate", config_pairs(config));
      write_path_csv(file, paths[0]);
    }
    emit_json(out, Json{{"schema", "simulate_summary"},
                        {"version", kSchemaVersion},
                        {"config", config},
                        {"paths_written", sim_n}});
  });

  // ---- gram ----
  auto* gram_cmd = app.add_subcommand(
      "gram", "second-moment diagnostics of signature features");
  std::string gr_paths, gr_words = "all", gr_out = "-";
  int gr_order = -1, gr_workers = default_workers();
  gram_cmd->add_option("--paths", gr_paths, "path file (CSV or binary)")
      ->required();
  gram_cmd->add_option("--order", gr_order, "truncation order N");
  gram_cmd->add_option("--words", gr_words,
                       "all, prefix, suffix, or a word-set JSON file");
  gram_cmd->add_option("--workers", gr_workers, "parallel workers");
  gram_cmd->add_option("--out", gr_out, "output file, - for stdout");
  gram_cmd->callback([&] {
    const auto paths = load_paths(gr_paths);
    const WordSet words = resolve_words(gr_words, gr_order, paths[0].dim());
    Json j = gram_report_to_json(
        gram_report(paths, words, words.order(), gr_workers));
    j["config"] = Json{{"paths", gr_paths},
                       {"order", words.order()},
                       {"words", gr_words},
                       {"workers", gr_workers}};
    std::ofstream file;
    emit_json(resolve_out(gr_out, out, file), j);
  });

  // ---- experiment regression / experiment timing ----
  auto* exp_cmd = app.add_subcommand("experiment", "numerical experiments");
  exp_cmd->require_subcommand(1);

  auto* reg_cmd = exp_cmd->add_subcommand(
      "regression", "generalization-gap estimate between feature strategies");
  std::string rg_process = "bm", rg_beta = "ones", rg_emit = "json",
              rg_out = "-";
  int rg_dim = 1, rg_order = 2, rg_true = 10, rg_train = 500,
      rg_test = 10000, rg_batches = 20, rg_steps = 100,
      rg_workers = default_workers();
  double rg_T = 1.0;
  std::uint64_t rg_seed = 0;
  reg_cmd->add_option("--process", rg_process, "bm or ou")
      ->check(CLI::IsMember({"bm", "ou"}));
  reg_cmd->add_option("--dim", rg_dim, "state dimension d");
  reg_cmd->add_option("--horizon", rg_T, "time horizon T");
  reg_cmd->add_option("--order", rg_order, "model truncation order N");
  reg_cmd->add_option("--beta", rg_beta, "ones, geom-up, or geom-down")
      ->check(CLI::IsMember({"ones", "geom-up", "geom-down"}));
  reg_cmd->add_option("--n-true", rg_true, "target functional order");
  reg_cmd->add_option("--n-train", rg_train, "paths per training batch");
  reg_cmd->add_option("--n-test", rg_test, "shared test paths");
  reg_cmd->add_option("--batches", rg_batches, "training batches");
  reg_cmd->add_option("--steps", rg_steps, "Euler grid steps K");
  reg_cmd->add_option("--seed", rg_seed, "RNG seed")
      ->envname("SIGBASIS_SEED");
  reg_cmd->add_option("--workers", rg_workers, "parallel workers");
  reg_cmd->add_option("--emit", rg_emit, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  reg_cmd->add_option("--out", rg_out, "output file, - for stdout");
  reg_cmd->callback([&] {
    Algo1Config cfg;
    cfg.N = rg_order;
    cfg.n_test = rg_test;
    cfg.n_train = rg_train;
    cfg.batches = rg_batches;
    cfg.process = resolve_process(rg_process, rg_dim, rg_T);
    cfg.beta = rg_beta == "ones"      ? BetaKind::Ones
               : rg_beta == "geom-up" ? BetaKind::GeomUp
                                      : BetaKind::GeomDown;
    cfg.n_true = rg_true;
    cfg.K = rg_steps;
    cfg.seed = rg_seed;
    cfg.workers = rg_workers;
    const ExperimentReport report = algorithm1(cfg);
    std::ofstream file;
    std::ostream& os = resolve_out(rg_out, out, file);
    if (rg_emit == "json") {
      emit_json(os, experiment_report_to_json(report));
    } else {
      write_experiment_csv(os, report);
    }
  });

  auto* tim_cmd = exp_cmd->add_subcommand(
      "timing", "wall-clock and counter comparison of feature strategies");
  std::string tm_emit = "json", tm_out = "-";
  TimingConfig tm_cfg;
  tim_cmd->add_option("--order", tm_cfg.N, "truncation order N");
  tim_cmd->add_option("--dim", tm_cfg.d, "state dimension d");
  tim_cmd->add_option("--steps", tm_cfg.K, "Euler grid steps K");
  tim_cmd->add_option("--n", tm_cfg.n, "paths per timed repeat");
  tim_cmd->add_option("--repeats", tm_cfg.repeats, "timed repeats");
  tim_cmd->add_option("--seed", tm_cfg.seed, "RNG seed")
      ->envname("SIGBASIS_SEED");
  tim_cmd->add_option("--emit", tm_emit, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  tim_cmd->add_option("--out", tm_out, "output file, - for stdout");
  tim_cmd->callback([&] {
    const TimingTable table = timing_harness(tm_cfg);
    std::ofstream file;
    std::ostream& os = resolve_out(tm_out, out, file);
    if (tm_emit == "json") {
      emit_json(os, timing_table_to_json(tm_cfg, table));
    } else {
      write_timing_csv(os, tm_cfg, table);
    }
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  return cli_run(args, out, err, std::cin);
}

}  // namespace sigbasis
