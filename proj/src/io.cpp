#include "sigbasis/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sigbasis/errors.hpp"
#include "sigbasis/rationals.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary path files are little-endian; this build targets a "
              "little-endian host");

namespace sigbasis {

namespace {

constexpr char kPathMagic[8] = {'S', 'I', 'G', 'P', 'A', 'T', 'H', 'S'};

// Unwraps {"result": …} envelopes so emitted files can be piped back in.
const Json& unwrap(const Json& j) {
  if (j.is_object() && j.contains("result")) return j.at("result");
  return j;
}

int require_int(const Json& j, const char* key, int lo, int hi) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw DataError(std::string("document needs an integer field '") + key +
                    "'");
  }
  const std::int64_t v = j.at(key).get<std::int64_t>();
  if (v < lo || v > hi) {
    throw DataError(std::string("field '") + key + "' = " + std::to_string(v) +
                    " is outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::string trimmed(const std::string& line) {
  const auto a = line.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = line.find_last_not_of(" \t\r\n");
  return line.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trimmed(line.substr(start)));
      return out;
    }
    out.push_back(trimmed(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

double parse_double(const std::string& text, std::size_t row) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw DataError("row " + std::to_string(row) + ": cannot parse number '" +
                    text + "'");
  }
  return v;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  out.write(buf, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.write(buf, 8);
}

void put_f64(std::ostream& out, double v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.write(buf, 8);
}

std::uint32_t take_u32(std::istream& in, const char* what) {
  char buf[4];
  if (!in.read(buf, 4)) {
    throw DataError(std::string("binary path file truncated reading ") + what);
  }
  std::uint32_t v;
  std::memcpy(&v, buf, 4);
  return v;
}

std::uint64_t take_u64(std::istream& in, const char* what) {
  char buf[8];
  if (!in.read(buf, 8)) {
    throw DataError(std::string("binary path file truncated reading ") + what);
  }
  std::uint64_t v;
  std::memcpy(&v, buf, 8);
  return v;
}

void take_f64_block(std::istream& in, double* dst, std::size_t count,
                    const char* what) {
  if (!in.read(reinterpret_cast<char*>(dst),
               static_cast<std::streamsize>(count * sizeof(double)))) {
    throw DataError(std::string("binary path file truncated reading ") + what);
  }
}

Json strategy_to_json(const StrategySummary& s) {
  return Json{{"r2_mean", s.r2_mean},
              {"mse_mean", s.mse_mean},
              {"lambda_mean", s.lambda_mean}};
}

const char* beta_name(BetaKind kind) {
  switch (kind) {
    case BetaKind::Ones: return "ones";
    case BetaKind::GeomUp: return "geom-up";
    case BetaKind::GeomDown: return "geom-down";
  }
  return "ones";
}

}  // namespace

// ---------------------------------------------------------------------------
// JSON emitters
// ---------------------------------------------------------------------------

Json word_set_to_json(const WordSet& s) {
  Json words = Json::array();
  for (const Word& w : s.words()) words.push_back(w.str());
  return Json{{"schema", "word_set"},
              {"version", kSchemaVersion},
              {"d", s.dim()},
              {"N", s.order()},
              {"words", std::move(words)}};
}

Json word_poly_to_json(const WordPoly& p) {
  Json j = Json::object();
  for (const auto& [word, coeff] : p.terms()) {
    j[word.str()] = rat_to_string(coeff);
  }
  return j;
}

Json basis_certificate_to_json(const BasisCertificate& c) {
  Json classes = Json::array();
  for (const ClassReport& cls : c.classes) {
    classes.push_back(Json{{"gamma", cls.gamma.str()},
                           {"cardinality", cls.cardinality},
                           {"required", cls.required.get_str()},
                           {"rank", cls.rank},
                           {"ok", cls.ok}});
  }
  Json j{{"schema", "basis_certificate"},
         {"version", kSchemaVersion},
         {"is_basis", c.is_basis},
         {"d", c.d},
         {"N", c.N},
         {"total_rank", c.total_rank},
         {"classes", std::move(classes)}};
  j["witness"] = c.witness ? word_poly_to_json(*c.witness) : Json(nullptr);
  return j;
}

Json gram_report_to_json(const GramReport& r) {
  return Json{{"schema", "gram_report"},
              {"version", kSchemaVersion},
              {"word_set", word_set_to_json(r.word_set)},
              {"sample_size", r.sample_size},
              {"min_eigenvalue", r.min_eigenvalue},
              {"max_eigenvalue", r.max_eigenvalue},
              {"trace", r.trace},
              {"determinant_sign", r.determinant_sign},
              // infinity on a singular Gram; dumps as null
              {"condition_estimate", r.condition_estimate},
              {"guaranteed_singular", r.guaranteed_singular},
              {"min_eigenvector", r.min_eigenvector}};
}

Json sde_spec_to_json(const SdeSpec& spec) {
  const char* kind = "custom";
  if (spec.kind == ProcessKind::Brownian) kind = "bm";
  if (spec.kind == ProcessKind::OrnsteinUhlenbeck) kind = "ou";
  return Json{{"kind", kind},
              {"d", spec.d},
              {"T", spec.T},
              {"initial", spec.initial}};
}

Json experiment_report_to_json(const ExperimentReport& r) {
  Json config{{"N", r.config.N},
              {"n_test", r.config.n_test},
              {"n_train", r.config.n_train},
              {"batches", r.config.batches},
              {"process", sde_spec_to_json(r.config.process)},
              {"beta", beta_name(r.config.beta)},
              {"beta_custom", r.config.beta_custom},
              {"n_true", r.config.n_true},
              {"K", r.config.K},
              {"seed", r.config.seed},
              {"workers", r.config.workers}};
  return Json{{"schema", "experiment_report"},
              {"version", kSchemaVersion},
              {"config", std::move(config)},
              {"delta_egen", r.delta_egen},
              {"std_error", r.std_error},
              {"ci_low", r.ci_low},
              {"ci_high", r.ci_high},
              {"all", strategy_to_json(r.all)},
              {"suffix", strategy_to_json(r.suffix)},
              {"batch_deltas", r.batch_deltas},
              // wall-clock; excluded from the reproducible payload
              {"timing", Json{{"sig_seconds", r.sig_seconds},
                              {"fit_seconds", r.fit_seconds}}}};
}

Json timing_table_to_json(const TimingConfig& config, const TimingTable& t) {
  return Json{{"schema", "timing_table"},
              {"version", kSchemaVersion},
              {"config", Json{{"N", config.N},
                              {"d", config.d},
                              {"K", config.K},
                              {"n", config.n},
                              {"repeats", config.repeats},
                              {"seed", config.seed}}},
              {"p_all", t.p_all},
              {"p_suffix", t.p_suffix},
              {"counter_ratio", t.counter_ratio},
              // wall-clock; excluded from the reproducible payload
              {"timing", Json{{"sig_all_seconds", t.sig_all_seconds},
                              {"sig_suffix_seconds", t.sig_suffix_seconds},
                              {"fit_all_seconds", t.fit_all_seconds},
                              {"fit_suffix_seconds", t.fit_suffix_seconds},
                              {"sig_ratio", t.sig_ratio},
                              {"fit_ratio", t.fit_ratio}}}};
}

// ---------------------------------------------------------------------------
// JSON readers
// ---------------------------------------------------------------------------

WordSet word_set_from_json(const Json& doc) {
  const Json& j = unwrap(doc);
  if (!j.is_object()) throw DataError("word set document must be an object");
  const int d = require_int(j, "d", 1, kMaxDim);
  const int N = require_int(j, "N", 0, kMaxOrder);
  if (!j.contains("words") || !j.at("words").is_array()) {
    throw DataError("word set document needs a 'words' array");
  }
  std::vector<Word> words;
  words.reserve(j.at("words").size());
  for (const Json& entry : j.at("words")) {
    if (!entry.is_string()) {
      throw DataError("word set entries must be strings");
    }
    words.push_back(Word::parse(d, entry.get<std::string>()));
  }
  return WordSet(d, N, std::move(words));
}

WordPoly word_poly_from_json(const Json& doc, int d) {
  const Json& j = unwrap(doc);
  if (!j.is_object()) {
    throw DataError("word combination document must be an object");
  }
  WordPoly p(d);
  for (const auto& [key, value] : j.items()) {
    if (key == "schema" || key == "version") continue;
    if (!value.is_string()) {
      throw DataError("coefficient of '" + key +
                      "' must be an exact rational string");
    }
    p.add_term(Word::parse(d, key), rat_from_string(value.get<std::string>()));
  }
  return p;
}

std::map<Word, int> pad_map_from_json(const Json& doc, int d) {
  const Json& j = unwrap(doc);
  if (!j.is_object()) throw DataError("pad map document must be an object");
  std::map<Word, int> pad;
  for (const auto& [key, value] : j.items()) {
    if (key == "schema" || key == "version") continue;
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
      throw DataError("pad count of '" + key +
                      "' must be a non-negative integer");
    }
    const std::int64_t count = value.get<std::int64_t>();
    if (count > kMaxOrder) {
      throw DataError("pad count of '" + key + "' exceeds the order bound " +
                      std::to_string(kMaxOrder));
    }
    pad[Word::parse(d, key)] = static_cast<int>(count);
  }
  return pad;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw DataError("'" + path + "' is not valid JSON");
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw InvalidInput("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_header(
    std::ostream& out, const std::string& schema,
    const std::vector<std::pair<std::string, std::string>>& config) {
  out << "# schema=" << schema << " version=" << kSchemaVersion << "\n";
  for (const auto& [key, value] : config) {
    out << "# " << key << "=" << value << "\n";
  }
}

void write_path_csv(std::ostream& out, const PiecewisePath& path) {
  write_csv_header(out, "path",
                   {{"d", std::to_string(path.dim())},
                    {"samples", std::to_string(path.timestamps().size())}});
  out << "t";
  for (int i = 1; i <= path.dim(); ++i) out << ",x" << i;
  out << "\n";
  const auto& ts = path.timestamps();
  const auto& pts = path.points();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    out << format_double(ts[k]);
    for (double v : pts[k]) out << ',' << format_double(v);
    out << "\n";
  }
}

PiecewisePath read_path_csv(std::istream& in) {
  std::string line;
  std::size_t row = 0;
  int d = -1;
  std::vector<double> ts;
  std::vector<std::vector<double>> pts;
  while (std::getline(in, line)) {
    ++row;
    const std::string content = trimmed(line);
    if (content.empty() || content[0] == '#') continue;
    const std::vector<std::string> cells = split_csv(content);
    if (d < 0) {  // header row
      if (cells.size() < 2 || cells[0] != "t") {
        throw DataError("row " + std::to_string(row) +
                        ": expected header 't,x1,...,xd'");
      }
      d = static_cast<int>(cells.size()) - 1;
      for (int i = 1; i <= d; ++i) {
        if (cells[static_cast<std::size_t>(i)] != "x" + std::to_string(i)) {
          throw DataError("row " + std::to_string(row) + ": column " +
                          std::to_string(i + 1) + " must be named x" +
                          std::to_string(i));
        }
      }
      continue;
    }
    if (cells.size() != static_cast<std::size_t>(d) + 1) {
      throw DataError("row " + std::to_string(row) + ": expected " +
                      std::to_string(d + 1) + " columns, found " +
                      std::to_string(cells.size()));
    }
    ts.push_back(parse_double(cells[0], row));
    std::vector<double> point(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      point[static_cast<std::size_t>(i)] =
          parse_double(cells[static_cast<std::size_t>(i) + 1], row);
    }
    pts.push_back(std::move(point));
  }
  if (d < 0) throw DataError("path file has no header row");
  return PiecewisePath(std::move(ts), std::move(pts));
}

void write_sig_csv(
    std::ostream& out, const WordSet& words,
    const std::vector<std::vector<double>>& rows,
    const std::vector<std::pair<std::string, std::string>>& config) {
  write_csv_header(out, "sig_values", config);
  out << "path,word,value\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != words.size()) {
      throw InvalidInput("signature row " + std::to_string(k) + " has " +
                         std::to_string(rows[k].size()) + " values for " +
                         std::to_string(words.size()) + " words");
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      out << k << ',' << words.words()[i].str() << ','
          << format_double(rows[k][i]) << "\n";
    }
  }
}

void write_experiment_csv(std::ostream& out, const ExperimentReport& r) {
  const SdeSpec& proc = r.config.process;
  const char* kind = "custom";
  if (proc.kind == ProcessKind::Brownian) kind = "bm";
  if (proc.kind == ProcessKind::OrnsteinUhlenbeck) kind = "ou";
  write_csv_header(
      out, "experiment_report",
      {{"N", std::to_string(r.config.N)},
       {"n_train", std::to_string(r.config.n_train)},
       {"n_test", std::to_string(r.config.n_test)},
       {"batches", std::to_string(r.config.batches)},
       {"process", kind},
       {"d", std::to_string(proc.d)},
       {"T", format_double(proc.T)},
       {"beta", r.config.beta_custom.empty() ? beta_name(r.config.beta)
                                             : "custom"},
       {"n_true", std::to_string(r.config.n_true)},
       {"K", std::to_string(r.config.K)},
       {"seed", std::to_string(r.config.seed)},
       {"workers", std::to_string(r.config.workers)},
       {"delta_egen", format_double(r.delta_egen)},
       {"std_error", format_double(r.std_error)},
       {"ci_low", format_double(r.ci_low)},
       {"ci_high", format_double(r.ci_high)},
       {"r2_all", format_double(r.all.r2_mean)},
       {"mse_all", format_double(r.all.mse_mean)},
       {"lambda_all", format_double(r.all.lambda_mean)},
       {"r2_suffix", format_double(r.suffix.r2_mean)},
       {"mse_suffix", format_double(r.suffix.mse_mean)},
       {"lambda_suffix", format_double(r.suffix.lambda_mean)}});
  out << "batch,delta\n";
  for (std::size_t b = 0; b < r.batch_deltas.size(); ++b) {
    out << b << ',' << format_double(r.batch_deltas[b]) << "\n";
  }
}

void write_timing_csv(std::ostream& out, const TimingConfig& config,
                      const TimingTable& t) {
  write_csv_header(out, "timing_table",
                   {{"N", std::to_string(config.N)},
                    {"d", std::to_string(config.d)},
                    {"K", std::to_string(config.K)},
                    {"n", std::to_string(config.n)},
                    {"repeats", std::to_string(config.repeats)},
                    {"seed", std::to_string(config.seed)}});
  out << "quantity,value\n";
  out << "p_all," << t.p_all << "\n";
  out << "p_suffix," << t.p_suffix << "\n";
  out << "counter_ratio," << format_double(t.counter_ratio) << "\n";
  out << "sig_all_seconds," << format_double(t.sig_all_seconds) << "\n";
  out << "sig_suffix_seconds," << format_double(t.sig_suffix_seconds) << "\n";
  out << "fit_all_seconds," << format_double(t.fit_all_seconds) << "\n";
  out << "fit_suffix_seconds," << format_double(t.fit_suffix_seconds) << "\n";
  out << "sig_ratio," << format_double(t.sig_ratio) << "\n";
  out << "fit_ratio," << format_double(t.fit_ratio) << "\n";
}

// ---------------------------------------------------------------------------
// Binary path batches
// ---------------------------------------------------------------------------

void write_paths_binary(std::ostream& out,
                        const std::vector<PiecewisePath>& paths) {
  out.write(kPathMagic, sizeof kPathMagic);
  put_u32(out, static_cast<std::uint32_t>(kSchemaVersion));
  put_u32(out, 0);  // reserved
  put_u64(out, paths.size());
  for (const PiecewisePath& p : paths) {
    const auto& ts = p.timestamps();
    put_u64(out, ts.size());
    put_u64(out, static_cast<std::uint64_t>(p.dim()));
    for (double t : ts) put_f64(out, t);
    for (const auto& point : p.points()) {
      for (double v : point) put_f64(out, v);
    }
  }
  if (!out) throw InvalidInput("failed writing binary path data");
}

std::vector<PiecewisePath> read_paths_binary(std::istream& in) {
  char magic[sizeof kPathMagic];
  if (!in.read(magic, sizeof magic) ||
      std::memcmp(magic, kPathMagic, sizeof magic) != 0) {
    throw DataError("not a binary path file (bad magic)");
  }
  const std::uint32_t version = take_u32(in, "version");
  if (version != static_cast<std::uint32_t>(kSchemaVersion)) {
    throw DataError("unsupported binary path file version " +
                    std::to_string(version));
  }
  take_u32(in, "reserved word");
  const std::uint64_t n_paths = take_u64(in, "path count");
  // Guards allocation against corrupted size prefixes; genuine batches are
  // far below these bounds.
  constexpr std::uint64_t kMaxCount = 100'000'000;
  if (n_paths > kMaxCount) {
    throw DataError("implausible path count " + std::to_string(n_paths));
  }
  std::vector<PiecewisePath> paths;
  paths.reserve(n_paths);
  for (std::uint64_t k = 0; k < n_paths; ++k) {
    const std::uint64_t samples = take_u64(in, "sample count");
    const std::uint64_t d = take_u64(in, "dimension");
    if (samples < 2 || samples > kMaxCount || d < 1 ||
        d > static_cast<std::uint64_t>(kMaxDim) ||
        samples * d > kMaxCount) {
      throw DataError("path " + std::to_string(k) +
                      ": implausible size prefix (samples=" +
                      std::to_string(samples) + ", d=" + std::to_string(d) +
                      ")");
    }
    std::vector<double> ts(samples);
    take_f64_block(in, ts.data(), samples, "timestamps");
    std::vector<double> flat(samples * d);
    take_f64_block(in, flat.data(), flat.size(), "values");
    std::vector<std::vector<double>> pts(samples, std::vector<double>(d));
    for (std::uint64_t s = 0; s < samples; ++s) {
      for (std::uint64_t i = 0; i < d; ++i) pts[s][i] = flat[s * d + i];
    }
    paths.emplace_back(std::move(ts), std::move(pts));
  }
  return paths;
}

void write_paths_binary_file(const std::string& path,
                             const std::vector<PiecewisePath>& paths) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  write_paths_binary(out, paths);
}

std::vector<PiecewisePath> read_paths_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_paths_binary(in);
}

}  // namespace sigbasis
