#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sigbasis/basis.hpp"
#include "sigbasis/freealg.hpp"
#include "sigbasis/regress.hpp"
#include "sigbasis/signature.hpp"
#include "sigbasis/stochastic.hpp"
#include "sigbasis/words.hpp"

namespace sigbasis {

using Json = nlohmann::json;

// Stamped into every emitted document: the "version" field of JSON
// documents, the "# version=" line of CSV files, and the version word of the
// binary path format. Bump on any incompatible layout change.
inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// JSON documents. Every emitter produces a self-describing object carrying
// "schema" and "version"; non-finite doubles (the condition estimate of a
// singular Gram, skipped cross-validation points) serialize as null.
// ---------------------------------------------------------------------------

// {"schema":"word_set", "version":1, "d":…, "N":…, "words":["e","021",…]}
Json word_set_to_json(const WordSet& s);

// The bare term map {"word": "coefficient"}, exact rationals as "p/q"
// strings, e.g. shuffle of 1 and 21 -> {"121":"1","211":"2"}.
Json word_poly_to_json(const WordPoly& p);

Json basis_certificate_to_json(const BasisCertificate& c);
Json gram_report_to_json(const GramReport& r);
Json experiment_report_to_json(const ExperimentReport& r);
Json timing_table_to_json(const TimingConfig& config, const TimingTable& t);
Json sde_spec_to_json(const SdeSpec& spec);

// Readers reject malformed documents with DataError. Each accepts either the
// bare document or any object that nests one under "result", so emitted
// files can be piped back in unchanged.
WordSet word_set_from_json(const Json& j);
WordPoly word_poly_from_json(const Json& j, int d);
// {"word": pad_count, …} with non-negative integer counts.
std::map<Word, int> pad_map_from_json(const Json& j, int d);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// ---------------------------------------------------------------------------
// CSV. Lines starting with '#' are comments; emitters lead with
// "# schema=… version=…" and one "# key=value" line per config entry, so
// every file names the run that produced it. Doubles print with enough
// digits to round-trip bit-exactly.
// ---------------------------------------------------------------------------

std::string format_double(double v);

void write_csv_header(
    std::ostream& out, const std::string& schema,
    const std::vector<std::pair<std::string, std::string>>& config);

// One path per file: header row t,x1,…,xd then one row per sample.
void write_path_csv(std::ostream& out, const PiecewisePath& path);
// Rejects missing/mismatched header, ragged rows, and unparseable numbers
// with DataError; sample-level contract violations (fewer than two rows,
// non-increasing t, non-finite entries) surface from the path constructor.
PiecewisePath read_path_csv(std::istream& in);

// Signature components of a batch: path,word,value rows, one per component.
void write_sig_csv(
    std::ostream& out, const WordSet& words,
    const std::vector<std::vector<double>>& rows,
    const std::vector<std::pair<std::string, std::string>>& config);

// Per-batch gap estimates behind the reported interval: batch,delta rows,
// with the config and both strategy summaries in the header comments.
void write_experiment_csv(std::ostream& out, const ExperimentReport& r);
void write_timing_csv(std::ostream& out, const TimingConfig& config,
                      const TimingTable& t);

// ---------------------------------------------------------------------------
// Binary path batches, little-endian throughout: the 8 magic bytes
// "SIGPATHS", u32 version, u32 reserved (zero), u64 path count; then per
// path u64 sample count, u64 dimension d, f64 timestamps[samples],
// f64 values[samples * d] row-major. Readers reject bad magic, unknown
// versions, truncation, and implausible size prefixes with DataError.
// ---------------------------------------------------------------------------

void write_paths_binary(std::ostream& out,
                        const std::vector<PiecewisePath>& paths);
std::vector<PiecewisePath> read_paths_binary(std::istream& in);

void write_paths_binary_file(const std::string& path,
                             const std::vector<PiecewisePath>& paths);
std::vector<PiecewisePath> read_paths_binary_file(const std::string& path);

}  // namespace sigbasis
