#pragma once

// Reproducible runs behind the command-line tool: a RunConfig fully
// determines the output bytes.

#include "dysongraph/graphon.hpp"
#include "dysongraph/io.hpp"
#include "dysongraph/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dysongraph {

enum class Format { json, csv };

std::string to_string(Format f);
/// "json" or "csv"; throws ParseError otherwise.
Format parse_format(const std::string& s);

struct RunConfig {
    /// solve, renorm, graphon, tutte, symanzik, haar or trace.
    std::string subcommand;
    /// Parsed input documents, embedded so the config alone reproduces the run.
    std::optional<Json> spec;
    std::optional<Json> rules;
    /// Second graphon for graphon runs.
    std::optional<Json> against;
    /// N for solve, m elsewhere, the depth for haar.
    std::optional<std::size_t> order;
    std::optional<Rational> coupling;
    std::uint64_t seed = 0;
    /// Heuristic results are still flagged exact when they are certified.
    Mode mode = Mode::heuristic;
    Format format = Format::json;
    /// Monte-Carlo samples (haar) or random weight assignments (symanzik).
    std::optional<std::size_t> samples;
    std::vector<Rational> radii;
    /// Largest pattern size for density fingerprints.
    std::size_t max_edges = 3;
    /// Coupling-flow steps for trace.
    std::size_t steps = 6;
    bool tree_formula = false;
    /// Execution only: never serialized, never changes the output.
    unsigned threads = 1;

    Json to_json() const;
    /// Inverse of to_json; threads stays 1.
    static RunConfig from_json(const Json& j);
};

/// 64-bit FNV-1a of the compact serialized config, as 16 hex digits.
std::string config_hash(const RunConfig& config);

struct RunResult {
    Json document;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    /// CSV trailer lines, written after the table as "# ..." comments.
    std::vector<std::string> notes;
    bool pass = true;
};

/// Throws the library errors of the underlying operations on bad input.
RunResult run(const RunConfig& config);

/// JSON document, or a "# {header}" line followed by the CSV table.
std::string render(const RunResult& result, Format format);

/// 0 if every check passed, 1 otherwise.
inline int exit_code(const RunResult& result) { return result.pass ? 0 : 1; }

}  // namespace dysongraph
