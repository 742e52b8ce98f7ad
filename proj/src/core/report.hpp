#pragma once
// Request orchestration: compute/compare reports, the corpus runner and CSV
// flattening. Reports are deterministic given inputs and seed; the timing
// field is excluded from the report hash.

#include <cstdint>
#include <string>
#include <vector>

#include "io.hpp"

namespace homct {

inline constexpr const char* kToolVersion = "homct 1.0.0";

enum class Theory { Tor, Ext, Tate, Stable, Complete, Compare };
const char* theory_name(Theory t);
Theory parse_theory(const std::string& s);

struct ComputeRequest {
    std::string algebra;   // file path or fixture name (A1..A4)
    std::string module_m;  // file path or token: k, R, DR, R/(x,...)
    std::string module_n;
    Theory theory = Theory::Compare;
    long lo = 0, hi = 0;
    std::size_t depth = 5;
    std::size_t window = 2;
    std::uint64_t seed = 1;
};

/// Throws InvalidArgument unless the range is finite and depth >= window >= 1.
void validate_request(const ComputeRequest& req);
Json request_to_json(const ComputeRequest& req);
ComputeRequest request_from_json(const Json& j);

struct RunResult {
    Json report;
    bool ok = true;  // no invariant violations and no internal mismatches
};

RunResult run_compute(const ComputeRequest& req);

struct CorpusRequest {
    std::uint64_t seed = 1;
    std::size_t count = 6;     // modules per algebra and side
    std::size_t max_dim = 6;
    std::vector<std::string> algebras{"A1", "A2", "A3", "A4"};
};
Json corpus_request_to_json(const CorpusRequest& req);
CorpusRequest corpus_request_from_json(const Json& j);

RunResult run_corpus(const CorpusRequest& req);

/// Algebra from a file path or a fixture name (A1..A4).
AlgebraPtr resolve_algebra(const std::string& spec);
/// Module from a file path or a token (k, R, DR, R/(x,...)) on the given side.
/// Files on the other side are accepted over commutative algebras.
FdModule resolve_module(const std::string& spec, const AlgebraPtr& a, Side side);

/// Resolution dump of a module with input hash; see resolution_dump.
Json run_dump_resolution(const std::string& algebra, const std::string& module, Side side, std::size_t depth);

/// SHA-256 of the canonical dump of `report` without its "timing" and "report_hash" fields.
std::string report_hash(const Json& report);
/// Sets report["report_hash"].
void seal_report(Json& report);

/// Dims tables as CSV, one row per (theory, degree) or (suite, algebra).
std::string report_to_csv(const Json& report);

/// Threads used for request-level parallelism: HOMCT_THREADS, capped by the hardware.
std::size_t worker_threads();

}  // namespace homct
