#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "linkcensus/fpg.hpp"

namespace linkcensus {

enum class Mode { all, orientable, nonorientable };
const char* to_string(Mode m);
Mode parse_mode(std::string_view s);  // throws ParseError

struct SearchConfig {
    int size = 1;
    Mode mode = Mode::all;
    /// 0: no incremental tests, leaves checked from scratch.
    /// 1: edge reversal and link orientability.
    /// 2: level 1 plus the boundary-cycle test that keeps links punctured spheres.
    int pruning = 2;
    std::uint64_t seed = 0;

    void check() const;  // throws PreconditionError
    friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

struct SearchStats {
    std::uint64_t nodes = 0;  // gluings attempted
    std::uint64_t prune_orient = 0;
    std::uint64_t prune_edge = 0;
    std::uint64_t prune_genus = 0;
    std::uint64_t leaves = 0;  // complete gluings reached
    int peak_boundary = 0;     // largest boundary edge count seen (level 2)

    SearchStats& operator+=(const SearchStats& o);
    friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

/// Results for one canonical face pairing. `sigs` maps each kept
/// signature to whether it is orientable; callers streaming a large census
/// may clear it once counted.
struct PairingResult {
    int index = 0;
    SearchStats stats;
    std::map<std::string, bool> sigs;
    std::uint64_t total = 0;
    std::uint64_t orientable = 0;

    void recount();
};

struct CensusResult {
    SearchConfig config;
    std::vector<PairingResult> pairings;  // by pairing index

    std::uint64_t total() const;
    std::uint64_t orientable() const;
    std::uint64_t nonorientable() const { return total() - orientable(); }
    SearchStats stats() const;
    /// All kept signatures, sorted.
    std::vector<std::string> signatures() const;
};

/// Full census. `sink`, when given, sees each pairing's result as soon as
/// it is finished, before it is stored.
CensusResult enumerate(const SearchConfig& config, const std::function<void(PairingResult&)>& sink = {});

/// One gluing choice of a prefix: slot `slot` is glued to a face of
/// tetrahedron `tet` by the Perm4 with index `perm`.
struct GluingChoice {
    int slot = 0;
    int tet = 0;
    int perm = 0;
    friend bool operator==(const GluingChoice&, const GluingChoice&) = default;
};

struct Job {
    SearchConfig config;
    int pairing_index = 0;
    FacePairing pairing;
    std::vector<GluingChoice> prefix;
};

/// Jobs at a fixed depth, plus per-pairing statistics for the part of the
/// tree above that depth, so that merging everything reproduces the
/// statistics of a direct run.
struct JobPlan {
    std::vector<Job> jobs;
    std::vector<PairingResult> frontier;
};

JobPlan split_jobs(const SearchConfig& config, int depth);
/// Replays the prefix and searches below it. Throws CorruptJob when the
/// prefix does not replay.
PairingResult run_job(const Job& job);
/// Combines disjoint partial results: statistics add, signature sets unite.
CensusResult merge(const SearchConfig& config, std::vector<PairingResult> parts);

/// split_jobs, then the jobs on `threads` OpenMP threads, then merge.
CensusResult enumerate_parallel(const SearchConfig& config, int depth, int threads);

std::string to_job_line(const Job& job);
Job parse_job_line(std::string_view line);
std::string to_frontier_line(const SearchConfig& config, const PairingResult& r);

/// Text form of a (partial) census: a header, one stats line per pairing
/// and one line per signature.
std::string to_result_text(const SearchConfig& config, const std::vector<PairingResult>& parts);
/// Parses result text; job files' `frontier` lines are accepted too.
std::pair<SearchConfig, std::vector<PairingResult>> parse_result_text(std::string_view text);

std::string summary_line(const CensusResult& r);
std::string stats_csv(const CensusResult& r);

}  // namespace linkcensus
