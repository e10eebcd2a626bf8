#include "linkcensus/search.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <sstream>

#include "linkcensus/dsu.hpp"
#include "linkcensus/errors.hpp"
#include "linkcensus/isosig.hpp"
#include "linkcensus/linktrack.hpp"
#include "linkcensus/triangulation.hpp"
#include "linkcensus/validate.hpp"

namespace linkcensus {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::all: return "all";
        case Mode::orientable: return "orientable";
        case Mode::nonorientable: return "nonorientable";
    }
    return "?";
}

Mode parse_mode(std::string_view s) {
    if (s == "all") return Mode::all;
    if (s == "orientable") return Mode::orientable;
    if (s == "nonorientable" || s == "non-orientable") return Mode::nonorientable;
    throw ParseError("unknown mode '" + std::string(s) + "'");
}

void SearchConfig::check() const {
    if (size < 1) throw PreconditionError("size must be at least 1");
    if (size > 61) throw PreconditionError("size must be at most 61");
    if (pruning < 0 || pruning > 2) throw PreconditionError("pruning level must be 0, 1 or 2");
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
    nodes += o.nodes;
    prune_orient += o.prune_orient;
    prune_edge += o.prune_edge;
    prune_genus += o.prune_genus;
    leaves += o.leaves;
    peak_boundary = std::max(peak_boundary, o.peak_boundary);
    return *this;
}

void PairingResult::recount() {
    total = sigs.size();
    orientable = static_cast<std::uint64_t>(std::count_if(sigs.begin(), sigs.end(), [](const auto& kv) { return kv.second; }));
}

std::uint64_t CensusResult::total() const {
    std::uint64_t t = 0;
    for (const auto& p : pairings) t += p.total;
    return t;
}

std::uint64_t CensusResult::orientable() const {
    std::uint64_t t = 0;
    for (const auto& p : pairings) t += p.orientable;
    return t;
}

SearchStats CensusResult::stats() const {
    SearchStats s;
    for (const auto& p : pairings) s += p.stats;
    return s;
}

std::vector<std::string> CensusResult::signatures() const {
    std::vector<std::string> out;
    for (const auto& p : pairings)
        for (const auto& kv : p.sigs) out.push_back(kv.first);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

class Searcher {
public:
    Searcher(const SearchConfig& config, const FacePairing& pairing, int index)
        : config_(config), pairs_(pairing.pairs()), tri_(config.size), tets_(config.size) {
        result_.index = index;
        if (config.pruning >= 1) link_.emplace(config.size, config.pruning, config.seed);
        for (const auto& [a, b] : pairs_) {
            std::array<Perm4, 6> row{};
            for (int k = 0; k < 6; ++k) row[k] = extend_face_perm(a.face, b.face, Perm3::from_index(k));
            perms_.push_back(row);
        }
    }

    int depth_limit() const { return static_cast<int>(pairs_.size()); }

    void replay(const std::vector<GluingChoice>& prefix) {
        if (static_cast<int>(prefix.size()) > depth_limit()) throw CorruptJob("prefix is longer than the pairing");
        for (std::size_t k = 0; k < prefix.size(); ++k) {
            const auto& c = prefix[k];
            const auto& [a, b] = pairs_[k];
            if (c.slot != a.index() || c.tet != b.tet)
                throw CorruptJob("prefix step " + std::to_string(k) + " does not match the pairing");
            const auto it = std::find_if(perms_[k].begin(), perms_[k].end(), [&](Perm4 p) { return p.index() == c.perm; });
            if (it == perms_[k].end())
                throw CorruptJob("prefix step " + std::to_string(k) + " has a perm that does not glue the pair");
            if (!try_glue(static_cast<int>(k), static_cast<int>(it - perms_[k].begin()), false))
                throw CorruptJob("prefix step " + std::to_string(k) + " fails its own pruning tests");
        }
    }

    /// Searches below the current depth; nodes at depth `stop` are handed to
    /// `frontier` instead of being expanded.
    void run(int stop, const std::function<void(const std::vector<GluingChoice>&)>& frontier) {
        stop_ = stop;
        frontier_ = &frontier;
        recurse(static_cast<int>(path_.size()));
    }

    PairingResult finish() {
        result_.recount();
        return std::move(result_);
    }

private:
    struct Frame {
        LinkState::Token token;
        SignedDsu::Mark tets;
    };

    void recurse(int k) {
        if (k == stop_ && frontier_ && *frontier_) {
            (*frontier_)(path_);
            return;
        }
        if (k == depth_limit()) {
            leaf();
            return;
        }
        for (int p = 0; p < 6; ++p) {
            if (!try_glue(k, p, true)) continue;
            recurse(k + 1);
            unglue(k);
        }
    }

    bool try_glue(int k, int p, bool count) {
        const auto& [a, b] = pairs_[k];
        const Perm4 sigma = perms_[k][p];
        auto& st = result_.stats;
        if (count) {
            ++st.nodes;
            if (link_) st.peak_boundary = std::max(st.peak_boundary, link_->boundary_edges());
        }
        const auto mark = tets_.checkpoint();
        LinkState::Token token{};
        if (config_.pruning >= 1) {
            if (config_.mode == Mode::orientable &&
                tets_.unite(a.tet, b.tet, sigma.is_even() ? -1 : 1) == SignedDsu::Outcome::conflict) {
                if (count) ++st.prune_orient;
                return false;
            }
            const auto r = link_->glue_faces(a, b, sigma);
            if (!r.ok()) {
                tets_.rollback(mark);
                if (count) {
                    if (r.verdict == Verdict::prune_edge) ++st.prune_edge;
                    if (r.verdict == Verdict::prune_orient) ++st.prune_orient;
                    if (r.verdict == Verdict::prune_genus) ++st.prune_genus;
                }
                return false;
            }
            token = r.token;
        }
        tri_.glue(a, b, sigma);
        frames_.push_back({token, mark});
        path_.push_back({a.index(), b.tet, sigma.index()});
        return true;
    }

    void unglue(int k) {
        const Frame f = frames_.back();
        frames_.pop_back();
        path_.pop_back();
        tri_.unglue(pairs_[k].first);
        if (link_) link_->unglue_faces(f.token);
        tets_.rollback(f.tets);
    }

    void leaf() {
        ++result_.stats.leaves;
        if (config_.pruning == 0) {
            if (!validate::is_3manifold(tri_).manifold) return;
        } else if (config_.pruning == 1) {
            // Closed orientable links with unreversed edges: every link is a
            // sphere exactly when the Euler characteristic of the whole
            // complex, V - E + F - T = V - E + n, vanishes.
            if (link_->edge_class_count() != static_cast<std::size_t>(config_.size) + link_->link_components()) return;
        }
        const bool orientable = is_orientable(tri_);
        if (config_.mode == Mode::orientable && !orientable) return;
        if (config_.mode == Mode::nonorientable && orientable) return;
        result_.sigs.emplace(iso_signature(tri_), orientable);
    }

    SearchConfig config_;
    std::vector<std::pair<FaceSlot, FaceSlot>> pairs_;
    std::vector<std::array<Perm4, 6>> perms_;
    Triangulation tri_;
    std::optional<LinkState> link_;
    SignedDsu tets_;
    std::vector<Frame> frames_;
    std::vector<GluingChoice> path_;
    PairingResult result_;
    int stop_ = -1;
    const std::function<void(const std::vector<GluingChoice>&)>* frontier_ = nullptr;
};

// Small key=value reader for the job and result formats.
struct Fields {
    std::map<std::string, std::string, std::less<>> values;

    explicit Fields(std::string_view text) {
        std::istringstream is{std::string(text)};
        std::string tok;
        while (is >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError("expected key=value, got '" + tok + "'");
            values[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }

    std::string_view get(std::string_view key) const {
        const auto it = values.find(key);
        if (it == values.end()) throw ParseError("missing field '" + std::string(key) + "'");
        return it->second;
    }

    std::uint64_t number(std::string_view key) const {
        const std::string s(get(key));
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("field '" + std::string(key) + "' is not a number: '" + s + "'");
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw ParseError("field '" + std::string(key) + "' is out of range");
        }
    }
};

std::string config_fields(const SearchConfig& c) {
    return "size=" + std::to_string(c.size) + " mode=" + to_string(c.mode) + " pruning=" + std::to_string(c.pruning) +
           " seed=" + std::to_string(c.seed);
}

SearchConfig parse_config(const Fields& f) {
    SearchConfig c;
    c.size = static_cast<int>(f.number("size"));
    c.mode = parse_mode(f.get("mode"));
    c.pruning = static_cast<int>(f.number("pruning"));
    c.seed = f.number("seed");
    try {
        c.check();
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
    return c;
}

std::string stats_fields(const SearchStats& s) {
    return "nodes=" + std::to_string(s.nodes) + " prune_orient=" + std::to_string(s.prune_orient) +
           " prune_edge=" + std::to_string(s.prune_edge) + " prune_genus=" + std::to_string(s.prune_genus) +
           " leaves=" + std::to_string(s.leaves) + " peak_b=" + std::to_string(s.peak_boundary);
}

SearchStats parse_stats(const Fields& f) {
    SearchStats s;
    s.nodes = f.number("nodes");
    s.prune_orient = f.number("prune_orient");
    s.prune_edge = f.number("prune_edge");
    s.prune_genus = f.number("prune_genus");
    s.leaves = f.number("leaves");
    s.peak_boundary = static_cast<int>(f.number("peak_b"));
    return s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view first_word(std::string_view s) { return s.substr(0, s.find(' ')); }

}  // namespace

CensusResult enumerate(const SearchConfig& config, const std::function<void(PairingResult&)>& sink) {
    config.check();
    CensusResult out{config, {}};
    const auto pairings = enumerate_pairings(config.size);
    for (std::size_t i = 0; i < pairings.size(); ++i) {
        Searcher s(config, pairings[i], static_cast<int>(i));
        s.run(-1, {});
        PairingResult r = s.finish();
        if (sink) sink(r);
        out.pairings.push_back(std::move(r));
    }
    return out;
}

JobPlan split_jobs(const SearchConfig& config, int depth) {
    config.check();
    if (depth < 0) throw PreconditionError("job depth must be non-negative");
    JobPlan plan;
    const auto pairings = enumerate_pairings(config.size);
    for (std::size_t i = 0; i < pairings.size(); ++i) {
        Searcher s(config, pairings[i], static_cast<int>(i));
        const int stop = std::min(depth, s.depth_limit());
        const std::function<void(const std::vector<GluingChoice>&)> emit = [&](const std::vector<GluingChoice>& prefix) {
            plan.jobs.push_back({config, static_cast<int>(i), pairings[i], prefix});
        };
        s.run(stop, emit);
        plan.frontier.push_back(s.finish());
    }
    return plan;
}

PairingResult run_job(const Job& job) {
    job.config.check();
    if (job.pairing.size() != job.config.size || !job.pairing.is_complete())
        throw CorruptJob("job pairing does not match its size");
    Searcher s(job.config, job.pairing, job.pairing_index);
    s.replay(job.prefix);
    s.run(-1, {});
    return s.finish();
}

CensusResult merge(const SearchConfig& config, std::vector<PairingResult> parts) {
    std::map<int, PairingResult> by_index;
    for (auto& p : parts) {
        auto [it, fresh] = by_index.try_emplace(p.index);
        auto& dst = it->second;
        dst.index = p.index;
        dst.stats += p.stats;
        if (dst.sigs.empty())
            dst.sigs = std::move(p.sigs);
        else
            dst.sigs.merge(p.sigs);
    }
    CensusResult out{config, {}};
    for (auto& [index, r] : by_index) {
        r.recount();
        out.pairings.push_back(std::move(r));
    }
    return out;
}

CensusResult enumerate_parallel(const SearchConfig& config, int depth, int threads) {
    JobPlan plan = split_jobs(config, depth);
    std::vector<PairingResult> results(plan.jobs.size());
    std::exception_ptr failure;
    const long count = static_cast<long>(plan.jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads))
    for (long j = 0; j < count; ++j) {
        try {
            results[j] = run_job(plan.jobs[j]);
        } catch (...) {
#pragma omp critical(linkcensus_job_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& f : plan.frontier) results.push_back(std::move(f));
    return merge(config, std::move(results));
}

std::string to_job_line(const Job& job) {
    std::string out = "job " + config_fields(job.config) + " pairing=" + std::to_string(job.pairing_index) + " | " +
                      to_fpg_line(job.pairing) + " |";
    for (const auto& c : job.prefix)
        out += " " + std::to_string(c.slot) + "=" + std::to_string(c.tet) + ":" + std::to_string(c.perm);
    return out;
}

Job parse_job_line(std::string_view line) {
    line = trim(line);
    if (first_word(line) != "job") throw ParseError("not a job line");
    const auto bar1 = line.find('|');
    const auto bar2 = bar1 == std::string_view::npos ? bar1 : line.find('|', bar1 + 1);
    if (bar2 == std::string_view::npos) throw ParseError("job line needs three '|'-separated parts");
    const Fields head(line.substr(4, bar1 - 4));
    Job job;
    job.config = parse_config(head);
    job.pairing_index = static_cast<int>(head.number("pairing"));
    job.pairing = parse_fpg_line(line.substr(bar1 + 1, bar2 - bar1 - 1));
    if (job.pairing.size() != job.config.size) throw ParseError("job pairing size does not match its config");
    std::istringstream is{std::string(line.substr(bar2 + 1))};
    std::string tok;
    while (is >> tok) {
        GluingChoice c;
        char eq = 0, colon = 0;
        std::istringstream ts(tok);
        if (!(ts >> c.slot >> eq >> c.tet >> colon >> c.perm) || eq != '=' || colon != ':' || ts.peek() != EOF)
            throw ParseError("bad prefix token '" + tok + "'");
        if (c.slot < 0 || c.slot >= 4 * job.config.size || c.tet < 0 || c.tet >= job.config.size || c.perm < 0 ||
            c.perm >= 24)
            throw ParseError("prefix token '" + tok + "' out of range");
        job.prefix.push_back(c);
    }
    return job;
}

std::string to_frontier_line(const SearchConfig& config, const PairingResult& r) {
    return "frontier " + config_fields(config) + " pairing=" + std::to_string(r.index) + " " + stats_fields(r.stats);
}

std::string to_result_text(const SearchConfig& config, const std::vector<PairingResult>& parts) {
    std::ostringstream os;
    os << "result " << config_fields(config) << "\n";
    for (const auto& p : parts) {
        os << "pairing " << p.index << " " << stats_fields(p.stats) << "\n";
        for (const auto& [sig, orientable] : p.sigs) os << "sig " << p.index << " " << (orientable ? 'o' : 'n') << " " << sig << "\n";
    }
    return os.str();
}

std::pair<SearchConfig, std::vector<PairingResult>> parse_result_text(std::string_view text) {
    std::optional<SearchConfig> config;
    std::map<int, PairingResult> by_index;
    auto adopt = [&](const SearchConfig& c) {
        if (config && !(*config == c)) throw ParseError("results from different configurations");
        config = c;
    };
    std::istringstream is{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const std::string_view kind = first_word(line);
        const std::string_view rest = line.size() > kind.size() ? line.substr(kind.size() + 1) : std::string_view{};
        try {
            if (kind == "result") {
                adopt(parse_config(Fields(rest)));
            } else if (kind == "frontier") {
                const Fields f(rest);
                adopt(parse_config(f));
                auto& r = by_index[static_cast<int>(f.number("pairing"))];
                r.index = static_cast<int>(f.number("pairing"));
                r.stats += parse_stats(f);
            } else if (kind == "pairing") {
                const auto sp = rest.find(' ');
                const int index = std::stoi(std::string(rest.substr(0, sp)));
                auto& r = by_index[index];
                r.index = index;
                r.stats += parse_stats(Fields(sp == std::string_view::npos ? std::string_view{} : rest.substr(sp + 1)));
            } else if (kind == "sig") {
                std::istringstream ls{std::string(rest)};
                int index = -1;
                std::string flag, sig;
                if (!(ls >> index >> flag >> sig) || (flag != "o" && flag != "n")) throw ParseError("bad sig line");
                auto& r = by_index[index];
                r.index = index;
                r.sigs.emplace(sig, flag == "o");
            } else if (kind == "job") {
                continue;
            } else {
                throw ParseError("unknown record '" + std::string(kind) + "'");
            }
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        } catch (const std::logic_error& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!config) throw ParseError("no result header");
    std::vector<PairingResult> parts;
    for (auto& [index, r] : by_index) {
        r.recount();
        parts.push_back(std::move(r));
    }
    return {*config, std::move(parts)};
}

std::string summary_line(const CensusResult& r) {
    return "n=" + std::to_string(r.config.size) + " mode=" + to_string(r.config.mode) +
           " total=" + std::to_string(r.total()) + " orientable=" + std::to_string(r.orientable()) +
           " nonorientable=" + std::to_string(r.nonorientable()) + " nodes=" + std::to_string(r.stats().nodes);
}

std::string stats_csv(const CensusResult& r) {
    std::ostringstream os;
    os << "pairing_index,nodes,prune_orient,prune_edge,prune_genus,leaves,kept\n";
    for (const auto& p : r.pairings)
        os << p.index << "," << p.stats.nodes << "," << p.stats.prune_orient << "," << p.stats.prune_edge << ","
           << p.stats.prune_genus << "," << p.stats.leaves << "," << p.total << "\n";
    return os.str();
}

}  // namespace linkcensus
