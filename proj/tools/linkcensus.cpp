// Command-line front end: census runs, pairing listings, job workflows,
// pruning benchmarks, link validation and the counting bound.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "linkcensus/bound.hpp"
#include "linkcensus/errors.hpp"
#include "linkcensus/fpg.hpp"
#include "linkcensus/isosig.hpp"
#include "linkcensus/search.hpp"
#include "linkcensus/tri_format.hpp"
#include "linkcensus/validate.hpp"

using namespace linkcensus;

namespace {

struct Options {
    int size = 0;
    std::string mode = "all";
    int pruning = 2;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out;
    std::string in;
    int depth = 0;
    int threads = 1;
    bool sigs = false;
    bool graphs = false;
    std::string stats;
    std::vector<std::string> files;
};

SearchConfig config_of(const Options& o) {
    SearchConfig c;
    c.size = o.size;
    c.mode = parse_mode(o.mode);
    c.pruning = o.pruning;
    c.seed = o.seed;
    if (!o.seed_given)
        if (const char* env = std::getenv("LINKCENSUS_SEED")) {
            try {
                c.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw ParseError(std::string("LINKCENSUS_SEED is not a number: ") + env);
            }
        }
    c.check();
    return c;
}

// Output goes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw ParseError("cannot open " + path + " for writing");
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path.empty() || path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open " + path);
        ss << in.rdbuf();
    }
    return ss.str();
}

void write_census(std::ostream& os, const PairingResult& r, bool sigs) {
    for (const auto& [sig, orientable] : r.sigs) os << (sigs ? sig : to_tri(from_signature(sig))) << "\n";
}

void write_stats(const std::string& path, const CensusResult& r) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open " + path + " for writing");
    f << stats_csv(r);
}

int cmd_census(const Options& o) {
    const SearchConfig config = config_of(o);
    Sink sink(o.out);
    CensusResult result;
    if (o.threads > 1 || o.depth > 0) {
        result = enumerate_parallel(config, o.depth, o.threads);
        for (auto& p : result.pairings) write_census(sink.os(), p, o.sigs);
    } else {
        result = enumerate(config, [&](PairingResult& p) {
            write_census(sink.os(), p, o.sigs);
            p.sigs.clear();
        });
    }
    sink.os().flush();
    write_stats(o.stats, result);
    std::cout << summary_line(result) << "\n";
    return 0;
}

int cmd_fpg(const Options& o) {
    if (o.size < 1) throw PreconditionError("--size must be at least 1");
    Sink sink(o.out);
    const auto pairings = enumerate_pairings(o.size);
    for (const auto& fp : pairings) {
        sink.os() << to_fpg_line(fp) << "\n";
        if (o.graphs) sink.os() << "  " << describe(graph_of(fp)) << "\n";
    }
    std::cout << "n=" << o.size << " pairings=" << pairings.size() << "\n";
    return 0;
}

int cmd_jobs(const Options& o) {
    const SearchConfig config = config_of(o);
    const JobPlan plan = split_jobs(config, o.depth);
    Sink sink(o.out);
    for (const auto& f : plan.frontier) sink.os() << to_frontier_line(config, f) << "\n";
    for (const auto& j : plan.jobs) sink.os() << to_job_line(j) << "\n";
    std::cout << "jobs=" << plan.jobs.size() << " pairings=" << plan.frontier.size() << " depth=" << o.depth << "\n";
    return 0;
}

int cmd_run_job(const Options& o) {
    const std::string text = read_input(o.in);
    std::vector<Job> jobs;
    std::string frontier;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("job ", 0) == 0)
            jobs.push_back(parse_job_line(line));
        else if (line.rfind("frontier ", 0) == 0)
            frontier += line + "\n";
        else if (line.find_first_not_of(" \t\r") != std::string::npos)
            throw ParseError("unexpected line in job file: " + line);
    }
    if (jobs.empty() && frontier.empty()) throw ParseError("no jobs in input");

    std::vector<PairingResult> parts(jobs.size());
    const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, o.threads))
    for (long j = 0; j < count; ++j) {
        // Exceptions may not leave the parallel region; the serial rerun
        // below reports the failing job.
        try {
            parts[j] = run_job(jobs[j]);
        } catch (...) {
            parts[j].index = -1;
        }
    }
    for (long j = 0; j < count; ++j)
        if (parts[j].index == -1) parts[j] = run_job(jobs[j]);

    SearchConfig config = jobs.empty() ? SearchConfig{} : jobs.front().config;
    if (!frontier.empty()) {
        auto [fc, fparts] = parse_result_text(frontier);
        if (!jobs.empty() && !(fc == config)) throw ParseError("frontier and job lines disagree on configuration");
        config = fc;
        for (auto& p : fparts) parts.push_back(std::move(p));
    }
    for (const auto& j : jobs)
        if (!(j.config == config)) throw ParseError("job lines disagree on configuration");
    Sink sink(o.out);
    sink.os() << to_result_text(config, parts);
    return 0;
}

int cmd_merge(const Options& o) {
    if (o.files.empty()) throw PreconditionError("merge needs at least one result file");
    std::optional<SearchConfig> config;
    std::vector<PairingResult> parts;
    for (const auto& path : o.files) {
        auto [c, ps] = parse_result_text(read_input(path));
        if (config && !(*config == c)) throw ParseError(path + ": configuration differs from earlier files");
        config = c;
        for (auto& p : ps) parts.push_back(std::move(p));
    }
    const CensusResult result = merge(*config, std::move(parts));
    Sink sink(o.out);
    for (const auto& p : result.pairings) write_census(sink.os(), p, o.sigs);
    sink.os().flush();
    write_stats(o.stats, result);
    std::cout << summary_line(result) << "\n";
    return 0;
}

int cmd_bench(const Options& o) {
    SearchConfig base = config_of(o);
    std::vector<int> levels;
    if (base.size <= 4) levels.push_back(0);
    levels.push_back(1);
    levels.push_back(2);

    struct Row {
        int level;
        CensusResult result;
        double seconds;
    };
    std::vector<Row> rows;
    for (int level : levels) {
        SearchConfig c = base;
        c.pruning = level;
        const auto start = std::chrono::steady_clock::now();
        CensusResult r = enumerate(c);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rows.push_back({level, std::move(r), secs});
    }

    std::cout << "n=" << base.size << " mode=" << to_string(base.mode) << "\n";
    std::cout << std::left << std::setw(6) << "level" << std::right << std::setw(10) << "kept" << std::setw(14)
              << "nodes" << std::setw(14) << "prune_orient" << std::setw(14) << "prune_edge" << std::setw(14)
              << "prune_genus" << std::setw(12) << "leaves" << std::setw(12) << "seconds" << "\n";
    for (const auto& row : rows) {
        const auto s = row.result.stats();
        std::cout << std::left << std::setw(6) << row.level << std::right << std::setw(10) << row.result.total()
                  << std::setw(14) << s.nodes << std::setw(14) << s.prune_orient << std::setw(14) << s.prune_edge
                  << std::setw(14) << s.prune_genus << std::setw(12) << s.leaves << std::setw(12) << std::fixed
                  << std::setprecision(3) << row.seconds << "\n";
    }
    const Row& old_alg = rows[rows.size() - 2];
    const Row& new_alg = rows.back();
    const double node_ratio =
        static_cast<double>(new_alg.result.stats().nodes) / static_cast<double>(std::max<std::uint64_t>(1, old_alg.result.stats().nodes));
    std::cout << std::setprecision(4) << "node ratio level2/level1=" << node_ratio
              << " speedup level1/level2=" << std::setprecision(2) << old_alg.seconds / std::max(1e-9, new_alg.seconds)
              << "x\n";

    const auto reference = rows.front().result.signatures();
    for (const auto& row : rows) {
        if (row.result.signatures() != reference) {
            std::cerr << "error: level " << row.level << " kept a different census than level " << rows.front().level
                      << "\n";
            return 1;
        }
    }
    return 0;
}

int cmd_validate(const Options& o) {
    const std::string text = read_input(o.in);
    std::istringstream is(text);
    std::string line;
    int lineno = 0, bad = 0;
    Sink sink(o.out);
    auto& os = sink.os();
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == '#')
            continue;
        Triangulation tri;
        try {
            tri = parse_tri(line);
        } catch (const ParseError& e) {
            os << "line " << lineno << ": parse error: " << e.what() << "\n";
            ++bad;
            continue;
        }
        const auto links = validate::build_links(tri);
        if (tri.is_complete()) {
            const auto verdict = validate::is_3manifold(tri);
            os << "line " << lineno << ": " << (verdict.manifold ? "3-manifold" : "not a 3-manifold") << ": "
               << verdict.reason << "\n";
            if (!verdict.manifold) ++bad;
        } else {
            const auto edge = validate::check_edges(tri);
            os << "line " << lineno << ": partial (" << tri.glued_pairs() << " of " << 2 * tri.size()
               << " gluings), edges " << (edge ? "reversed" : "ok") << "\n";
        }
        for (std::size_t c = 0; c < links.size(); ++c) os << "  vertex " << c << ": " << validate::describe(links[c]) << "\n";
    }
    return bad == 0 ? 0 : 3;
}

int cmd_bound(const Options& o) {
    const BoundValue b = bound(o.size);
    std::cout << "n=" << o.size << " exact=" << b.numerator;
    if (b.denominator != "1") std::cout << "/" << b.denominator;
    std::cout << " approx=" << b.scientific << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enumerates closed 3-manifold triangulations by pruning on partial vertex links."};
    app.require_subcommand(1);
    Options o;

    auto add_search_flags = [&](CLI::App* sub) {
        sub->add_option("--size,-n", o.size, "Number of tetrahedra")->required()->check(CLI::Range(1, 61));
        sub->add_option("--mode", o.mode, "all | orientable | nonorientable")
            ->check(CLI::IsMember({"all", "orientable", "nonorientable"}));
        sub->add_option("--pruning", o.pruning, "0 none, 1 edges + orientability, 2 also boundary cycles")
            ->check(CLI::Range(0, 2));
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t s) { o.seed = s, o.seed_given = true; },
            "Skip list seed (default $LINKCENSUS_SEED or 0)");
    };

    auto* census = app.add_subcommand("census", "Enumerate triangulations");
    add_search_flags(census);
    census->add_option("--out", o.out, "Output path (default stdout)");
    census->add_flag("--sigs", o.sigs, "Write signatures instead of gluing tables");
    census->add_option("--stats", o.stats, "Write per-pairing statistics CSV");
    census->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    census->add_option("--depth", o.depth, "Job split depth for threaded runs")->check(CLI::NonNegativeNumber);

    auto* fpg = app.add_subcommand("fpg", "List canonical face pairings");
    fpg->add_option("--size,-n", o.size, "Number of tetrahedra")->required()->check(CLI::Range(1, 61));
    fpg->add_option("--out", o.out, "Output path (default stdout)");
    fpg->add_flag("--graphs", o.graphs, "Also describe each pairing graph");

    auto* jobs = app.add_subcommand("jobs", "Split a census into job lines");
    add_search_flags(jobs);
    jobs->add_option("--depth", o.depth, "Number of gluings fixed per job")->check(CLI::NonNegativeNumber);
    jobs->add_option("--out", o.out, "Output path (default stdout)");

    auto* run = app.add_subcommand("run-job", "Run job lines, writing a result file");
    run->add_option("--in", o.in, "Job file (default stdin)");
    run->add_option("--out", o.out, "Output path (default stdout)");
    run->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* merge_cmd = app.add_subcommand("merge", "Merge result files into one census");
    merge_cmd->add_option("files", o.files, "Result files")->required();
    merge_cmd->add_option("--out", o.out, "Output path (default stdout)");
    merge_cmd->add_flag("--sigs", o.sigs, "Write signatures instead of gluing tables");
    merge_cmd->add_option("--stats", o.stats, "Write per-pairing statistics CSV");

    auto* bench = app.add_subcommand("bench", "Compare pruning levels");
    add_search_flags(bench);

    auto* val = app.add_subcommand("validate", "Check .tri lines from scratch");
    val->add_option("--in", o.in, "Input file (default stdin)");
    val->add_option("--out", o.out, "Output path (default stdout)");

    auto* bnd = app.add_subcommand("bound", "Lower bound on the number of triangulations");
    bnd->add_option("--size,-n,size", o.size, "Number of tetrahedra")->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*census) return cmd_census(o);
        if (*fpg) return cmd_fpg(o);
        if (*jobs) return cmd_jobs(o);
        if (*run) return cmd_run_job(o);
        if (*merge_cmd) return cmd_merge(o);
        if (*bench) return cmd_bench(o);
        if (*val) return cmd_validate(o);
        if (*bnd) return cmd_bound(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
