#include "linkcensus/fpg.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <sstream>

#include "linkcensus/errors.hpp"

namespace linkcensus {

FacePairing FacePairing::from_partners(int size, std::vector<int> partner) {
    if (static_cast<int>(partner.size()) != 4 * size) throw PreconditionError("pairing has the wrong length");
    for (int s = 0; s < 4 * size; ++s) {
        const int p = partner[s];
        if (p < 0) continue;
        if (p >= 4 * size || p == s || partner[p] != s)
            throw PreconditionError("pairing is not an involution at slot " + std::to_string(s));
    }
    FacePairing fp;
    fp.size_ = size;
    fp.partner_ = std::move(partner);
    return fp;
}

void FacePairing::pair(int a, int b) {
    if (a == b || partner_[a] >= 0 || partner_[b] >= 0) throw PreconditionError("cannot pair these slots");
    partner_[a] = b;
    partner_[b] = a;
}

bool FacePairing::is_complete() const {
    return std::none_of(partner_.begin(), partner_.end(), [](int p) { return p < 0; });
}

bool FacePairing::is_connected() const {
    if (size_ == 0) return true;
    std::vector<bool> seen(size_, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            const int p = partner_[4 * t + f];
            if (p >= 0 && !seen[p / 4]) {
                seen[p / 4] = true;
                ++reached;
                stack.push_back(p / 4);
            }
        }
    }
    return reached == size_;
}

std::vector<std::pair<FaceSlot, FaceSlot>> FacePairing::pairs() const {
    std::vector<std::pair<FaceSlot, FaceSlot>> out;
    for (int s = 0; s < 4 * size_; ++s)
        if (partner_[s] > s) out.push_back({FaceSlot::from_index(s), FaceSlot::from_index(partner_[s])});
    return out;
}

FacePairing pairing_of(const Triangulation& tri) {
    FacePairing fp(tri.size());
    for (int s = 0; s < tri.slot_count(); ++s) {
        const FaceSlot a = FaceSlot::from_index(s);
        if (tri.is_glued(a) && tri.partner(a).index() > s) fp.pair(s, tri.partner(a).index());
    }
    return fp;
}

int FacePairingGraph::degree(int node) const {
    return 2 * loops[node] + std::accumulate(multiplicity[node].begin(), multiplicity[node].end(), 0);
}

FacePairingGraph graph_of(const FacePairing& fp) {
    FacePairingGraph g;
    g.nodes = fp.size();
    g.loops.assign(g.nodes, 0);
    g.multiplicity.assign(g.nodes, std::vector<int>(g.nodes, 0));
    for (auto [a, b] : fp.pairs()) {
        if (a.tet == b.tet) {
            ++g.loops[a.tet];
        } else {
            ++g.multiplicity[a.tet][b.tet];
            ++g.multiplicity[b.tet][a.tet];
        }
    }
    return g;
}

namespace {

// Branch-and-bound search for the lexicographically least partner sequence.
// Tetrahedra are labelled in order of discovery; whenever a slot's partner
// face has not been labelled yet it receives the smallest free label, which
// is the only choice that can keep the sequence minimal. The remaining
// freedom, the arrangement of a tetrahedron's still-unlabelled faces at the
// moment it is processed, is branched on.
class PairingCanonicaliser {
public:
    explicit PairingCanonicaliser(const FacePairing& fp)
        : fp_(fp), n_(fp.size()), unpaired_(4 * fp.size()), label_(n_, -1), old_of_(n_, -1),
          new_face_(4 * n_, -1), faces_used_(n_, 0), cur_(4 * n_), best_(4 * n_) {}

    std::vector<int> run() {
        process(0, 0, false);
        return best_;
    }

private:
    struct Trail {
        int old_slot;     // slot whose new face was assigned
        bool new_label;   // tetrahedron was labelled by this assignment
    };

    void assign_face(int old_slot) {
        const int t = old_slot / 4;
        bool fresh = false;
        if (label_[t] < 0) {
            label_[t] = next_label_;
            old_of_[next_label_++] = t;
            fresh = true;
        }
        new_face_[old_slot] = faces_used_[t]++;
        trail_.push_back({old_slot, fresh});
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            const Trail tr = trail_.back();
            trail_.pop_back();
            const int t = tr.old_slot / 4;
            new_face_[tr.old_slot] = -1;
            --faces_used_[t];
            if (tr.new_label) {
                old_of_[--next_label_] = -1;
                label_[t] = -1;
            }
        }
    }

    void process(int i, int pos, bool smaller) {
        if (i == n_) {
            if (smaller || !have_best_) {
                best_ = cur_;
                have_best_ = true;
            }
            return;
        }
        if (old_of_[i] < 0) {
            // No tetrahedron has been discovered with this label: the pairing
            // is disconnected here (or i == 0), so any unlabelled one may come next.
            for (int t = 0; t < n_; ++t) {
                if (label_[t] >= 0) continue;
                label_[t] = next_label_;
                old_of_[next_label_++] = t;
                arrange(i, pos, smaller);
                old_of_[--next_label_] = -1;
                label_[t] = -1;
            }
            return;
        }
        arrange(i, pos, smaller);
    }

    void arrange(int i, int pos, bool smaller) {
        const int t = old_of_[i];
        std::array<int, 4> free_faces{};
        int nfree = 0;
        for (int f = 0; f < 4; ++f)
            if (new_face_[4 * t + f] < 0) free_faces[nfree++] = f;
        std::sort(free_faces.begin(), free_faces.begin() + nfree);
        do {
            const std::size_t mark = trail_.size();
            for (int k = 0; k < nfree; ++k) assign_face(4 * t + free_faces[k]);
            emit(i, pos, smaller);
            undo_to(mark);
        } while (std::next_permutation(free_faces.begin(), free_faces.begin() + nfree));
    }

    void emit(int i, int pos, bool smaller) {
        const int t = old_of_[i];
        std::array<int, 4> old_face{};
        for (int f = 0; f < 4; ++f) old_face[new_face_[4 * t + f]] = f;
        const std::size_t mark = trail_.size();
        for (int fn = 0; fn < 4; ++fn) {
            const int partner = fp_.partner(4 * t + old_face[fn]);
            int value = unpaired_;
            if (partner >= 0) {
                if (new_face_[partner] < 0) assign_face(partner);
                value = 4 * label_[partner / 4] + new_face_[partner];
            }
            if (!smaller && have_best_) {
                if (value > best_[pos]) {
                    undo_to(mark);
                    return;
                }
                if (value < best_[pos]) smaller = true;
            }
            cur_[pos++] = value;
        }
        process(i + 1, pos, smaller);
        undo_to(mark);
    }

    const FacePairing& fp_;
    int n_;
    int unpaired_;
    std::vector<int> label_, old_of_, new_face_, faces_used_;
    int next_label_ = 0;
    std::vector<Trail> trail_;
    std::vector<int> cur_, best_;
    bool have_best_ = false;
};

// Orderly generation of 4-regular multigraphs with loops. A labelled graph is
// coded column by column (multiplicities to earlier vertices, then the loop
// count); canonical graphs are those whose code is maximal over all vertex
// orders. Every prefix of a canonical graph is canonical, so vertices are
// added one at a time and non-canonical prefixes are discarded.
class GraphGenerator {
public:
    explicit GraphGenerator(int n) : n_(n), mult_(n, std::vector<int>(n, 0)), loops_(n, 0), deg_(n, 0) {}

    std::vector<FacePairingGraph> run() {
        extend(0);
        return out_;
    }

private:
    void extend(int j) {
        if (j == n_) {
            if (connected(n_)) out_.push_back(snapshot());
            return;
        }
        choose_column(j, 0);
    }

    // Chooses multiplicities from vertex j to each earlier vertex i, then loops.
    void choose_column(int j, int i) {
        if (i == j) {
            for (int l = 0; 2 * l + deg_[j] <= 4; ++l) {
                loops_[j] = l;
                deg_[j] += 2 * l;
                if (feasible(j) && is_canonical_prefix(j + 1)) extend(j + 1);
                deg_[j] -= 2 * l;
                loops_[j] = 0;
            }
            return;
        }
        for (int m = 0; deg_[i] + m <= 4 && deg_[j] + m <= 4; ++m) {
            mult_[i][j] = mult_[j][i] = m;
            deg_[i] += m;
            deg_[j] += m;
            choose_column(j, i + 1);
            deg_[i] -= m;
            deg_[j] -= m;
        }
        mult_[i][j] = mult_[j][i] = 0;
    }

    bool feasible(int j) const {
        const int remaining = n_ - 1 - j;
        int deficit = 0;
        for (int i = 0; i <= j; ++i) deficit += 4 - deg_[i];
        if (deficit > 4 * remaining) return false;
        if (remaining == 0) return deficit == 0;
        // A saturated component among the first j+1 vertices can never reach the rest.
        std::vector<int> comp(j + 1, -1);
        for (int s = 0; s <= j; ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = s;
            bool open = false;
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                if (deg_[u] < 4) open = true;
                for (int w = 0; w <= j; ++w)
                    if (mult_[u][w] > 0 && comp[w] < 0) {
                        comp[w] = s;
                        stack.push_back(w);
                    }
            }
            if (!open) return false;
        }
        return true;
    }

    bool connected(int k) const {
        std::vector<bool> seen(k, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int w = 0; w < k; ++w)
                if (mult_[u][w] > 0 && !seen[w]) {
                    seen[w] = true;
                    ++reached;
                    stack.push_back(w);
                }
        }
        return reached == k;
    }

    // True unless some vertex order of the first k vertices has a larger code.
    bool is_canonical_prefix(int k) {
        perm_.assign(k, -1);
        used_.assign(k, false);
        return !search_larger(k, 0);
    }

    bool search_larger(int k, int j) {
        if (j == k) return false;
        for (int v = 0; v < k; ++v) {
            if (used_[v]) continue;
            // Compare column j of the permuted graph against column j of the original.
            int cmp = 0;
            for (int i = 0; i < j && cmp == 0; ++i) {
                const int a = mult_[perm_[i]][v];
                const int b = mult_[i][j];
                cmp = (a > b) - (a < b);
            }
            if (cmp == 0) cmp = (loops_[v] > loops_[j]) - (loops_[v] < loops_[j]);
            if (cmp > 0) return true;
            if (cmp < 0) continue;
            perm_[j] = v;
            used_[v] = true;
            const bool found = search_larger(k, j + 1);
            used_[v] = false;
            if (found) return true;
        }
        return false;
    }

    FacePairingGraph snapshot() const {
        FacePairingGraph g;
        g.nodes = n_;
        g.loops = loops_;
        g.multiplicity = mult_;
        return g;
    }

    int n_;
    std::vector<std::vector<int>> mult_;
    std::vector<int> loops_, deg_;
    std::vector<int> perm_;
    std::vector<bool> used_;
    std::vector<FacePairingGraph> out_;
};

FacePairing realise(const FacePairingGraph& g) {
    FacePairing fp(g.nodes);
    std::vector<int> next_face(g.nodes, 0);
    for (int t = 0; t < g.nodes; ++t)
        for (int l = 0; l < g.loops[t]; ++l) {
            fp.pair(4 * t + next_face[t], 4 * t + next_face[t] + 1);
            next_face[t] += 2;
        }
    for (int a = 0; a < g.nodes; ++a)
        for (int b = a + 1; b < g.nodes; ++b)
            for (int m = 0; m < g.multiplicity[a][b]; ++m) fp.pair(4 * a + next_face[a]++, 4 * b + next_face[b]++);
    return fp;
}

}  // namespace

FacePairing canonical_form(const FacePairing& fp) {
    if (fp.size() == 0) return fp;
    auto code = PairingCanonicaliser(fp).run();
    for (int& c : code)
        if (c == 4 * fp.size()) c = -1;
    return FacePairing::from_partners(fp.size(), std::move(code));
}

bool is_canonical(const FacePairing& fp) { return canonical_form(fp) == fp; }

std::vector<FacePairing> enumerate_pairings(int n) {
    if (n < 1) throw PreconditionError("pairing enumeration needs n >= 1");
    std::vector<FacePairing> out;
    for (const auto& g : GraphGenerator(n).run()) out.push_back(canonical_form(realise(g)));
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_fpg_line(const FacePairing& fp) {
    std::ostringstream os;
    os << fp.size() << " ;";
    for (int s = 0; s < 4 * fp.size(); ++s) {
        const int p = fp.partner(s);
        if (p < 0)
            os << " -";
        else
            os << ' ' << p / 4 << '.' << p % 4;
    }
    return os.str();
}

FacePairing parse_fpg_line(std::string_view line) {
    std::istringstream is{std::string(line)};
    int n = 0;
    std::string semi;
    if (!(is >> n) || n <= 0 || !(is >> semi) || semi != ";") throw ParseError("bad pairing header");
    std::vector<int> partner(4 * n, -1);
    for (int s = 0; s < 4 * n; ++s) {
        std::string tok;
        if (!(is >> tok)) throw ParseError("pairing has too few slots");
        if (tok == "-") continue;
        const auto dot = tok.find('.');
        if (dot == std::string::npos) throw ParseError("bad pairing token '" + tok + "'");
        int t = 0, f = 0;
        try {
            std::size_t used = 0;
            t = std::stoi(tok.substr(0, dot), &used);
            if (used != dot) throw ParseError("bad pairing token '" + tok + "'");
            f = std::stoi(tok.substr(dot + 1), &used);
            if (used != tok.size() - dot - 1) throw ParseError("bad pairing token '" + tok + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad pairing token '" + tok + "'");
        }
        if (t < 0 || t >= n || f < 0 || f > 3) throw ParseError("pairing token '" + tok + "' out of range");
        partner[s] = 4 * t + f;
    }
    std::string extra;
    if (is >> extra) throw ParseError("pairing has too many slots");
    try {
        return FacePairing::from_partners(n, std::move(partner));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

std::string describe(const FacePairingGraph& g) {
    std::ostringstream os;
    os << "loops:";
    bool any = false;
    for (int t = 0; t < g.nodes; ++t)
        if (g.loops[t] > 0) {
            os << (any ? ", " : " ") << t << " x" << g.loops[t];
            any = true;
        }
    if (!any) os << " none";
    os << " | edges:";
    any = false;
    for (int a = 0; a < g.nodes; ++a)
        for (int b = a + 1; b < g.nodes; ++b)
            if (g.multiplicity[a][b] > 0) {
                os << (any ? ", " : " ") << a << '-' << b << " x" << g.multiplicity[a][b];
                any = true;
            }
    if (!any) os << " none";
    return os.str();
}

}  // namespace linkcensus
