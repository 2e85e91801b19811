#include "rulek/rules.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <string>

namespace rulek {

namespace {

using Word = std::uint64_t;

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }
void set_bit(Word* w, std::size_t i) { w[i / 64] |= Word{1} << (i % 64); }
bool test_bit(const Word* w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1U; }

std::string cap_message(VertexId vertex, std::uint64_t cap) {
    std::ostringstream msg;
    msg << "work cap: witness search for vertex " << vertex << " exceeded " << cap
        << " subsets";
    return msg.str();
}

// Per-vertex exclusion decision with reusable scratch space.
class ExclusionSearch {
public:
    ExclusionSearch(const UnitDiskGraph& g, unsigned k, const RuleKOptions& opts,
                    const std::vector<char>* candidates)
        : g_(g), k_(k), opts_(opts), candidates_(candidates),
          target_pos_(g.size() + 1, -1), helper_pos_(g.size() + 1, -1) {}

    bool excluded(VertexId v) {
        collect(v);
        const std::size_t min_helpers = opts_.at_most_k ? 1 : k_;
        bool result = false;
        if (helpers_.size() >= min_helpers) {
            build_bitsets();
            if (union_covers()) {
                work_ = 0;
                vertex_ = v;
                chosen_.clear();
                std::vector<Word> covered(tw_, 0);
                result = branch(covered);
            }
        }
        for (VertexId t : targets_) target_pos_[t] = -1;
        for (VertexId h : helpers_) helper_pos_[h] = -1;
        return result;
    }

private:
    void collect(VertexId v) {
        targets_.clear();
        helpers_.clear();
        targets_.push_back(v);
        for (VertexId u : g_.neighbors(v)) {
            targets_.push_back(u);
            if (u > v && (candidates_ == nullptr || (*candidates_)[u])) helpers_.push_back(u);
        }
        for (std::size_t i = 0; i < targets_.size(); ++i)
            target_pos_[targets_[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < helpers_.size(); ++i)
            helper_pos_[helpers_[i]] = static_cast<int>(i);
    }

    void build_bitsets() {
        const std::size_t nt = targets_.size();
        const std::size_t nh = helpers_.size();
        tw_ = words_for(nt);
        hw_ = words_for(nh);
        cover_.assign(nh * tw_, 0);
        links_.assign(nh * hw_, 0);
        coverers_.assign(nt, 0);
        for (std::size_t a = 0; a < nh; ++a) {
            Word* cov = &cover_[a * tw_];
            Word* link = &links_[a * hw_];
            const VertexId h = helpers_[a];
            set_bit(cov, static_cast<std::size_t>(target_pos_[h]));
            ++coverers_[static_cast<std::size_t>(target_pos_[h])];
            for (VertexId w : g_.neighbors(h)) {
                if (const int t = target_pos_[w]; t >= 0) {
                    set_bit(cov, static_cast<std::size_t>(t));
                    ++coverers_[static_cast<std::size_t>(t)];
                }
                if (const int b = helper_pos_[w]; b >= 0) set_bit(link, static_cast<std::size_t>(b));
            }
        }
    }

    bool union_covers() const {
        for (std::size_t t = 0; t < targets_.size(); ++t)
            if (coverers_[t] == 0) return false;
        return true;
    }

    void tick() {
        if (++work_ > opts_.work_cap) throw WorkCapExceeded(vertex_, opts_.work_cap);
    }

    // Picks the uncovered target with the fewest coverers; npos when covered.
    std::size_t pick_uncovered(const std::vector<Word>& covered) const {
        std::size_t best = static_cast<std::size_t>(-1);
        std::size_t best_count = static_cast<std::size_t>(-1);
        for (std::size_t w = 0; w < tw_; ++w) {
            Word open = ~covered[w];
            if (w == tw_ - 1 && targets_.size() % 64 != 0)
                open &= (Word{1} << (targets_.size() % 64)) - 1;
            while (open != 0) {
                const std::size_t t = w * 64 + static_cast<std::size_t>(std::countr_zero(open));
                open &= open - 1;
                if (coverers_[t] < best_count) {
                    best = t;
                    best_count = coverers_[t];
                }
            }
        }
        return best;
    }

    bool branch(std::vector<Word>& covered) {
        tick();
        const std::size_t t = pick_uncovered(covered);
        if (t == static_cast<std::size_t>(-1)) return extendable();
        if (chosen_.size() == k_) return false;

        std::vector<Word> next(tw_);
        for (std::size_t a = 0; a < helpers_.size(); ++a) {
            const Word* cov = &cover_[a * tw_];
            if (!test_bit(cov, t)) continue;
            // a cannot already be chosen: it would have covered t.
            for (std::size_t w = 0; w < tw_; ++w) next[w] = covered[w] | cov[w];
            chosen_.push_back(a);
            const bool found = branch(next);
            chosen_.pop_back();
            if (found) return true;
        }
        return false;
    }

    // Whether the covering set chosen_ lies inside a connected helper set of
    // admissible size. Grows only through vertices adjacent to the set, which
    // reaches every connected superset.
    bool extendable() {
        std::vector<Word> set(hw_, 0);
        for (std::size_t a : chosen_) set_bit(set.data(), a);
        return grow(set, chosen_.size());
    }

    bool grow(const std::vector<Word>& set, std::size_t size) {
        tick();
        if (closure_size(set, set) == size) {
            if (opts_.at_most_k) return true;
            std::vector<Word> all(hw_, ~Word{0});
            return closure_size(set, all) >= k_;
        }
        if (size == k_) return false;

        std::vector<Word> frontier(hw_, 0);
        for (std::size_t w = 0; w < hw_; ++w) {
            for (Word bits = set[w]; bits != 0; bits &= bits - 1) {
                const std::size_t a = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const Word* link = &links_[a * hw_];
                for (std::size_t x = 0; x < hw_; ++x) frontier[x] |= link[x];
            }
        }
        std::vector<Word> next(set);
        for (std::size_t w = 0; w < hw_; ++w) {
            for (Word bits = frontier[w] & ~set[w]; bits != 0; bits &= bits - 1) {
                const std::size_t b = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                set_bit(next.data(), b);
                if (grow(next, size + 1)) return true;
                next[w] &= ~(Word{1} << (b % 64));
            }
        }
        return false;
    }

    // Number of helpers reachable from the first member of `seed` while
    // staying inside `within`.
    std::size_t closure_size(const std::vector<Word>& seed, const std::vector<Word>& within) const {
        std::size_t start = static_cast<std::size_t>(-1);
        for (std::size_t w = 0; w < hw_ && start == static_cast<std::size_t>(-1); ++w)
            if (seed[w] != 0) start = w * 64 + static_cast<std::size_t>(std::countr_zero(seed[w]));
        if (start == static_cast<std::size_t>(-1)) return 0;

        std::vector<Word> seen(hw_, 0);
        set_bit(seen.data(), start);
        std::vector<std::size_t> stack{start};
        std::size_t count = 1;
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            const Word* link = &links_[a * hw_];
            for (std::size_t w = 0; w < hw_; ++w) {
                for (Word bits = link[w] & within[w] & ~seen[w]; bits != 0; bits &= bits - 1) {
                    const std::size_t b = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    seen[w] |= Word{1} << (b % 64);
                    stack.push_back(b);
                    ++count;
                }
            }
        }
        return count;
    }

    const UnitDiskGraph& g_;
    unsigned k_;
    RuleKOptions opts_;
    const std::vector<char>* candidates_;

    std::vector<int> target_pos_;
    std::vector<int> helper_pos_;
    std::vector<VertexId> targets_;
    std::vector<VertexId> helpers_;
    std::size_t tw_ = 0;
    std::size_t hw_ = 0;
    std::vector<Word> cover_;
    std::vector<Word> links_;
    std::vector<std::size_t> coverers_;
    std::vector<std::size_t> chosen_;
    std::uint64_t work_ = 0;
    VertexId vertex_ = 0;
};

CdsResult run_rule(const UnitDiskGraph& g, unsigned k, const std::vector<char>* candidates,
                   const RuleKOptions& opts) {
    if (k < 1) throw std::invalid_argument("k: must be >= 1");
    ExclusionSearch search(g, k, opts, candidates);
    CdsResult r;
    for (VertexId v = 1; v <= g.size(); ++v) {
        if (candidates != nullptr && !(*candidates)[v]) continue;
        if (!search.excluded(v)) r.members.push_back(v);
    }
    r.size = r.members.size();
    r.excluded_count = g.size() - r.size;
    r.verified_dominating = is_dominating(g, r.members);
    r.verified_component_preserving = component_count(g, r.members) == component_count(g);
    return r;
}

}  // namespace

WorkCapExceeded::WorkCapExceeded(VertexId vertex, std::uint64_t cap)
    : std::runtime_error(cap_message(vertex, cap)), vertex_(vertex) {}

CdsResult rule_k(const UnitDiskGraph& g, unsigned k, const RuleKOptions& opts) {
    return run_rule(g, k, nullptr, opts);
}

CdsResult rule_k_restricted(const UnitDiskGraph& g, unsigned k,
                            std::span<const VertexId> candidates, const RuleKOptions& opts) {
    const std::vector<char> mask = membership_mask(g, candidates);
    return run_rule(g, k, &mask, opts);
}

VertexSet marking_process(const UnitDiskGraph& g) {
    VertexSet marked;
    for (VertexId v = 1; v <= g.size(); ++v) {
        const auto nb = g.neighbors(v);
        bool found = false;
        // v is unmarked iff its neighbors form a clique, i.e. every neighbor u
        // sees all other neighbors of v.
        for (std::size_t a = 0; a < nb.size() && !found; ++a) {
            const auto nu = g.neighbors(nb[a]);
            auto it = nu.begin();
            for (std::size_t b = 0; b < nb.size(); ++b) {
                if (b == a) continue;
                it = std::lower_bound(it, nu.end(), nb[b]);
                if (it == nu.end() || *it != nb[b]) {
                    found = true;
                    break;
                }
            }
        }
        if (found) marked.push_back(v);
    }
    return marked;
}

VertexSet local_maxima(const UnitDiskGraph& g) {
    VertexSet out;
    for (VertexId v = 1; v <= g.size(); ++v) {
        const auto nb = g.neighbors(v);
        if (nb.empty() || nb.back() < v) out.push_back(v);
    }
    return out;
}

GridCdsResult grid_cds(const UnitDiskGraph& g, Rng& rng) {
    const Instance& inst = g.instance();
    const SquareRegion q(inst.side);
    GridCdsResult r;
    r.cells_per_side = static_cast<std::size_t>(std::floor(3.0 * q.side()));
    r.cell_side = q.side() / static_cast<double>(r.cells_per_side);
    const std::size_t m = r.cells_per_side;

    const auto cell_of = [&](double c) {
        return std::min(static_cast<std::size_t>(c / r.cell_side), m - 1);
    };
    std::vector<std::vector<VertexId>> cells(m * m);
    for (VertexId v = 1; v <= inst.size(); ++v) {
        const Point p = inst.position(v);
        cells[cell_of(p.y) * m + cell_of(p.x)].push_back(v);
    }

    r.all_cells_occupied = true;
    for (const auto& cell : cells) {
        if (cell.empty()) {
            r.all_cells_occupied = false;
            continue;
        }
        r.members.push_back(cell[rng.index(cell.size())]);
    }
    std::sort(r.members.begin(), r.members.end());
    return r;
}

}  // namespace rulek
