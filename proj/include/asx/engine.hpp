#ifndef ASX_ENGINE_HPP
#define ASX_ENGINE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "asx/common.hpp"
#include "asx/layer.hpp"
#include "asx/scheme.hpp"

namespace asx {

struct EngineOptions {
    std::uint64_t entry_budget = kDefaultEntryBudget;
    /// When set, pass-internal iteration orders are shuffled. The final
    /// canonical output must not depend on this (uniqueness of the
    /// coarsest extension); tests exercise exactly that.
    std::optional<std::uint32_t> shuffle_seed;
};

struct NotExtensibleInfo {
    int pass = 0;                  // refinement cycle in which the failure fired
    Color height1_cell = 0;        // offending height-1 cell
    Color straddled_base_cell = 0; // base cell partially covered by its projection
};

enum class RefineStatus { Unchanged, Changed, NotExtensible };

struct RefineOutcome {
    RefineStatus status = RefineStatus::Unchanged;
    std::uint64_t splits = 0;
};

struct ExtendResult {
    std::optional<Extension> extension;
    std::optional<NotExtensibleInfo> failure;
    std::uint64_t total_splits = 0;

    bool extensible() const { return extension.has_value(); }
};

struct MaxHeightReport {
    int t_max = 0;
    bool infinite = false;
    bool schurian_certified = false;
    int cap_used = 0;
    bool budget_hit = false;  // a run stopped on ResourceBudget; t_max is partial
};

/// Trivial starting point: every layer 1..t a single cell.
inline Extension initialize_trivial(const Scheme& base, int t,
                                    std::uint64_t entry_budget = kDefaultEntryBudget) {
    const int d = base.order;
    if (d < 3 || t < 1 || t > d - 2)
        fail(Errc::HeightOutOfRange,
             "height " + std::to_string(t) + " outside 1..d-2 (d=" + std::to_string(d) + ")");
    if (checked_pow(d, t + 2) > entry_budget)
        fail(Errc::ResourceBudget, "d^(t+2) exceeds the entry budget of " +
                                       std::to_string(entry_budget) + " entries");
    Extension ext;
    ext.base = base;
    for (int s = 1; s <= t; ++s) {
        Layer layer;
        layer.order = d;
        layer.height = s;
        layer.cell_count = 1;
        layer.colors.assign(checked_pow(d, s + 2), 0);
        ext.layers.push_back(std::move(layer));
    }
    return ext;
}

namespace detail {

/// Mutable refinement state shared by the three step routines.
class Refiner {
public:
    Refiner(Extension& ext, const EngineOptions& opts)
        : ext_(ext), opts_(opts), rng_(opts.shuffle_seed.value_or(0)) {
        const int d = ext.base.order;
        split_bound_ = 0;
        for (int s = 1; s <= ext.height(); ++s) split_bound_ += checked_pow(d, s + 2) - 1;
        sizes_.resize(ext.height());
        for (int s = 1; s <= ext.height(); ++s) sizes_[s - 1] = cell_sizes(ext.layers[s - 1]);
        base_sizes_.assign(ext.base.cell_count, 0);
        for (Color c : ext.base.colors) ++base_sizes_[c];
    }

    std::uint64_t total_splits() const { return total_splits_; }
    const std::optional<NotExtensibleInfo>& failure() const { return failure_; }

    RefineOutcome step1(int pass) {
        std::uint64_t made = 0;
        const int d = ext_.base.order;
        for (int s = 1; s <= ext_.height() && !failure_; ++s) {
            Layer& layer = ext_.layers[s - 1];
            auto members = member_lists(layer);
            const TupleIndex prefix_count = layer.size() / d;
            for (Color c : iteration_order(static_cast<int>(members.size()))) {
                // Distinct prefixes of cell c, with per-lower-cell contact counts.
                std::vector<char> mark(prefix_count, 0);
                std::vector<TupleIndex> prefixes;
                std::vector<std::uint64_t> contact(lower_cells(s), 0);
                for (TupleIndex u : members[c]) {
                    if (layer.colors[u] != c) continue;  // moved by an earlier split
                    TupleIndex p = u / d;
                    if (!mark[p]) {
                        mark[p] = 1;
                        prefixes.push_back(p);
                        ++contact[lower_color(s, p)];
                    }
                }
                if (prefixes.empty()) continue;

                Color straddled = -1;
                for (Color lc = 0; lc < lower_cells(s); ++lc)
                    if (contact[lc] > 0 && contact[lc] < lower_size(s, lc)) {
                        straddled = lc;
                        break;
                    }

                if (straddled == -1) {
                    made += split_cell_by_lower_color(s, c, members[c]);
                } else if (s == 1) {
                    failure_ = NotExtensibleInfo{pass, c, straddled};
                    return {RefineStatus::NotExtensible, made};
                } else {
                    made += split_by_list(s - 1, prefixes);
                }
            }
        }
        total_splits_check(made);
        return {made ? RefineStatus::Changed : RefineStatus::Unchanged, made};
    }

    RefineOutcome step2() {
        std::uint64_t made = 0;
        const int d = ext_.base.order;
        for (int s = 1; s <= ext_.height(); ++s) {
            Layer& layer = ext_.layers[s - 1];
            auto perms = symmetric_group(s + 2);
            for (const auto& tau : perms) {
                if (std::is_sorted(tau.begin(), tau.end())) continue;  // identity
                auto members = member_lists(layer);
                std::vector<TupleIndex> image;
                for (Color c : iteration_order(static_cast<int>(members.size()))) {
                    image.clear();
                    image.reserve(members[c].size());
                    for (TupleIndex u : members[c]) image.push_back(permute_index(u, d, tau));
                    made += split_by_list(s, image);
                }
            }
        }
        total_splits_check(made);
        return {made ? RefineStatus::Changed : RefineStatus::Unchanged, made};
    }

    RefineOutcome step3() {
        std::uint64_t made = 0;
        const int d = ext_.base.order;
        for (int s = 1; s <= ext_.height(); ++s) {
            for (int m = 0; m <= s; ++m) {
                const int n = s - m;
                // Snapshot both factor layers; the target layer refines as we go.
                const std::vector<Color> cm = colors_at(m);
                const std::vector<Color> cn = colors_at(n);
                const TupleIndex ysize = checked_pow(d, n + 1);
                const TupleIndex wcount = checked_pow(d, s + 2);

                // One scan accumulates the level sets of all (i,j) profiles:
                // bucket[(i,j,r)] = tuples where the profile value is r >= 1.
                // The r = 0 level set is the complement of the others and
                // yields no extra refinement.
                std::map<std::array<int, 3>, std::vector<TupleIndex>> buckets;
                std::vector<std::array<int, 3>> local;  // (i, j, count)
                for (TupleIndex w = 0; w < wcount; ++w) {
                    const TupleIndex x = w / ysize, y = w % ysize;
                    local.clear();
                    for (int z = 0; z < d; ++z) {
                        int i = cm[x * d + z];
                        int j = cn[z * ysize + y];
                        bool found = false;
                        for (auto& entry : local)
                            if (entry[0] == i && entry[1] == j) {
                                ++entry[2];
                                found = true;
                                break;
                            }
                        if (!found) local.push_back({i, j, 1});
                    }
                    for (const auto& entry : local)
                        buckets[{entry[0], entry[1], entry[2]}].push_back(w);
                }

                std::vector<const std::map<std::array<int, 3>,
                                           std::vector<TupleIndex>>::value_type*> order;
                order.reserve(buckets.size());
                for (const auto& kv : buckets) order.push_back(&kv);
                if (opts_.shuffle_seed) std::shuffle(order.begin(), order.end(), rng_);
                for (const auto* kv : order) made += split_by_list(s, kv->second);
            }
        }
        total_splits_check(made);
        return {made ? RefineStatus::Changed : RefineStatus::Unchanged, made};
    }

private:
    int lower_cells(int s) const {
        return s == 1 ? ext_.base.cell_count : ext_.layers[s - 2].cell_count;
    }
    Color lower_color(int s, TupleIndex p) const {
        return s == 1 ? ext_.base.colors[p] : ext_.layers[s - 2].colors[p];
    }
    std::uint64_t lower_size(int s, Color c) const {
        return s == 1 ? base_sizes_[c] : sizes_[s - 2][c];
    }
    const std::vector<Color>& colors_at(int h) const {
        return h == 0 ? ext_.base.colors : ext_.layers[h - 1].colors;
    }

    std::vector<Color> iteration_order(int count) {
        std::vector<Color> order(count);
        std::iota(order.begin(), order.end(), 0);
        if (opts_.shuffle_seed) std::shuffle(order.begin(), order.end(), rng_);
        return order;
    }

    std::vector<std::vector<TupleIndex>> member_lists(const Layer& layer) const {
        std::vector<std::vector<TupleIndex>> members(layer.cell_count);
        for (TupleIndex u = 0; u < layer.size(); ++u) members[layer.colors[u]].push_back(u);
        return members;
    }

    /// Split every cell of layer s that meets the tuple list both ways.
    std::uint64_t split_by_list(int s, const std::vector<TupleIndex>& subset) {
        Layer& layer = ext_.layers[s - 1];
        auto& sizes = sizes_[s - 1];
        std::vector<std::uint64_t> hits(layer.cell_count, 0);
        for (TupleIndex u : subset) ++hits[layer.colors[u]];
        std::vector<Color> fresh(layer.cell_count, -1);
        std::uint64_t made = 0;
        for (Color c = 0; c < static_cast<Color>(hits.size()); ++c)
            if (hits[c] > 0 && hits[c] < sizes[c]) {
                fresh[c] = layer.cell_count++;
                sizes.push_back(hits[c]);
                sizes[c] -= hits[c];
                ++made;
            }
        if (made)
            for (TupleIndex u : subset) {
                Color c = layer.colors[u];
                if (c < static_cast<Color>(fresh.size()) && fresh[c] != -1)
                    layer.colors[u] = fresh[c];
            }
        total_splits_ += made;
        return made;
    }

    /// Split one cell at height s into groups by the lower color of the
    /// projected prefix. The group seen first keeps the old color.
    std::uint64_t split_cell_by_lower_color(int s, Color c,
                                            const std::vector<TupleIndex>& members) {
        Layer& layer = ext_.layers[s - 1];
        auto& sizes = sizes_[s - 1];
        const int d = layer.order;
        std::vector<Color> group_of(lower_cells(s), -1);
        std::uint64_t made = 0;
        bool first_group = true;
        for (TupleIndex u : members) {
            if (layer.colors[u] != c) continue;
            Color lc = lower_color(s, u / d);
            if (group_of[lc] == -1) {
                if (first_group) {
                    group_of[lc] = c;
                    first_group = false;
                } else {
                    group_of[lc] = layer.cell_count++;
                    sizes.push_back(0);
                    ++made;
                }
            }
            if (group_of[lc] != c) {
                layer.colors[u] = group_of[lc];
                ++sizes[group_of[lc]];
                --sizes[c];
            }
        }
        total_splits_ += made;
        return made;
    }

    void total_splits_check(std::uint64_t) const {
        if (total_splits_ > split_bound_)
            fail(Errc::ResourceBudget, "split counter exceeded the termination bound");
    }

    Extension& ext_;
    const EngineOptions& opts_;
    std::mt19937 rng_;
    std::vector<std::vector<std::uint64_t>> sizes_;
    std::vector<std::uint64_t> base_sizes_;
    std::uint64_t split_bound_ = 0;
    std::uint64_t total_splits_ = 0;
    std::optional<NotExtensibleInfo> failure_;
};

}  // namespace detail

/// One projection pass over the given extension state.
inline RefineOutcome step1_projection(Extension& ext, const EngineOptions& opts = {}) {
    detail::Refiner refiner(ext, opts);
    return refiner.step1(0);
}

/// One invariance pass.
inline RefineOutcome step2_invariance(Extension& ext, const EngineOptions& opts = {}) {
    detail::Refiner refiner(ext, opts);
    return refiner.step2();
}

/// One intersection pass.
inline RefineOutcome step3_intersection(Extension& ext, const EngineOptions& opts = {}) {
    detail::Refiner refiner(ext, opts);
    return refiner.step3();
}

/// Decides extensibility to height t and on success returns the unique
/// coarsest t-extension with canonical colors. Schedule: Step 1 to its own
/// fixpoint, Step 2 to fixpoint, Step 3 once, cycle until no split.
inline ExtendResult extend(const Scheme& base, int t, const EngineOptions& opts = {}) {
    Extension ext = initialize_trivial(base, t, opts.entry_budget);
    detail::Refiner refiner(ext, opts);

    int pass = 0;
    for (;;) {
        ++pass;
        std::uint64_t cycle = 0;
        for (;;) {
            RefineOutcome out = refiner.step1(pass);
            if (out.status == RefineStatus::NotExtensible)
                return ExtendResult{std::nullopt, refiner.failure(), refiner.total_splits()};
            cycle += out.splits;
            if (out.splits == 0) break;
        }
        for (;;) {
            RefineOutcome out = refiner.step2();
            cycle += out.splits;
            if (out.splits == 0) break;
        }
        cycle += refiner.step3().splits;
        if (cycle == 0) break;
    }

    for (auto& layer : ext.layers) layer = canonical_colors(layer);
    return ExtendResult{std::move(ext), std::nullopt, refiner.total_splits()};
}

/// Iterates extend for t = 1.. up to the cap; t_max = d-2 certifies the
/// scheme Schurian and is reported as infinite maximal height.
inline MaxHeightReport max_height(const Scheme& base, std::optional<int> cap = std::nullopt,
                                  const EngineOptions& opts = {}) {
    const int d = base.order;
    MaxHeightReport report;
    report.cap_used = cap ? std::min(*cap, d - 2) : std::min(d - 2, 3);
    if (report.cap_used < 0) report.cap_used = 0;
    for (int t = 1; t <= report.cap_used; ++t) {
        try {
            ExtendResult result = extend(base, t, opts);
            if (!result.extensible()) break;
            report.t_max = t;
        } catch (const Error& e) {
            if (e.kind() == Errc::ResourceBudget) {
                report.budget_hit = true;
                break;
            }
            throw;
        }
    }
    if (!report.budget_hit && report.t_max == d - 2) {
        report.infinite = true;
        report.schurian_certified = true;
    }
    return report;
}

}  // namespace asx

#endif
