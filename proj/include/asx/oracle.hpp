#ifndef ASX_ORACLE_HPP
#define ASX_ORACLE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "asx/common.hpp"
#include "asx/layer.hpp"
#include "asx/scheme.hpp"

// Brute-force verification of the presuperscheme properties and orbit
// reference extensions. Everything here recomputes counts by raw tuple
// enumeration and shares no refinement logic with the engine.

namespace asx {

enum class Property { P1, P2, P3, P4 };

struct Violation {
    Property property;
    int height = 0;            // height (P4: m+n) at which the violation lives
    std::string detail;
};

struct VerifyReport {
    bool passed = true;
    std::vector<Violation> violations;
};

namespace oracle_detail {

// Odometer-style enumeration: next tuple in mixed-radix order.
inline bool next_tuple(std::vector<int>& tuple, int d) {
    for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
        if (++tuple[i] < d) return true;
        tuple[i] = 0;
    }
    return false;
}

inline std::uint64_t encode(const std::vector<int>& tuple, int d) {
    std::uint64_t idx = 0;
    for (int c : tuple) idx = idx * d + c;
    return idx;
}

inline void permutations_rec(std::vector<int>& cur, std::vector<char>& used,
                             std::vector<std::vector<int>>& out) {
    const int n = static_cast<int>(used.size());
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v < n; ++v)
        if (!used[v]) {
            used[v] = 1;
            cur.push_back(v);
            permutations_rec(cur, used, out);
            cur.pop_back();
            used[v] = 0;
        }
}

inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<char> used(n, 0);
    permutations_rec(cur, used, out);
    return out;
}

}  // namespace oracle_detail

/// Exhaustive check of (P1)-(P4) on an extension. Reports, never throws,
/// except when a P3 scan would need more than 6! coordinate permutations.
inline VerifyReport verify_prescheme(const Extension& ext) {
    using namespace oracle_detail;
    VerifyReport report;
    auto flag = [&](Property p, int h, std::string detail) {
        report.passed = false;
        report.violations.push_back({p, h, std::move(detail)});
    };
    const int d = ext.base.order;
    const int t = ext.height();
    if (t + 2 > 6)
        fail(Errc::ResourceBudget, "P3 scan over arity > 6 rejected");

    // P1: base cell 0 is exactly the diagonal.
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            Color c = ext.base.colors[static_cast<std::size_t>(x) * d + y];
            if ((x == y) != (c == 0)) {
                flag(Property::P1, 0, "cell 0 is not the diagonal at (" + std::to_string(x) +
                                          "," + std::to_string(y) + ")");
                break;
            }
        }

    // P2: the projection of each cell at height n is exactly one cell below.
    for (int n = 1; n <= t; ++n) {
        const Layer& layer = ext.layers[n - 1];
        std::vector<std::map<Color, std::uint64_t>> hit(layer.cell_count);
        std::vector<int> tuple(n + 2, 0);
        do {
            std::uint64_t u = encode(tuple, d);
            std::uint64_t p = u / d;
            hit[layer.colors[u]][ext.color_at(n - 1, p)] = 1;
        } while (next_tuple(tuple, d));
        // Image must touch exactly one lower cell...
        std::vector<Color> image_cell(layer.cell_count, -1);
        for (Color c = 0; c < layer.cell_count; ++c) {
            if (hit[c].size() != 1) {
                flag(Property::P2, n,
                     "projection of cell " + std::to_string(c) + " meets " +
                         std::to_string(hit[c].size()) + " lower cells");
            } else {
                image_cell[c] = hit[c].begin()->first;
            }
        }
        // ...and cover it: every lower tuple of that cell must be a prefix.
        std::vector<std::vector<char>> covered(layer.cell_count);
        for (Color c = 0; c < layer.cell_count; ++c)
            covered[c].assign(layer.size() / d, 0);
        std::fill(tuple.begin(), tuple.end(), 0);
        do {
            std::uint64_t u = encode(tuple, d);
            covered[layer.colors[u]][u / d] = 1;
        } while (next_tuple(tuple, d));
        for (Color c = 0; c < layer.cell_count; ++c) {
            if (image_cell[c] == -1) continue;
            for (std::uint64_t p = 0; p < covered[c].size(); ++p)
                if (ext.color_at(n - 1, p) == image_cell[c] && !covered[c][p]) {
                    flag(Property::P2, n, "projection of cell " + std::to_string(c) +
                                              " misses part of lower cell " +
                                              std::to_string(image_cell[c]));
                    break;
                }
        }
    }

    // P3: every coordinate-permutation image of a cell is a cell.
    for (int n = 0; n <= t; ++n) {
        const int arity = n + 2;
        const std::uint64_t count = checked_pow(d, arity);
        for (const auto& tau : all_permutations(arity)) {
            std::vector<Color> image_of(ext.cells_at(n), -1);
            std::vector<int> tuple(arity, 0);
            bool bad = false;
            do {
                std::uint64_t u = encode(tuple, d);
                std::vector<int> moved(arity);
                for (int i = 0; i < arity; ++i) moved[i] = tuple[tau[i]];
                std::uint64_t v = encode(moved, d);
                Color cu = ext.color_at(n, u), cv = ext.color_at(n, v);
                if (image_of[cv] == -1)
                    image_of[cv] = cu;  // image of cell cv under tau lands in cu
                else if (image_of[cv] != cu) {
                    flag(Property::P3, n,
                         "image of cell " + std::to_string(cv) + " under a permutation of " +
                             std::to_string(arity) + " coordinates is not a cell");
                    bad = true;
                    break;
                }
            } while (next_tuple(tuple, d));
            (void)count;
            if (bad) break;
        }
    }

    // P4: intersection counts constant per cell, all (m,n) with m+n <= t.
    for (int m = 0; m <= t; ++m)
        for (int n = 0; m + n <= t; ++n) {
            const int s = m + n;
            const std::uint64_t ysize = checked_pow(d, n + 1);
            std::vector<std::map<std::pair<Color, Color>, int>> reference(ext.cells_at(s));
            std::vector<char> have(ext.cells_at(s), 0);
            std::vector<int> tuple(s + 2, 0);
            bool bad = false;
            do {
                std::uint64_t w = encode(tuple, d);
                std::uint64_t x = w / ysize, y = w % ysize;
                std::map<std::pair<Color, Color>, int> counts;
                for (int z = 0; z < d; ++z) {
                    Color i = ext.color_at(m, x * d + z);
                    Color j = ext.color_at(n, z * ysize + y);
                    ++counts[{i, j}];
                }
                Color k = ext.color_at(s, w);
                if (!have[k]) {
                    have[k] = 1;
                    reference[k] = counts;
                } else if (reference[k] != counts) {
                    flag(Property::P4, s,
                         "intersection counts differ within cell " + std::to_string(k) +
                             " at heights (m,n)=(" + std::to_string(m) + "," +
                             std::to_string(n) + ")");
                    bad = true;
                }
            } while (!bad && next_tuple(tuple, d));
        }

    return report;
}

/// Layers given by the orbits of a permutation group acting diagonally on
/// Q^(s+2); the reference extension of a Schurian scheme.
inline Extension orbit_extension(const PermGroup& group, int t,
                                 std::uint64_t entry_budget = kDefaultEntryBudget) {
    Extension ext;
    ext.base = scheme_from_orbitals(group);  // checks transitivity
    const int d = group.degree;
    if (checked_pow(d, t + 2) > entry_budget)
        fail(Errc::ResourceBudget, "orbit enumeration exceeds entry budget");

    for (int s = 1; s <= t; ++s) {
        const int arity = s + 2;
        const std::uint64_t count = checked_pow(d, arity);
        Layer layer;
        layer.order = d;
        layer.height = s;
        layer.colors.assign(count, -1);
        Color next = 0;
        std::vector<int> scratch(arity);
        for (std::uint64_t seed = 0; seed < count; ++seed) {
            if (layer.colors[seed] != -1) continue;
            Color label = next++;
            layer.colors[seed] = label;
            std::deque<std::uint64_t> queue{seed};
            while (!queue.empty()) {
                std::uint64_t u = queue.front();
                queue.pop_front();
                std::uint64_t rest = u;
                for (int i = arity - 1; i >= 0; --i) {
                    scratch[i] = static_cast<int>(rest % d);
                    rest /= d;
                }
                for (const auto& g : group.generators) {
                    std::uint64_t v = 0;
                    for (int i = 0; i < arity; ++i) v = v * d + g[scratch[i]];
                    if (layer.colors[v] == -1) {
                        layer.colors[v] = label;
                        queue.push_back(v);
                    }
                }
            }
        }
        layer.cell_count = next;
        ext.layers.push_back(canonical_colors(layer));
    }
    return ext;
}

/// True iff each layer of the candidate is a fusion of the corresponding
/// reference layer (the coarsest extension fuses every extension).
inline bool check_coarsest_against(const Extension& candidate, const Extension& reference) {
    if (candidate.base.order != reference.base.order ||
        candidate.height() != reference.height())
        fail(Errc::BaseMismatch, "extensions have different shape");
    // Base partitions must agree as partitions (labels may differ).
    const Layer cb = layer_from_scheme(candidate.base);
    const Layer rb = layer_from_scheme(reference.base);
    if (!is_fusion(cb, rb) || !is_fusion(rb, cb))
        fail(Errc::BaseMismatch, "base schemes define different partitions");
    for (int s = 1; s <= candidate.height(); ++s)
        if (!is_fusion(candidate.layers[s - 1], reference.layers[s - 1])) return false;
    return true;
}

}  // namespace asx

#endif
