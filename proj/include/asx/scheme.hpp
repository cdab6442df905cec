#ifndef ASX_SCHEME_HPP
#define ASX_SCHEME_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "asx/common.hpp"

namespace asx {

using Color = std::int32_t;

/// An association scheme: a coloring of Q x Q whose color classes satisfy
/// the identity, transposition and intersection axioms. Cell 0 is always
/// the identity relation.
struct Scheme {
    int order = 0;       // |Q|
    int cell_count = 0;  // number of color classes
    std::vector<Color> colors;  // row-major d*d

    Color color(int x, int y) const { return colors[static_cast<std::size_t>(x) * order + y]; }
};

/// The intersection numbers c(i,j,k) of a scheme, indexed by cell triples.
struct IntersectionTable {
    int cell_count = 0;
    std::vector<int> entries;  // [i][j][k] flattened

    int at(int i, int j, int k) const {
        return entries[(static_cast<std::size_t>(i) * cell_count + j) * cell_count + k];
    }
};

struct PermGroup {
    int degree = 0;
    std::vector<std::vector<int>> generators;  // image arrays on {0..degree-1}
};

namespace detail {

inline void check_square_matrix(const std::vector<Color>& m, int d) {
    if (d <= 0 || m.size() != static_cast<std::size_t>(d) * d)
        fail(Errc::ShapeMismatch, "color matrix is not square");
}

}  // namespace detail

/// Checks (A1)-(A3) on a raw color matrix and returns the validated scheme.
/// Colors must be contiguous from 0 with cell 0 the identity relation.
inline Scheme validate_scheme(const std::vector<Color>& matrix, int d) {
    detail::check_square_matrix(matrix, d);

    Color max_color = 0;
    for (Color c : matrix) {
        if (c < 0) fail(Errc::GapError, "negative color");
        max_color = std::max(max_color, c);
    }
    const int s = max_color + 1;

    std::vector<std::int64_t> counts(s, 0);
    for (Color c : matrix) ++counts[c];
    for (int c = 0; c < s; ++c)
        if (counts[c] == 0)
            fail(Errc::GapError, "color " + std::to_string(c) + " never occurs");

    auto at = [&](int x, int y) { return matrix[static_cast<std::size_t>(x) * d + y]; };

    // (A1)
    for (int x = 0; x < d; ++x)
        if (at(x, x) != 0)
            fail(Errc::A1Violation,
                 "color 0 missing at (" + std::to_string(x) + "," + std::to_string(x) + ")");
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            if (x != y && at(x, y) == 0)
                fail(Errc::A1Violation, "off-diagonal identity color at (" + std::to_string(x) +
                                            "," + std::to_string(y) + ")");

    // (A2): transpose of each cell is a cell.
    std::vector<Color> transpose_of(s, -1);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            Color c = at(x, y), ct = at(y, x);
            if (transpose_of[c] == -1)
                transpose_of[c] = ct;
            else if (transpose_of[c] != ct)
                fail(Errc::A2Violation, "transpose of cell " + std::to_string(c) + " is not a cell");
        }

    // (A3): |{z : (x,z) in C_i, (z,y) in C_j}| constant over (x,y) in C_k.
    std::vector<int> reference((std::size_t)s * s * s, -1);
    std::vector<int> local((std::size_t)s * s, 0);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            std::fill(local.begin(), local.end(), 0);
            for (int z = 0; z < d; ++z) ++local[static_cast<std::size_t>(at(x, z)) * s + at(z, y)];
            Color k = at(x, y);
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) {
                    int& ref = reference[(static_cast<std::size_t>(i) * s + j) * s + k];
                    int v = local[static_cast<std::size_t>(i) * s + j];
                    if (ref == -1)
                        ref = v;
                    else if (ref != v)
                        fail(Errc::A3Violation,
                             "c(" + std::to_string(i) + "," + std::to_string(j) + ",.) on cell " +
                                 std::to_string(k) + " differs: " + std::to_string(ref) + " vs " +
                                 std::to_string(v) + " at (" + std::to_string(x) + "," +
                                 std::to_string(y) + ")");
                }
        }

    return Scheme{d, s, matrix};
}

/// c(i,j,k) computed from one representative pair per cell k.
inline IntersectionTable intersection_numbers(const Scheme& scheme) {
    const int d = scheme.order, s = scheme.cell_count;
    IntersectionTable table;
    table.cell_count = s;
    table.entries.assign((std::size_t)s * s * s, 0);

    std::vector<std::pair<int, int>> rep(s, {-1, -1});
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            Color k = scheme.color(x, y);
            if (rep[k].first == -1) rep[k] = {x, y};
        }
    for (int k = 0; k < s; ++k) {
        auto [x, y] = rep[k];
        for (int z = 0; z < d; ++z)
            ++table.entries[(static_cast<std::size_t>(scheme.color(x, z)) * s +
                             scheme.color(z, y)) * s + k];
    }
    return table;
}

/// Relabels cells by first occurrence in a row-major scan, keeping the
/// identity cell at 0. Idempotent.
inline Scheme relabel_canonical(const Scheme& scheme) {
    std::vector<Color> remap(scheme.cell_count, -1);
    remap[0] = 0;
    Color next = 1;
    Scheme out;
    out.order = scheme.order;
    out.cell_count = scheme.cell_count;
    out.colors.resize(scheme.colors.size());
    for (std::size_t i = 0; i < scheme.colors.size(); ++i) {
        Color c = scheme.colors[i];
        if (remap[c] == -1) remap[c] = next++;
        out.colors[i] = remap[c];
    }
    return out;
}

namespace detail {

inline void check_generators(const PermGroup& group) {
    const int d = group.degree;
    if (d <= 0) fail(Errc::RangeError, "degree must be positive");
    for (const auto& g : group.generators) {
        if (static_cast<int>(g.size()) != d) fail(Errc::NotBijection, "generator length mismatch");
        std::vector<char> seen(d, 0);
        for (int img : g) {
            if (img < 0 || img >= d || seen[img]) fail(Errc::NotBijection, "not a bijection");
            seen[img] = 1;
        }
    }
}

inline bool is_transitive(const PermGroup& group) {
    const int d = group.degree;
    std::vector<char> seen(d, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (const auto& g : group.generators)
            if (!seen[g[x]]) {
                seen[g[x]] = 1;
                ++reached;
                queue.push_back(g[x]);
            }
    }
    return reached == d;
}

}  // namespace detail

/// The Schurian scheme of a transitive group: cells are the orbits of the
/// diagonal action on Q x Q, diagonal orbit labeled 0.
inline Scheme scheme_from_orbitals(const PermGroup& group) {
    detail::check_generators(group);
    if (!detail::is_transitive(group))
        fail(Errc::NotTransitive, "group does not act transitively");

    const int d = group.degree;
    std::vector<Color> colors(static_cast<std::size_t>(d) * d, -1);
    Color next = 0;
    // Seed the diagonal orbit first so it gets label 0.
    std::vector<std::pair<int, int>> seeds;
    seeds.emplace_back(0, 0);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) seeds.emplace_back(x, y);

    for (auto [sx, sy] : seeds) {
        if (colors[static_cast<std::size_t>(sx) * d + sy] != -1) continue;
        Color label = next++;
        std::deque<std::pair<int, int>> queue{{sx, sy}};
        colors[static_cast<std::size_t>(sx) * d + sy] = label;
        while (!queue.empty()) {
            auto [x, y] = queue.front();
            queue.pop_front();
            for (const auto& g : group.generators) {
                std::size_t idx = static_cast<std::size_t>(g[x]) * d + g[y];
                if (colors[idx] == -1) {
                    colors[idx] = label;
                    queue.emplace_back(g[x], g[y]);
                }
            }
        }
    }
    return relabel_canonical(Scheme{d, next, colors});
}

/// Tensor product: points (x1,x2) encoded as x1*d2+x2, cells are pairs of
/// cells relabeled canonically with the identity pair at 0.
inline Scheme tensor_product(const Scheme& a, const Scheme& b) {
    const int d = a.order * b.order;
    std::vector<Color> colors(static_cast<std::size_t>(d) * d);
    for (int x1 = 0; x1 < a.order; ++x1)
        for (int x2 = 0; x2 < b.order; ++x2)
            for (int y1 = 0; y1 < a.order; ++y1)
                for (int y2 = 0; y2 < b.order; ++y2) {
                    int x = x1 * b.order + x2, y = y1 * b.order + y2;
                    colors[static_cast<std::size_t>(x) * d + y] =
                        a.color(x1, y1) * b.cell_count + b.color(x2, y2);
                }
    return relabel_canonical(Scheme{d, a.cell_count * b.cell_count, colors});
}

}  // namespace asx

#endif
