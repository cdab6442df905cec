#ifndef ASX_LAYER_HPP
#define ASX_LAYER_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "asx/common.hpp"
#include "asx/scheme.hpp"

namespace asx {

using TupleIndex = std::uint64_t;

/// A partition of Q^(height+2), stored as a dense flat color array in
/// mixed-radix order with the first coordinate most significant.
struct Layer {
    int order = 0;      // d
    int height = 0;     // arity is height + 2
    int cell_count = 0;
    std::vector<Color> colors;  // length d^(height+2)

    int arity() const { return height + 2; }
    TupleIndex size() const { return colors.size(); }
};

/// A family of layers above a base scheme; layer at height s partitions
/// Q^(s+2), the base is height 0.
struct Extension {
    Scheme base;
    std::vector<Layer> layers;  // heights 1..t

    int height() const { return static_cast<int>(layers.size()); }

    /// Color of an encoded tuple at the given height (0 = base scheme).
    Color color_at(int h, TupleIndex idx) const {
        if (h == 0) return base.colors[idx];
        return layers[h - 1].colors[idx];
    }

    int cells_at(int h) const { return h == 0 ? base.cell_count : layers[h - 1].cell_count; }
};

inline TupleIndex tuple_index(const std::vector<int>& tuple, int d) {
    TupleIndex idx = 0;
    for (int coord : tuple) {
        if (coord < 0 || coord >= d) fail(Errc::RangeError, "tuple entry out of range");
        idx = idx * d + coord;
    }
    return idx;
}

inline std::vector<int> index_tuple(TupleIndex idx, int d, int arity) {
    if (idx >= checked_pow(d, arity)) fail(Errc::RangeError, "tuple index out of range");
    std::vector<int> tuple(arity);
    for (int i = arity - 1; i >= 0; --i) {
        tuple[i] = static_cast<int>(idx % d);
        idx /= d;
    }
    return tuple;
}

/// Coordinate i of the result is coordinate tau[i] of the input.
inline std::vector<int> apply_permutation(const std::vector<int>& tuple,
                                          const std::vector<int>& tau) {
    std::vector<int> out(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) out[i] = tuple[tau[i]];
    return out;
}

/// Left-to-right composition: apply sigma first, then tau. Matches
/// apply_permutation(apply_permutation(u, tau), sigma) ==
/// apply_permutation(u, compose(sigma, tau)).
inline std::vector<int> compose_permutations(const std::vector<int>& sigma,
                                             const std::vector<int>& tau) {
    std::vector<int> out(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) out[i] = tau[sigma[i]];
    return out;
}

/// Index-level coordinate permutation; equivalent to decode/permute/encode.
inline TupleIndex permute_index(TupleIndex idx, int d, const std::vector<int>& tau) {
    const int a = static_cast<int>(tau.size());
    int coords[16];
    for (int i = a - 1; i >= 0; --i) {
        coords[i] = static_cast<int>(idx % d);
        idx /= d;
    }
    TupleIndex out = 0;
    for (int i = 0; i < a; ++i) out = out * d + coords[tau[i]];
    return out;
}

/// Distinct projections (last coordinate dropped) of the tuples of one cell,
/// as sorted encoded (arity-1)-tuple indices.
inline std::vector<TupleIndex> project_cell(const Layer& layer, Color cell) {
    std::vector<char> seen(layer.size() / layer.order, 0);
    for (TupleIndex u = 0; u < layer.size(); ++u)
        if (layer.colors[u] == cell) seen[u / layer.order] = 1;
    std::vector<TupleIndex> out;
    for (TupleIndex p = 0; p < seen.size(); ++p)
        if (seen[p]) out.push_back(p);
    return out;
}

/// Splits cell `cell` by the tuple set S (encoded indices). If both parts
/// are nonempty the split-off part C∩S gets a fresh color; otherwise the
/// layer is unchanged. Returns whether a split occurred.
inline bool split_cell(Layer& layer, Color cell, const std::vector<TupleIndex>& subset) {
    std::uint64_t inside = 0, total = 0;
    std::vector<char> marked(layer.size(), 0);
    for (TupleIndex u : subset) marked[u] = 1;
    for (TupleIndex u = 0; u < layer.size(); ++u)
        if (layer.colors[u] == cell) {
            ++total;
            if (marked[u]) ++inside;
        }
    if (inside == 0 || inside == total) return false;
    Color fresh = layer.cell_count++;
    for (TupleIndex u : subset)
        if (layer.colors[u] == cell) layer.colors[u] = fresh;
    return true;
}

/// True iff every cell of `coarse` is a union of cells of `fine`.
inline bool is_fusion(const Layer& coarse, const Layer& fine) {
    if (coarse.order != fine.order || coarse.arity() != fine.arity())
        fail(Errc::ArityMismatch, "layers have different shape");
    std::vector<Color> map(fine.cell_count, -1);
    for (TupleIndex u = 0; u < fine.size(); ++u) {
        Color f = fine.colors[u], c = coarse.colors[u];
        if (map[f] == -1)
            map[f] = c;
        else if (map[f] != c)
            return false;
    }
    return true;
}

/// Colors relabeled by first occurrence in the flat scan; idempotent and
/// invariant under color permutations of the input.
inline Layer canonical_colors(const Layer& layer) {
    Layer out = layer;
    std::vector<Color> remap(layer.cell_count, -1);
    Color next = 0;
    for (TupleIndex u = 0; u < layer.size(); ++u) {
        Color c = layer.colors[u];
        if (remap[c] == -1) remap[c] = next++;
        out.colors[u] = remap[c];
    }
    out.cell_count = next;
    return out;
}

/// The base scheme viewed as the height-0 layer.
inline Layer layer_from_scheme(const Scheme& scheme) {
    return Layer{scheme.order, 0, scheme.cell_count, scheme.colors};
}

inline std::vector<std::uint64_t> cell_sizes(const Layer& layer) {
    std::vector<std::uint64_t> sizes(layer.cell_count, 0);
    for (Color c : layer.colors) ++sizes[c];
    return sizes;
}

/// All permutations of {0..arity-1} in lexicographic order.
inline std::vector<std::vector<int>> symmetric_group(int arity) {
    std::vector<int> tau(arity);
    for (int i = 0; i < arity; ++i) tau[i] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(tau);
    } while (std::next_permutation(tau.begin(), tau.end()));
    return out;
}

}  // namespace asx

#endif
