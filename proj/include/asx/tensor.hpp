#ifndef ASX_TENSOR_HPP
#define ASX_TENSOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asx/common.hpp"
#include "asx/layer.hpp"
#include "asx/scheme.hpp"

namespace asx {

/// Integer tensor over {0..dim-1}^order, flat mixed-radix storage.
struct IntTensor {
    int order = 0;
    int dim = 0;
    std::vector<std::int64_t> entries;  // length dim^order

    static IntTensor zeros(int order, int dim) {
        return IntTensor{order, dim,
                         std::vector<std::int64_t>(checked_pow(dim, order), 0)};
    }
};

/// 0/1 indicator tensor of one cell of a layer.
inline IntTensor adjacency_tensor(const Layer& layer, Color cell) {
    IntTensor t = IntTensor::zeros(layer.arity(), layer.order);
    for (TupleIndex u = 0; u < layer.size(); ++u)
        if (layer.colors[u] == cell) t.entries[u] = 1;
    return t;
}

inline IntTensor tensor_add(const IntTensor& a, const IntTensor& b) {
    if (a.order != b.order || a.dim != b.dim)
        fail(Errc::ShapeMismatch, "tensor shapes differ");
    IntTensor out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] += b.entries[i];
    return out;
}

inline IntTensor tensor_scale(std::int64_t c, const IntTensor& a) {
    IntTensor out = a;
    for (auto& e : out.entries) e *= c;
    return out;
}

/// Single-index contraction joining the last index of `e` to the first
/// index of `f`; generalizes matrix multiplication.
inline IntTensor inner_product(const IntTensor& e, const IntTensor& f) {
    if (e.dim != f.dim) fail(Errc::DimensionMismatch, "tensor dimensions differ");
    const int d = e.dim;
    IntTensor out = IntTensor::zeros(e.order + f.order - 2, d);
    const TupleIndex left = checked_pow(d, e.order - 1);
    const TupleIndex right = checked_pow(d, f.order - 1);
    for (TupleIndex x = 0; x < left; ++x)
        for (TupleIndex y = 0; y < right; ++y) {
            std::int64_t sum = 0;
            for (int z = 0; z < d; ++z)
                sum += e.entries[x * d + z] * f.entries[z * right + y];
            out.entries[x * right + y] = sum;
        }
    return out;
}

/// The profile P for cell i at height m against cell j at height n: entry at
/// (x0..xm,y0..yn) counts middle points z with (x0..xm,z) in cell i and
/// (z,y0..yn) in cell j. Computed by direct counting over layer colors.
inline IntTensor intersection_profile(const Extension& ext, int m, int n, Color cell_i,
                                      Color cell_j) {
    if (m < 0 || n < 0 || m > ext.height() || n > ext.height())
        fail(Errc::HeightUnavailable, "height not present in extension");
    const int d = ext.base.order;
    IntTensor out = IntTensor::zeros(m + n + 2, d);
    const TupleIndex ysize = checked_pow(d, n + 1);
    const TupleIndex xsize = checked_pow(d, m + 1);
    for (TupleIndex x = 0; x < xsize; ++x)
        for (TupleIndex y = 0; y < ysize; ++y) {
            std::int64_t count = 0;
            for (int z = 0; z < d; ++z)
                if (ext.color_at(m, x * d + z) == cell_i &&
                    ext.color_at(n, z * ysize + y) == cell_j)
                    ++count;
            out.entries[x * ysize + y] = count;
        }
    return out;
}

struct CompositionWitness {
    int m = 0, n = 0;
    Color cell_i = 0, cell_j = 0;
    Color cell_k = 0;
    TupleIndex tuple_a = 0, tuple_b = 0;
    std::int64_t value_a = 0, value_b = 0;
};

struct CompositionReport {
    bool ok = true;
    std::optional<CompositionWitness> witness;
};

/// Verifies that every intersection profile is constant on every cell at
/// height m+n, for all (m,n) with m+n <= t. Equivalent to the adjacency
/// tensors of each layer spanning a ring under the inner product.
inline CompositionReport check_composition(const Extension& ext) {
    const int t = ext.height();
    for (int m = 0; m <= t; ++m)
        for (int n = 0; m + n <= t; ++n) {
            const int s = m + n;
            for (Color i = 0; i < ext.cells_at(m); ++i)
                for (Color j = 0; j < ext.cells_at(n); ++j) {
                    IntTensor profile = intersection_profile(ext, m, n, i, j);
                    std::vector<TupleIndex> first(ext.cells_at(s),
                                                  static_cast<TupleIndex>(-1));
                    for (TupleIndex u = 0; u < profile.entries.size(); ++u) {
                        Color k = ext.color_at(s, u);
                        if (first[k] == static_cast<TupleIndex>(-1)) {
                            first[k] = u;
                        } else if (profile.entries[first[k]] != profile.entries[u]) {
                            CompositionReport report;
                            report.ok = false;
                            report.witness = CompositionWitness{
                                m,  n, i, j, k, first[k], u,
                                profile.entries[first[k]], profile.entries[u]};
                            return report;
                        }
                    }
                }
        }
    return {};
}

}  // namespace asx

#endif
