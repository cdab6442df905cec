#include "doctest.h"

#include <random>
#include <vector>

#include "asx/engine.hpp"
#include "asx/oracle.hpp"
#include "asx/scheme.hpp"
#include "asx/tensor.hpp"

using namespace asx;

namespace {

const std::vector<Color> kZ3 = {0, 1, 2, 2, 0, 1, 1, 2, 0};
const std::vector<Color> kK3 = {0, 1, 1, 1, 0, 1, 1, 1, 0};

IntTensor random_tensor(int order, int dim, std::mt19937& rng) {
    IntTensor t = IntTensor::zeros(order, dim);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (auto& e : t.entries) e = pick(rng);
    return t;
}

// Direct-summation oracle for the contraction, decoding every index pair.
IntTensor inner_product_oracle(const IntTensor& e, const IntTensor& f) {
    const int d = e.dim;
    IntTensor out = IntTensor::zeros(e.order + f.order - 2, d);
    for (std::size_t a = 0; a < e.entries.size(); ++a)
        for (std::size_t b = 0; b < f.entries.size(); ++b) {
            // last coordinate of a must equal first coordinate of b
            int za = static_cast<int>(a % d);
            int zb = static_cast<int>(b / checked_pow(d, f.order - 1));
            if (za != zb) continue;
            std::size_t x = a / d;
            std::size_t y = b % checked_pow(d, f.order - 1);
            out.entries[x * checked_pow(d, f.order - 1) + y] += e.entries[a] * f.entries[b];
        }
    return out;
}

}  // namespace

TEST_CASE("adjacency tensors of layers") {
    Layer z3 = layer_from_scheme(validate_scheme(kZ3, 3));
    IntTensor identity = adjacency_tensor(z3, 0);
    CHECK(identity.order == 2);
    CHECK(identity.dim == 3);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(identity.entries[x * 3 + y] == (x == y ? 1 : 0));

    Layer k3 = layer_from_scheme(validate_scheme(kK3, 3));
    IntTensor off = adjacency_tensor(k3, 1);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(off.entries[x * 3 + y] == (x == y ? 0 : 1));

    Layer full;
    full.order = 2;
    full.height = 1;
    full.cell_count = 1;
    full.colors.assign(8, 0);
    IntTensor ones = adjacency_tensor(full, 0);
    CHECK(ones.order == 3);
    for (auto e : ones.entries) CHECK(e == 1);
}

TEST_CASE("cell adjacency tensors sum to the all-ones tensor") {
    Layer k3 = layer_from_scheme(validate_scheme(kK3, 3));
    IntTensor sum = IntTensor::zeros(2, 3);
    for (Color c = 0; c < k3.cell_count; ++c) sum = tensor_add(sum, adjacency_tensor(k3, c));
    for (auto e : sum.entries) CHECK(e == 1);
}

TEST_CASE("tensor add and scale") {
    std::mt19937 rng(3);
    IntTensor a = random_tensor(2, 3, rng);
    IntTensor b = random_tensor(2, 3, rng);
    IntTensor s = tensor_add(a, b);
    for (std::size_t i = 0; i < s.entries.size(); ++i)
        CHECK(s.entries[i] == a.entries[i] + b.entries[i]);
    IntTensor doubled = tensor_scale(2, a);
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        CHECK(doubled.entries[i] == 2 * a.entries[i]);

    IntTensor wrong = random_tensor(3, 3, rng);
    CHECK_THROWS_AS(static_cast<void>(tensor_add(a, wrong)), Error);
}

TEST_CASE("inner product generalizes matrix multiplication") {
    Layer z3 = layer_from_scheme(validate_scheme(kZ3, 3));
    IntTensor identity = adjacency_tensor(z3, 0);
    IntTensor p = adjacency_tensor(z3, 1);   // permutation matrix x -> x+1
    IntTensor p2 = adjacency_tensor(z3, 2);  // its square

    IntTensor ii = inner_product(identity, identity);
    CHECK(ii.entries == identity.entries);

    IntTensor pp = inner_product(p, p);
    CHECK(pp.entries == p2.entries);
    IntTensor ppp = inner_product(pp, p);
    CHECK(ppp.entries == identity.entries);

    IntTensor wrong = IntTensor::zeros(2, 4);
    CHECK_THROWS_AS(static_cast<void>(inner_product(p, wrong)), Error);
}

TEST_CASE("inner product of a 3-tensor with a matrix") {
    // E = indicator of {(x,x,x)} in Q^3, d = 2; J = all-ones 2x2 matrix.
    // (E . J)(x,y,w) = sum_z E(x,y,z) J(z,w) = [x == y].
    const int d = 2;
    IntTensor e = IntTensor::zeros(3, d);
    for (int x = 0; x < d; ++x) e.entries[x * 4 + x * 2 + x] = 1;
    IntTensor j = IntTensor::zeros(2, d);
    for (auto& v : j.entries) v = 1;

    IntTensor prod = inner_product(e, j);
    CHECK(prod.order == 3);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int w = 0; w < d; ++w)
                CHECK(prod.entries[x * 4 + y * 2 + w] == (x == y ? 1 : 0));

    CHECK(prod.entries == inner_product_oracle(e, j).entries);
}

TEST_CASE("inner product laws on random tensors") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        int d = 2;
        int oa = 2 + rng() % 2, ob = 2 + rng() % 2, oc = 2 + rng() % 2;
        IntTensor a = random_tensor(oa, d, rng);
        IntTensor b = random_tensor(ob, d, rng);
        IntTensor c = random_tensor(oc, d, rng);

        // matches the direct-summation oracle
        CHECK(inner_product(a, b).entries == inner_product_oracle(a, b).entries);

        // associativity
        CHECK(inner_product(inner_product(a, b), c).entries ==
              inner_product(a, inner_product(b, c)).entries);

        // distributivity over addition (same shape needed)
        IntTensor b2 = random_tensor(ob, d, rng);
        CHECK(inner_product(a, tensor_add(b, b2)).entries ==
              tensor_add(inner_product(a, b), inner_product(a, b2)).entries);

        // scalar compatibility
        CHECK(inner_product(tensor_scale(5, a), b).entries ==
              tensor_scale(5, inner_product(a, b)).entries);
    }
}

TEST_CASE("intersection profiles are constant on cells of valid extensions") {
    Scheme k3 = validate_scheme(kK3, 3);
    ExtendResult res = extend(k3, 1);
    REQUIRE(res.extensible());
    const Extension& ext = *res.extension;

    SUBCASE("m=0, n=1 against the full off-diagonal cell") {
        for (Color i = 0; i < ext.cells_at(0); ++i)
            for (Color j = 0; j < ext.cells_at(1); ++j) {
                IntTensor profile = intersection_profile(ext, 0, 1, i, j);
                std::vector<std::int64_t> seen(ext.cells_at(1), -1);
                for (TupleIndex u = 0; u < profile.entries.size(); ++u) {
                    Color k = ext.color_at(1, u);
                    if (seen[k] == -1)
                        seen[k] = profile.entries[u];
                    else
                        CHECK(seen[k] == profile.entries[u]);
                }
            }
    }

    SUBCASE("m=n=0 profiles recover the base intersection numbers") {
        IntersectionTable table = intersection_numbers(k3);
        for (Color i = 0; i < k3.cell_count; ++i)
            for (Color j = 0; j < k3.cell_count; ++j) {
                IntTensor profile = intersection_profile(ext, 0, 0, i, j);
                for (TupleIndex u = 0; u < profile.entries.size(); ++u)
                    CHECK(profile.entries[u] == table.at(i, j, k3.colors[u]));
            }
    }

    CHECK_THROWS_AS(static_cast<void>(intersection_profile(ext, 0, 2, 0, 0)), Error);
}

TEST_CASE("composition holds on orbit extensions and literal tensor identity") {
    PermGroup s3{3, {{1, 0, 2}, {1, 2, 0}}};
    Extension ext = orbit_extension(s3, 1);
    CompositionReport report = check_composition(ext);
    CHECK(report.ok);

    // Literal theorem: A^0_i . A^1_j = sum_k c(i,j,k) A^1_k with the
    // constants read off any representative of cell k.
    Layer base = layer_from_scheme(ext.base);
    for (Color i = 0; i < ext.cells_at(0); ++i)
        for (Color j = 0; j < ext.cells_at(1); ++j) {
            IntTensor lhs =
                inner_product(adjacency_tensor(base, i), adjacency_tensor(ext.layers[0], j));
            IntTensor profile = intersection_profile(ext, 0, 1, i, j);
            IntTensor rhs = IntTensor::zeros(lhs.order, lhs.dim);
            for (Color k = 0; k < ext.cells_at(1); ++k) {
                TupleIndex rep = 0;
                while (ext.color_at(1, rep) != k) ++rep;
                rhs = tensor_add(rhs, tensor_scale(profile.entries[rep],
                                                   adjacency_tensor(ext.layers[0], k)));
            }
            CHECK(lhs.entries == rhs.entries);
        }
}

TEST_CASE("composition check accepts height zero and flags bad layers") {
    Scheme k3 = validate_scheme(kK3, 3);
    Extension bare;
    bare.base = k3;
    CHECK(check_composition(bare).ok);

    // Over the cyclic base, a layer refined only by the diagonal prefix
    // split fails the composition property: the (0,1) profile of cell 1
    // varies with the off-diagonal base color of (x, y0).
    Extension half;
    half.base = validate_scheme(kZ3, 3);
    Layer layer;
    layer.order = 3;
    layer.height = 1;
    layer.cell_count = 2;
    layer.colors.assign(27, 0);
    for (TupleIndex u = 0; u < 27; ++u) {
        auto tup = index_tuple(u, 3, 3);
        if (tup[0] == tup[1]) layer.colors[u] = 1;
    }
    half.layers.push_back(layer);
    CompositionReport report = check_composition(half);
    CHECK_FALSE(report.ok);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->value_a != report.witness->value_b);
}
