#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "irrkatz/corpus.hpp"

namespace testing {

using namespace irrkatz;

inline Rat random_rat(std::mt19937_64& rng, long span = 9, long max_den = 7) {
    std::uniform_int_distribution<long> num(-span, span), den(1, max_den);
    return Rat(num(rng), den(rng));
}

inline Poly random_poly(std::mt19937_64& rng, int deg) {
    std::vector<Rat> c;
    for (int k = 0; k <= deg; ++k) c.push_back(random_rat(rng));
    return Poly(c);
}

/* polynomial coefficients, nonzero leading coefficient */
inline DiffOperator random_operator(std::mt19937_64& rng, int rank, int deg) {
    std::vector<RatFunc> a;
    for (int i = 0; i <= rank; ++i) a.push_back(RatFunc(random_poly(rng, deg)));
    if (a.back().is_zero()) a.back() = RatFunc(Poly::x());
    return DiffOperator(a);
}

/* valid but arbitrary weights: symmetric, zero diagonal, off-diagonal in [−max_w, −1] */
inline LatticeShape random_shape(std::mt19937_64& rng, int max_points = 4, int max_factors = 3, int max_len = 3,
                                 int max_w = 3) {
    std::uniform_int_distribution<int> np(2, max_points), nf(1, max_factors), nl(1, max_len), nw(1, max_w);
    int p = np(rng);
    std::vector<std::vector<int>> lengths(p);
    std::vector<std::vector<std::vector<int>>> weights(p);
    for (int i = 0; i < p; ++i) {
        int k = nf(rng);
        for (int j = 0; j < k; ++j) lengths[i].push_back(nl(rng));
        weights[i].assign(k, std::vector<int>(k, 0));
        for (int j = 0; j < k; ++j)
            for (int jj = j + 1; jj < k; ++jj) weights[i][j][jj] = weights[i][jj][j] = -nw(rng);
    }
    return LatticeShape(lengths, weights);
}

inline RootVector random_root_vector(const BasisPtr& B, std::mt19937_64& rng, long span = 3) {
    std::uniform_int_distribution<long> d(-span, span);
    RootVector r = RootVector::zero(B);
    for (auto& c : r.coords) c = d(rng);
    return r;
}

/* nonnegative, balanced with the given rank: each point's mass spread over random slots */
inline LatticeVector random_balanced_positive(const ShapePtr& shape, std::mt19937_64& rng, long rank) {
    LatticeVector a = LatticeVector::zero(shape);
    for (int i = 0; i < shape->points(); ++i) {
        std::vector<std::pair<int, int>> slots;
        for (int j = 0; j < shape->factors(i); ++j)
            for (int s = 0; s < shape->length(i, j); ++s) slots.emplace_back(j, s);
        std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
        for (long u = 0; u < rank; ++u) {
            auto [j, s] = slots[pick(rng)];
            ++a.at(i, j, s);
        }
    }
    return a;
}

struct CorpusCase {
    const CorpusEntry* entry;
    DiffOperator op;
    FormalData formal;
    ShapePtr shape;
    LatticeVector m;
};

inline const std::vector<CorpusCase>& corpus_cases() {
    static const std::vector<CorpusCase> cases = [] {
        std::vector<CorpusCase> out;
        for (const auto& e : corpus()) {
            DiffOperator P = e.instantiate();
            FormalData F = extract_formal_data(P);
            ShapePtr sh = make_shape(LatticeShape::from_formal(F));
            out.push_back({&e, P, F, sh, multiplicities(F, sh)});
        }
        return out;
    }();
    return cases;
}

inline const CorpusCase& corpus_case(const std::string& name) {
    for (const auto& c : corpus_cases())
        if (c.entry->name == name) return c;
    throw InvalidInput("unknown corpus case " + name);
}

} // namespace testing
