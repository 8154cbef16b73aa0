#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace irrkatz;

namespace {

ShapePtr fuchs(std::vector<int> l) { return make_shape(LatticeShape::fuchsian(l)); }

ShapePtr tri() { return make_shape(LatticeShape({{1, 1}}, {{{0, -3}, {-3, 0}}})); }

ShapePtr dconf() {
    return make_shape(LatticeShape({{1, 1}, {1, 1}}, {{{0, -1}, {-1, 0}}, {{0, -1}, {-1, 0}}}));
}

/* d(a;t) written out term by term, independent of the library loop */
long long defect_by_hand(const LatticeVector& a, const IndexTuple& t) {
    const LatticeShape& sh = a.shape();
    long long infinity_part = 0, finite_part = 0, first = 0;
    for (int j = 0; j < sh.factors(0); ++j) {
        long long blk = 0;
        for (int s = 0; s < sh.length(0, j); ++s) blk += a.at(0, j, s);
        infinity_part += (-sh.weight(0, j, t[0]) - 1) * blk;
    }
    for (int i = 1; i < sh.points(); ++i)
        for (int j = 0; j < sh.factors(i); ++j) {
            long long blk = 0;
            for (int s = 0; s < sh.length(i, j); ++s) blk += a.at(i, j, s);
            finite_part += (-sh.weight(i, j, t[i]) + 1) * blk;
        }
    for (int i = 0; i < sh.points(); ++i) first += a.at(i, t[i], 0);
    return infinity_part + finite_part - first;
}

} // namespace

TEST_CASE("Shapes validate their weight tables") {
    CHECK_THROWS_AS(LatticeShape({}, {}), InvalidInput);
    CHECK_THROWS_AS(LatticeShape({{1, 1}}, {{{0, -1}, {-2, 0}}}), InvalidInput);
    CHECK_THROWS_AS(LatticeShape({{1, 1}}, {{{0, 0}, {0, 0}}}), InvalidInput);
    CHECK_THROWS_AS(LatticeShape({{1, 1}}, {{{1, -1}, {-1, 0}}}), InvalidInput);
    CHECK_THROWS_AS(LatticeShape({{0}}, {{{0}}}), InvalidInput);
    CHECK_NOTHROW(LatticeShape({{2, 1}}, {{{0, -2}, {-2, 0}}}));
    const auto& cc = testing::corpus_case("cHeun");
    CHECK(cc.shape->weight(0, 0, 1) == -1);
    CHECK(cc.shape->factor_counts() == std::vector<int>{2, 1, 1});
    CHECK(testing::corpus_case("tHeun").shape->weight(0, 0, 1) == -3);
    CHECK(testing::corpus_case("bHeun").shape->weight(0, 0, 1) == -2);
}

TEST_CASE("Lattice text form") {
    auto sh = dconf();
    LatticeVector a = LatticeVector::parse(sh, "1;2|3;0");
    CHECK(a.at(0, 1, 0) == 2);
    CHECK(a.at(1, 0, 0) == 3);
    CHECK(a.str() == "1;2|3;0");
    CHECK_THROWS_AS(LatticeVector::parse(sh, "1;2|3"), InvalidInput);
    CHECK_THROWS_AS(LatticeVector::parse(sh, "1;x|3;0"), InvalidInput);
    CHECK_THROWS_AS(LatticeVector::parse(sh, "1;2|3;0;1"), InvalidInput);
}

TEST_CASE("Rank is the common block sum") {
    CHECK(rank(LatticeVector::parse(fuchs({2, 2, 2, 2}), "1,1|1,1|1,1|1,1")) == 2);
    CHECK(rank(LatticeVector::zero(fuchs({2, 2, 2}))) == 0);
    CHECK(rank(LatticeVector::parse(fuchs({2, 2, 2}), "1,1|1,1|1,1")) == 2);
    CHECK_THROWS_AS(rank(LatticeVector::parse(fuchs({2, 2}), "1,1|2,1")), InvalidInput);
    for (const auto& cc : testing::corpus_cases()) CHECK(rank(cc.m) == cc.op.rank());
}

TEST_CASE("Defect examples") {
    CHECK(defect(LatticeVector::parse(fuchs({2, 2, 2, 2}), "1,1|1,1|1,1|1,1"), {0, 0, 0, 0}) == 0);
    CHECK(defect(LatticeVector::parse(fuchs({2, 2, 2}), "1,1|1,1|1,1"), {0, 0, 0}) == -1);
    CHECK(defect(LatticeVector::parse(tri(), "1;1"), {0}) == 0);
    CHECK(defect(LatticeVector::parse(tri(), "1;1"), {1}) == 0);
    CHECK_THROWS_AS(defect(LatticeVector::parse(tri(), "1;1"), {2}), InvalidInput);
    CHECK_THROWS_AS(defect(LatticeVector::parse(tri(), "1;1"), {0, 0}), InvalidInput);
}

TEST_CASE("Twisted Euler endomorphism examples") {
    auto g = LatticeVector::parse(fuchs({2, 2, 2}), "1,1|1,1|1,1");
    auto h = sigma_t(g, {0, 0, 0});
    CHECK(h.str() == "0,1|0,1|0,1");
    CHECK(rank(h) == 1);
    auto heun = LatticeVector::parse(fuchs({2, 2, 2, 2}), "1,1|1,1|1,1|1,1");
    CHECK(sigma_t(heun, {0, 0, 0, 0}) == heun);
    for (const auto& cc : testing::corpus_cases())
        for (const auto& t : cc.shape->tuples())
            if (defect(cc.m, t) == 0) CHECK(sigma_t(cc.m, t) == cc.m);
}

TEST_CASE("Permutation examples") {
    auto a = LatticeVector::parse(fuchs({2, 2}), "2,1|1,2");
    CHECK(sigma_perm(a, 0, 0, 0).str() == "1,2|1,2");
    CHECK(sigma_perm(sigma_perm(a, 1, 0, 0), 1, 0, 0) == a);
    CHECK(rank(sigma_perm(a, 0, 0, 0)) == rank(a));
    CHECK_THROWS_AS(sigma_perm(a, 0, 0, 1), InvalidInput);
    CHECK_THROWS_AS(sigma_perm(a, 2, 0, 0), InvalidInput);
}

TEST_CASE("Support indices") {
    CHECK(support_indices(testing::corpus_case("Heun").m) == std::vector<IndexTuple>{{0, 0, 0, 0}});
    auto a = LatticeVector::parse(dconf(), "2;0|1;1");
    CHECK(support_indices(a) == std::vector<IndexTuple>{{0, 0}, {0, 1}});
    CHECK(support_indices(LatticeVector::zero(dconf())).empty());
    CHECK(support_indices(testing::corpus_case("dHeun").m).size() == 4);
}

TEST_CASE("Multiplicities of the corpus") {
    for (const auto& cc : testing::corpus_cases()) CHECK(cc.m.str() == cc.entry->m_vector);
    CHECK(multiplicities(testing::corpus_case("Gauss").formal) == testing::corpus_case("Gauss").m);
}

TEST_CASE("Lattice invariants on random shapes") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        ShapePtr sh = make_shape(testing::random_shape(rng));
        std::uniform_int_distribution<long> rk(0, 5);
        LatticeVector a = testing::random_balanced_positive(sh, rng, rk(rng));
        if (trial % 3 == 0) a = -a;
        for (const auto& t : sh->tuples()) {
            long long d = defect(a, t);
            CHECK(d == defect_by_hand(a, t));
            LatticeVector b = sigma_t(a, t);
            CHECK(b.is_balanced());
            CHECK(rank(b) - rank(a) == d);
            CHECK(sigma_t(b, t) == a);
        }
        for (int i = 0; i < sh->points(); ++i)
            for (int j = 0; j < sh->factors(i); ++j)
                for (int s = 0; s + 1 < sh->length(i, j); ++s) {
                    LatticeVector b = sigma_perm(a, i, j, s);
                    CHECK(b.is_balanced());
                    CHECK(sigma_perm(b, i, j, s) == a);
                }
    }
}
