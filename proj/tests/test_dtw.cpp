#include <revdet/dtw.hpp>

#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"

using oracles::dist_para_brute;
using oracles::random_seq;
using revdet::DimensionMismatch;
using revdet::dist_para;
using revdet::empty_cost;
using revdet::EmptyDocument;
using revdet::l2_dist;
using revdet::Rng;
using revdet::Vec;
using revdet::VectorSeq;
using revdet::wdtw;

TEST(DistPara, IdenticalParagraphsAreZero) {
    VectorSeq p{{1, 0, 0}, {0, 2, 0}, {0.5, 0.5, 0.5}};
    EXPECT_DOUBLE_EQ(dist_para(p, p), 0.0);
}

TEST(DistPara, SingleWordPair) {
    EXPECT_DOUBLE_EQ(dist_para({{0, 0}}, {{3, 4}}), 5.0);
}

TEST(DistPara, WarpingAbsorbsRepeats) {
    // [(0,0),(1,0)] vs [(0,0)]: path matches both left words to the single
    // right word, paying only the 1.0 step.
    EXPECT_DOUBLE_EQ(dist_para({{0, 0}, {1, 0}}, {{0, 0}}), 1.0);
}

TEST(DistPara, EmptySideCostsNorms) {
    EXPECT_DOUBLE_EQ(dist_para({}, {{3, 4}}), 5.0);
    EXPECT_DOUBLE_EQ(dist_para({{3, 4}, {0, 1}}, {}), 6.0);
    EXPECT_DOUBLE_EQ(dist_para({}, {}), 0.0);
}

TEST(DistPara, DimMismatchThrows) {
    EXPECT_THROW(dist_para({{1, 0}}, {{1, 0, 0}}), DimensionMismatch);
}

TEST(DistPara, MatchesPathEnumeration) {
    Rng rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_seq(rng, 1 + rng.below(5), 3);
        auto q = random_seq(rng, 1 + rng.below(5), 3);
        EXPECT_NEAR(dist_para(p, q), dist_para_brute(p, q), 1e-9);
    }
}

TEST(DistPara, SymmetricNonNegativeZeroOnSelf) {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_seq(rng, 1 + rng.below(6), 4);
        auto q = random_seq(rng, 1 + rng.below(6), 4);
        double pq = dist_para(p, q);
        EXPECT_GE(pq, 0.0);
        EXPECT_DOUBLE_EQ(pq, dist_para(q, p));
        EXPECT_DOUBLE_EQ(dist_para(p, p), 0.0);
    }
}

TEST(EmptyCost, SumsNorms) {
    EXPECT_DOUBLE_EQ(empty_cost({}), 0.0);
    EXPECT_DOUBLE_EQ(empty_cost({{3, 4}, {0, 0}, {1, 0}}), 6.0);
}

TEST(Wdtw, SingleUnitDocsReduceToDistPara) {
    Rng rng(5);
    auto p = random_seq(rng, 4, 3);
    auto q = random_seq(rng, 3, 3);
    EXPECT_DOUBLE_EQ(wdtw({p}, {q}), dist_para(p, q));
    // one-vs-two units: the single unit warps against both
    double direct = dist_para(p, p) + dist_para(p, q);
    EXPECT_DOUBLE_EQ(wdtw({p}, {p, q}), direct);
}

TEST(Wdtw, IdenticalDocumentsAreZero) {
    Rng rng(6);
    std::vector<VectorSeq> doc;
    for (int u = 0; u < 5; ++u) doc.push_back(random_seq(rng, 3, 4));
    EXPECT_DOUBLE_EQ(wdtw(doc, doc), 0.0);
}

TEST(Wdtw, Symmetric) {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<VectorSeq> d1, d2;
        for (std::size_t u = 0; u < 1 + rng.below(4); ++u)
            d1.push_back(random_seq(rng, 1 + rng.below(4), 3));
        for (std::size_t u = 0; u < 1 + rng.below(4); ++u)
            d2.push_back(random_seq(rng, 1 + rng.below(4), 3));
        EXPECT_DOUBLE_EQ(wdtw(d1, d2), wdtw(d2, d1));
    }
}

TEST(Wdtw, EmptyDocumentThrows) {
    std::vector<VectorSeq> doc{{{1.0, 0.0}}};
    EXPECT_THROW(wdtw({}, doc), EmptyDocument);
    EXPECT_THROW(wdtw(doc, {}), EmptyDocument);
}

TEST(Wdtw, MatchesUnitLevelPathEnumeration) {
    Rng rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<VectorSeq> d1, d2;
        for (std::size_t u = 0; u < 1 + rng.below(4); ++u)
            d1.push_back(random_seq(rng, 1 + rng.below(3), 2));
        for (std::size_t u = 0; u < 1 + rng.below(4); ++u)
            d2.push_back(random_seq(rng, 1 + rng.below(3), 2));
        double brute = oracles::dtw_paths(
            d1.size(), d2.size(),
            [&](std::size_t i, std::size_t j) { return dist_para(d1[i], d2[j]); });
        EXPECT_NEAR(wdtw(d1, d2), brute, 1e-9);
    }
}
