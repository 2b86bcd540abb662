#include <revdet/para_matrix.hpp>

#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include <revdet/parallel.hpp>

#include "oracles.hpp"

using oracles::random_seq;
using revdet::DimensionMismatch;
using revdet::dist_para;
using revdet::EmptyDocument;
using revdet::para_dist_matrix;
using revdet::parallel_for;
using revdet::Rng;
using revdet::VectorSeq;
using revdet::wdtw;

TEST(ParaDistMatrix, MirrorsDistPara) {
    Rng rng(31);
    auto p = random_seq(rng, 3, 2);
    auto q = random_seq(rng, 2, 2);
    std::vector<VectorSeq> d{p, q};
    auto m = para_dist_matrix(d, d);
    ASSERT_EQ(m.rows, 2u);
    ASSERT_EQ(m.cols, 2u);
    EXPECT_DOUBLE_EQ(m.at(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(m.at(1, 1), 0.0);
    double x = dist_para(p, q);
    EXPECT_DOUBLE_EQ(m.at(0, 1), x);
    EXPECT_DOUBLE_EQ(m.at(1, 0), x);
}

TEST(ParaDistMatrix, SingleCell) {
    std::vector<VectorSeq> a{{{0, 0}}};
    std::vector<VectorSeq> b{{{3, 4}}};
    auto m = para_dist_matrix(a, b);
    ASSERT_EQ(m.cells.size(), 1u);
    EXPECT_DOUBLE_EQ(m.at(0, 0), 5.0);
    EXPECT_DOUBLE_EQ(m.row_empty[0], 0.0);
    EXPECT_DOUBLE_EQ(m.col_empty[0], 5.0);
}

TEST(ParaDistMatrix, WorkerCountInvariant) {
    Rng rng(32);
    std::vector<VectorSeq> d1, d2;
    for (int u = 0; u < 10; ++u) d1.push_back(random_seq(rng, 1 + rng.below(4), 3));
    for (int u = 0; u < 10; ++u) d2.push_back(random_seq(rng, 1 + rng.below(4), 3));
    auto serial = para_dist_matrix(d1, d2, 1);
    auto parallel = para_dist_matrix(d1, d2, 8);
    EXPECT_EQ(serial.cells, parallel.cells);
    EXPECT_EQ(serial.row_empty, parallel.row_empty);
    EXPECT_EQ(serial.col_empty, parallel.col_empty);
}

TEST(ParaDistMatrix, EmptyUnitListThrows) {
    std::vector<VectorSeq> d{{{1.0, 0.0}}};
    EXPECT_THROW(para_dist_matrix({}, d), EmptyDocument);
}

TEST(ParaDistMatrix, WdtwAgreesWithDirect) {
    Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<VectorSeq> d1, d2;
        for (std::size_t u = 0; u < 1 + rng.below(5); ++u)
            d1.push_back(random_seq(rng, 1 + rng.below(4), 3));
        for (std::size_t u = 0; u < 1 + rng.below(5); ++u)
            d2.push_back(random_seq(rng, 1 + rng.below(4), 3));
        auto pre = para_dist_matrix(d1, d2);
        EXPECT_DOUBLE_EQ(wdtw(d1, d2, pre), wdtw(d1, d2));
    }
}

TEST(ParaDistMatrix, WdtwShapeChecked) {
    std::vector<VectorSeq> a{{{1, 0}}, {{0, 1}}};
    std::vector<VectorSeq> b{{{1, 0}}};
    auto pre = para_dist_matrix(a, b);
    EXPECT_THROW(wdtw(b, a, pre), DimensionMismatch);
}

TEST(ParallelFor, CoversEveryIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 7, [&](std::size_t k) { hits[k] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(ParallelFor, ZeroItemsIsNoop) {
    parallel_for(0, 4, [&](std::size_t) { FAIL(); });
}

TEST(ParallelFor, PropagatesFirstException) {
    try {
        parallel_for(100, 4, [&](std::size_t k) {
            if (k == 3) throw std::runtime_error("boom");
        });
        FAIL() << "expected throw";
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "boom");
    }
}
