#include <revdet/ted.hpp>

#include <set>
#include <string>

#include <gtest/gtest.h>

#include <revdet/corpus.hpp>
#include <revdet/document.hpp>
#include <revdet/embeddings.hpp>
#include <revdet/para_matrix.hpp>

#include "oracles.hpp"

using oracles::make_tree;
using oracles::random_tnode;
using oracles::random_vec;
using oracles::ted_mappings;
using oracles::TNode;
using revdet::build_doc_tree;
using revdet::collect_vocab;
using revdet::DimensionMismatch;
using revdet::dist_para;
using revdet::DocTree;
using revdet::EmptyTree;
using revdet::flatten_paragraphs;
using revdet::para_dist_matrix;
using revdet::parse_document;
using revdet::pseudo_embeddings;
using revdet::Rng;
using revdet::total_empty_cost;
using revdet::Vec;
using revdet::VectorSeq;
using revdet::wted;

TEST(Wted, IdenticalTreesAreZero) {
    Rng rng(21);
    auto tree = make_tree(random_tnode(rng, 6, 3));
    EXPECT_DOUBLE_EQ(wted(tree, tree), 0.0);
}

TEST(Wted, SingleNodesReduceToDistPara) {
    auto a = make_tree(TNode{{{0, 0}}, {}});
    auto b = make_tree(TNode{{{3, 4}}, {}});
    EXPECT_DOUBLE_EQ(wted(a, b), 5.0);
}

TEST(Wted, DeletingLabeledSubtreeCostsItsNorms) {
    // root with two unit-vector words vs a bare empty-labeled root: cheapest
    // mapping keeps the roots matched and pays both word norms.
    auto a = make_tree(TNode{{{1, 0}, {0, 1}}, {}});
    auto b = make_tree(TNode{{}, {}});
    EXPECT_DOUBLE_EQ(wted(a, b), 2.0);
    EXPECT_DOUBLE_EQ(wted(b, a), 2.0);
}

TEST(Wted, EmptyTreeThrows) {
    DocTree empty;
    auto a = make_tree(TNode{{{1, 0}}, {}});
    EXPECT_THROW(wted(empty, a), EmptyTree);
    EXPECT_THROW(wted(a, empty), EmptyTree);
}

TEST(Wted, MatchesMappingEnumeration) {
    Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = make_tree(random_tnode(rng, 1 + rng.below(5), 2));
        auto b = make_tree(random_tnode(rng, 1 + rng.below(5), 2));
        EXPECT_NEAR(wted(a, b), ted_mappings(a, b), 1e-9)
            << "trial " << trial;
    }
}

TEST(Wted, SymmetricAndBoundedByDeleteAll) {
    Rng rng(78);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = make_tree(random_tnode(rng, 1 + rng.below(7), 3));
        auto b = make_tree(random_tnode(rng, 1 + rng.below(7), 3));
        double ab = wted(a, b);
        EXPECT_DOUBLE_EQ(ab, wted(b, a));
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, total_empty_cost(a) + total_empty_cost(b) + 1e-9);
    }
}

namespace {

const char* kDocA =
    "# alpha beta\n\n"
    "## gamma\n\n"
    "delta epsilon zeta\n\n"
    "eta theta\n\n"
    "## iota\n\n"
    "### kappa\n\n"
    "lambda mu nu xi\n";

const char* kDocB =
    "# alpha beta\n\n"
    "## gamma\n\n"
    "delta epsilon zeta extra\n\n"
    "## iota\n\n"
    "lambda mu nu xi\n\n"
    "omicron pi\n";

revdet::EmbeddingTable shared_table() {
    auto da = parse_document(kDocA, "a", 0);
    auto db = parse_document(kDocB, "b", 1);
    auto vocab = collect_vocab(flatten_paragraphs(da));
    for (const auto& unit : flatten_paragraphs(db))
        for (const auto& tok : unit) vocab.insert(tok);
    vocab.insert("unseen");
    return pseudo_embeddings(vocab, 8, 99);
}

}  // namespace

TEST(BuildDocTree, SingleParagraphDocument) {
    auto doc = parse_document("hello world\n", "d", 0);
    auto table = pseudo_embeddings({"hello", "world"}, 4, 1);
    auto tree = build_doc_tree(doc, table);
    // paragraph leaf plus the empty-labeled root
    ASSERT_EQ(tree.size(), 2u);
    EXPECT_EQ(tree.unit_count, 1u);
    EXPECT_EQ(tree.unit_index[0], 0);
    EXPECT_EQ(tree.unit_index[1], -1);
    EXPECT_DOUBLE_EQ(tree.node_empty[1], 0.0);
    EXPECT_EQ(tree.lml[0], 0);
    EXPECT_EQ(tree.lml[1], 0);
}

TEST(BuildDocTree, UnitIndicesFollowFlattenOrder) {
    auto doc = parse_document(kDocA, "a", 0);
    auto table = shared_table();
    auto tree = build_doc_tree(doc, table);
    auto units = flatten_paragraphs(doc);
    EXPECT_EQ(tree.unit_count, units.size());

    // every flatten position appears exactly once, and the node's embedded
    // label matches the embedded unit
    std::set<int> seen;
    for (std::size_t k = 0; k < tree.size(); ++k) {
        int u = tree.unit_index[k];
        if (u < 0) continue;
        EXPECT_TRUE(seen.insert(u).second);
        EXPECT_EQ(tree.labels[k],
                  revdet::embed(units[static_cast<std::size_t>(u)], table));
    }
    EXPECT_EQ(seen.size(), units.size());
}

TEST(BuildDocTree, OovOnlyLabelHasZeroCost) {
    auto doc = parse_document("qqq zzz\n", "d", 0);
    auto table = pseudo_embeddings({"other"}, 4, 1);
    auto tree = build_doc_tree(doc, table);
    EXPECT_TRUE(tree.labels[0].empty());
    EXPECT_DOUBLE_EQ(tree.node_empty[0], 0.0);
    EXPECT_EQ(tree.unit_index[0], 0);  // the unit exists even if all words are OOV
}

TEST(BuildDocTree, KeyrootsCoverEveryChain) {
    auto doc = parse_document(kDocA, "a", 0);
    auto tree = build_doc_tree(doc, shared_table());
    std::set<int> chains(tree.lml.begin(), tree.lml.end());
    EXPECT_EQ(tree.keyroots.size(), chains.size());
    EXPECT_TRUE(std::is_sorted(tree.keyroots.begin(), tree.keyroots.end()));
    // the root is always a keyroot
    EXPECT_EQ(tree.keyroots.back(), static_cast<int>(tree.size()) - 1);
}

TEST(Wted, PrecomputedMatrixMatchesDirect) {
    auto table = shared_table();
    auto da = parse_document(kDocA, "a", 0);
    auto db = parse_document(kDocB, "b", 1);
    auto ta = build_doc_tree(da, table);
    auto tb = build_doc_tree(db, table);

    std::vector<VectorSeq> ua, ub;
    for (const auto& u : flatten_paragraphs(da)) ua.push_back(revdet::embed(u, table));
    for (const auto& u : flatten_paragraphs(db)) ub.push_back(revdet::embed(u, table));
    auto pre = para_dist_matrix(ua, ub);

    double direct = wted(ta, tb);
    double cached = wted(ta, tb, pre);
    EXPECT_DOUBLE_EQ(cached, direct);
    EXPECT_GT(direct, 0.0);
}

TEST(Wted, PrecomputedMatrixShapeChecked) {
    auto table = shared_table();
    auto da = parse_document(kDocA, "a", 0);
    auto db = parse_document(kDocB, "b", 1);
    auto ta = build_doc_tree(da, table);
    auto tb = build_doc_tree(db, table);
    revdet::ParaDistMatrix wrong;
    wrong.rows = 1;
    wrong.cols = 1;
    wrong.cells = {0.0};
    EXPECT_THROW(wted(ta, tb, wrong), DimensionMismatch);
}

TEST(Wted, DocumentSelfDistanceIsZero) {
    auto table = shared_table();
    auto da = parse_document(kDocA, "a", 0);
    auto ta = build_doc_tree(da, table);
    EXPECT_DOUBLE_EQ(wted(ta, ta), 0.0);
}
