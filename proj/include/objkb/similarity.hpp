#pragma once

// Structural similarity of composition trees.
//
// Both objects are flattened into node lists sorted by the number of
// descendants each node owns (nso). A two-cursor merge pairs nodes of equal
// nso and type into a match table and accumulates a weighted distance. Match
// rows whose father types agree on both sides are then chained towards the
// root to find the largest similar subtree.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "objkb/kb.hpp"
#include "objkb/model.hpp"

namespace objkb {

struct NodeRecord {
    ObjectId objectId;
    TypeId ty;
    std::size_t nso = 0;
    std::optional<ObjectId> fatherId;
    std::optional<TypeId> fatherTy;
    std::optional<ObjectId> firstChild;
    std::optional<ObjectId> nextSibling;
    // Weight of the slot binding the node to its father; 1.0 for the root.
    double w = 1.0;

    bool operator==(const NodeRecord&) const = default;
};

struct NodeList {
    ObjectId rootObjectId;
    // Ascending by (nso, ty, w, objectId).
    std::vector<NodeRecord> nodes;

    double total_weight() const;
};

struct MatchEntry {
    std::size_t matchIndex = 0;  // 1-based
    TypeId ty;
    std::size_t nso = 0;
    double pdw = 0.0;
    std::optional<TypeId> t1s;
    std::optional<TypeId> t2s;

    bool operator==(const MatchEntry&) const = default;
};

struct CompareResult {
    std::vector<MatchEntry> matchTable;
    double wgd = 0.0;
    std::size_t nbmatch = 0;
};

enum class ChainEnd { FatherTypeMismatch, NoParentRow, RootReached };

std::string_view to_string(ChainEnd end);

struct AnalogyChain {
    // Deepest member first.
    std::vector<std::size_t> memberMatchIndexes;
    // Largest pdw among the members, as produced by compare.
    double chainPdw = 0.0;
    ChainEnd terminationReason = ChainEnd::RootReached;

    bool operator==(const AnalogyChain&) const = default;
};

struct AnalogyResult {
    // Input table with pdw propagated up every chain by max.
    std::vector<MatchEntry> table;
    // One chain per table row, in table order.
    std::vector<AnalogyChain> chains;
    // Position in `chains` of the greatest similar subtree.
    std::optional<std::size_t> greatest;
};

struct SimilarityReport {
    ObjectId obj1;
    ObjectId obj2;
    TypeRelationship relationship = TypeRelationship::Independent;
    double wgd = 0.0;
    std::size_t nbmatch = 0;
    std::vector<MatchEntry> matchTable;
    AnalogyResult analogy;
    double degree = 0.0;
    std::uint64_t comparedAt = 0;
};

struct RankEntry {
    ObjectId objectId;
    double degree = 0.0;
    std::size_t nbmatch = 0;
};

NodeList build_node_list(const KnowledgeBase& kb, const ObjectId& root);

// |w1 - w2| when both are present; the present weight when one side is
// absent (an unmatched node). Throws std::invalid_argument if both are absent.
double distance(std::optional<double> w1, std::optional<double> w2);

CompareResult compare(const NodeList& l1, const NodeList& l2);

// Throws KbError(UnsortedTable) if the table is not ascending by nso.
AnalogyResult partial_analogy(std::span<const MatchEntry> matchTable);

double similarity_degree(double wgd, const NodeList& l1, const NodeList& l2);

SimilarityReport evaluate(const KnowledgeBase& kb, const ObjectId& obj1, const ObjectId& obj2);

// Sorted by degree desc, nbmatch desc, objectId asc.
std::vector<RankEntry> rank_similar(const KnowledgeBase& kb, const ObjectId& target,
                                    std::span<const ObjectId> candidates);

}  // namespace objkb
