#include "objkb/similarity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace objkb {

std::string_view to_string(ChainEnd end) {
    switch (end) {
        case ChainEnd::FatherTypeMismatch: return "father-type mismatch";
        case ChainEnd::NoParentRow: return "no parent row";
        case ChainEnd::RootReached: return "root reached";
    }
    return "root reached";
}

double NodeList::total_weight() const {
    double total = 0.0;
    for (const auto& n : nodes) total += n.w;
    return total;
}

namespace {

class NodeListBuilder {
public:
    explicit NodeListBuilder(const KnowledgeBase& kb) : kb_(kb) {}

    // Appends `id` and its subtree; returns the subtree's descendant count.
    std::size_t visit(const ObjectId& id, const NodeRecord* father, double w, std::vector<NodeRecord>& out) {
        if (!on_path_.insert(id).second)
            throw KbError(ErrorCode::CompositionCycle, "object '" + id + "' contains itself through its parts");
        const auto& obj = kb_.object(id);
        const auto& weights = slot_weights(obj.typeId);

        std::vector<std::pair<ObjectId, double>> children;
        for (const auto& [slot, ids] : obj.parts) {
            auto it = weights.find(slot);
            if (it == weights.end())
                throw KbError(ErrorCode::UnknownSlot, "object '" + id + "' fills unknown slot '" + slot + "'");
            for (const auto& c : ids) children.emplace_back(c, it->second);
        }

        std::size_t self = out.size();
        NodeRecord rec;
        rec.objectId = id;
        rec.ty = obj.typeId;
        rec.w = w;
        if (father) {
            rec.fatherId = father->objectId;
            rec.fatherTy = father->ty;
        }
        if (!children.empty()) rec.firstChild = children.front().first;
        out.push_back(rec);

        std::size_t nso = 0;
        for (std::size_t i = 0; i < children.size(); ++i) {
            std::size_t at = out.size();
            NodeRecord parent_view = out[self];
            nso += 1 + visit(children[i].first, &parent_view, children[i].second, out);
            if (i + 1 < children.size()) out[at].nextSibling = children[i + 1].first;
        }
        out[self].nso = nso;
        on_path_.erase(id);
        return nso;
    }

private:
    const std::unordered_map<std::string, double>& slot_weights(const TypeId& t) {
        auto it = weights_.find(t);
        if (it != weights_.end()) return it->second;
        std::unordered_map<std::string, double> w;
        for (const auto& s : effective_slots(kb_, t)) w.emplace(s.name, s.weight);
        return weights_.emplace(t, std::move(w)).first->second;
    }

    const KnowledgeBase& kb_;
    std::unordered_map<TypeId, std::unordered_map<std::string, double>> weights_;
    std::unordered_set<ObjectId> on_path_;
};

}  // namespace

NodeList build_node_list(const KnowledgeBase& kb, const ObjectId& root) {
    NodeList list;
    list.rootObjectId = root;
    NodeListBuilder(kb).visit(root, nullptr, 1.0, list.nodes);
    std::sort(list.nodes.begin(), list.nodes.end(), [](const NodeRecord& a, const NodeRecord& b) {
        return std::tie(a.nso, a.ty, a.w, a.objectId) < std::tie(b.nso, b.ty, b.w, b.objectId);
    });
    return list;
}

double distance(std::optional<double> w1, std::optional<double> w2) {
    if (w1 && w2) return std::fabs(*w1 - *w2);
    if (w1) return *w1;
    if (w2) return *w2;
    throw std::invalid_argument("distance needs at least one weight");
}

CompareResult compare(const NodeList& l1, const NodeList& l2) {
    CompareResult result;
    const auto& a = l1.nodes;
    const auto& b = l2.nodes;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const auto& p1 = a[i];
        const auto& p2 = b[j];
        if (p1.nso != p2.nso) {
            if (p1.nso < p2.nso) result.wgd += distance(p1.w, std::nullopt), ++i;
            else result.wgd += distance(std::nullopt, p2.w), ++j;
            continue;
        }
        if (p1.ty != p2.ty) {
            if (p1.ty < p2.ty) result.wgd += distance(p1.w, std::nullopt), ++i;
            else result.wgd += distance(std::nullopt, p2.w), ++j;
            continue;
        }
        double pdw = distance(p1.w, p2.w);
        result.wgd += pdw;
        result.matchTable.push_back(MatchEntry{result.matchTable.size() + 1, p1.ty, p1.nso, pdw, p1.fatherTy, p2.fatherTy});
        ++i;
        ++j;
    }
    for (; j < b.size(); ++j) result.wgd += distance(std::nullopt, b[j].w);
    for (; i < a.size(); ++i) result.wgd += distance(a[i].w, std::nullopt);
    result.nbmatch = result.matchTable.size();
    return result;
}

AnalogyResult partial_analogy(std::span<const MatchEntry> matchTable) {
    for (std::size_t k = 1; k < matchTable.size(); ++k)
        if (matchTable[k].nso < matchTable[k - 1].nso)
            throw KbError(ErrorCode::UnsortedTable, "match table is not sorted by nso at row " + std::to_string(k + 1));

    AnalogyResult result;
    result.table.assign(matchTable.begin(), matchTable.end());
    auto& table = result.table;

    // Rows of each type ordered by (nso, matchIndex): the first row past a
    // given nso is the parent row selected for that type.
    std::unordered_map<TypeId, std::vector<std::size_t>> by_type;
    for (std::size_t k = 0; k < table.size(); ++k) by_type[table[k].ty].push_back(k);
    for (auto& [ty, rows] : by_type)
        std::sort(rows.begin(), rows.end(), [&](std::size_t x, std::size_t y) {
            return std::tie(table[x].nso, table[x].matchIndex) < std::tie(table[y].nso, table[y].matchIndex);
        });

    auto parent_row = [&](const TypeId& ty, std::size_t nso) -> std::optional<std::size_t> {
        auto it = by_type.find(ty);
        if (it == by_type.end()) return std::nullopt;
        auto pos = std::upper_bound(it->second.begin(), it->second.end(), nso,
                                    [&](std::size_t v, std::size_t row) { return v < table[row].nso; });
        if (pos == it->second.end()) return std::nullopt;
        return *pos;
    };

    for (std::size_t start = 0; start < table.size(); ++start) {
        AnalogyChain chain;
        std::size_t j = start;
        chain.memberMatchIndexes.push_back(table[j].matchIndex);
        chain.chainPdw = matchTable[j].pdw;
        for (;;) {
            const auto& row = table[j];
            if (!row.t1s && !row.t2s) {
                chain.terminationReason = ChainEnd::RootReached;
                break;
            }
            if (!row.t1s || !row.t2s || *row.t1s != *row.t2s) {
                chain.terminationReason = ChainEnd::FatherTypeMismatch;
                break;
            }
            auto k = parent_row(*row.t1s, row.nso);
            if (!k) {
                chain.terminationReason = ChainEnd::NoParentRow;
                break;
            }
            table[*k].pdw = std::max(table[*k].pdw, table[j].pdw);
            chain.chainPdw = std::max(chain.chainPdw, matchTable[*k].pdw);
            chain.memberMatchIndexes.push_back(table[*k].matchIndex);
            j = *k;
        }
        result.chains.push_back(std::move(chain));
    }

    for (std::size_t c = 0; c < result.chains.size(); ++c) {
        if (!result.greatest) {
            result.greatest = c;
            continue;
        }
        const auto& best = result.chains[*result.greatest];
        const auto& cand = result.chains[c];
        auto key = [](const AnalogyChain& ch) {
            return std::make_tuple(-static_cast<long long>(ch.memberMatchIndexes.size()), ch.chainPdw,
                                   ch.memberMatchIndexes.front());
        };
        if (key(cand) < key(best)) result.greatest = c;
    }
    return result;
}

double similarity_degree(double wgd, const NodeList& l1, const NodeList& l2) {
    double total = l1.total_weight() + l2.total_weight();
    if (total == 0.0) return wgd == 0.0 ? 1.0 : 0.0;
    return std::clamp(1.0 - wgd / total, 0.0, 1.0);
}

SimilarityReport evaluate(const KnowledgeBase& kb, const ObjectId& obj1, const ObjectId& obj2) {
    static std::atomic<std::uint64_t> sequence{0};
    const auto& o1 = kb.object(obj1);
    const auto& o2 = kb.object(obj2);

    SimilarityReport report;
    report.obj1 = obj1;
    report.obj2 = obj2;
    report.relationship = type_relationship(kb, o1.typeId, o2.typeId);

    NodeList l1 = build_node_list(kb, obj1);
    NodeList l2 = build_node_list(kb, obj2);
    CompareResult cmp = compare(l1, l2);
    report.analogy = partial_analogy(cmp.matchTable);
    report.wgd = cmp.wgd;
    report.nbmatch = cmp.nbmatch;
    report.matchTable = std::move(cmp.matchTable);
    report.degree = similarity_degree(report.wgd, l1, l2);
    report.comparedAt = ++sequence;
    return report;
}

std::vector<RankEntry> rank_similar(const KnowledgeBase& kb, const ObjectId& target,
                                    std::span<const ObjectId> candidates) {
    kb.object(target);
    for (const auto& c : candidates) kb.object(c);

    NodeList base = build_node_list(kb, target);
    std::vector<RankEntry> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) {
        NodeList other = build_node_list(kb, c);
        CompareResult cmp = compare(base, other);
        out.push_back(RankEntry{c, similarity_degree(cmp.wgd, base, other), cmp.nbmatch});
    }
    std::stable_sort(out.begin(), out.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.degree != b.degree) return a.degree > b.degree;
        if (a.nbmatch != b.nbmatch) return a.nbmatch > b.nbmatch;
        return a.objectId < b.objectId;
    });
    return out;
}

}  // namespace objkb
