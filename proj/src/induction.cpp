#include "objkb/induction.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "objkb/similarity.hpp"

namespace objkb {

std::string_view to_string(InductionDecision d) {
    switch (d) {
        case InductionDecision::TypeReplaced: return "type-replaced";
        case InductionDecision::SubtypeCreated: return "subtype-created";
        case InductionDecision::Rejected: return "rejected";
    }
    return "rejected";
}

TypeId specialized_type_id(const TypeId& base, const std::string& property) {
    return base + "_" + property;
}

bool qualifies_for(const KnowledgeBase& kb, const ObjectId& objectId, const InducibleProperty& property) {
    const auto& obj = kb.object(objectId);
    auto it = obj.attributes.find(property.attribute.name);
    return it != obj.attributes.end() && domain_accepts(property.attribute.domain, it->second.value);
}

std::set<TypeId> propagate_upward(const KnowledgeBase& kb, const TypeId& enrichedTypeId) {
    kb.type(enrichedTypeId);
    for (const auto& v : validate_types(kb))
        if (v.code == ErrorCode::PropertyNameClash) throw KbError(v.code, v.message);

    // A slot accepts instances of its legal types and of their descendants,
    // so a slot naming any ancestor of the enriched type can hold it.
    std::set<TypeId> found;
    std::deque<TypeId> queue{enrichedTypeId};
    while (!queue.empty()) {
        TypeId current = queue.front();
        queue.pop_front();
        std::set<TypeId> accepted{current};
        for (auto& a : ancestors(kb, current)) accepted.insert(a);
        for (const auto& [id, def] : kb.types) {
            if (found.count(id) || id == enrichedTypeId) continue;
            for (const auto& s : effective_slots(kb, id)) {
                bool hit = std::any_of(s.legalTypes.begin(), s.legalTypes.end(),
                                       [&](const TypeId& l) { return accepted.count(l) > 0; });
                if (hit) {
                    found.insert(id);
                    queue.push_back(id);
                    break;
                }
            }
        }
    }
    return found;
}

InductionResult induce(const KnowledgeBase& kb, const ObjectId& sourceObj, const std::string& propertyName,
                       const ObjectId& targetObj, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw KbError(ErrorCode::InvalidThreshold, "threshold must lie in [0,1]");
    const auto& source = kb.object(sourceObj);
    const auto& target = kb.object(targetObj);

    const AttributeDef* attr = find_effective_attribute(kb, source.typeId, propertyName);
    auto observed = source.attributes.find(propertyName);
    if (!attr || observed == source.attributes.end())
        throw KbError(ErrorCode::PropertyMissingOnSource,
                      "object '" + sourceObj + "' carries no declared value for '" + propertyName + "'");
    if (!domain_accepts(attr->domain, observed->second.value))
        throw KbError(ErrorCode::DomainViolation, "value of '" + propertyName + "' on '" + sourceObj + "' is outside its domain");

    const TypeId base = target.typeId;
    const TypeId specialized = specialized_type_id(base, propertyName);
    for (const auto& p : effective_properties(kb, targetObj))
        if (p.name == propertyName)
            throw KbError(ErrorCode::PropertyAlreadyPresent, "object '" + targetObj + "' already has property '" + propertyName + "'");
    if (kb.has_type(specialized))
        throw KbError(ErrorCode::PropertyAlreadyPresent, "type '" + base + "' was already specialized with '" + propertyName + "'");

    InductionResult result{kb, {}};
    auto& outcome = result.outcome;
    outcome.threshold = threshold;
    outcome.degreeObserved = evaluate(kb, sourceObj, targetObj).degree;
    if (outcome.degreeObserved < threshold) return result;

    InducibleProperty property{*attr, observed->second.value};
    property.attribute.qualifier = true;

    auto& next = result.kb;
    const auto& baseDef = kb.type(base);
    next.types.emplace(specialized, TypeDef{specialized, baseDef.name + " with " + propertyName, {base}, {property.attribute}, {}});

    auto& tgt = next.objects.at(targetObj);
    tgt.typeId = specialized;
    tgt.attributes[propertyName] = AttrValue{property.sourceValue, true};
    outcome.migratedInstances.insert(targetObj);

    for (const auto& id : direct_instances(kb, base)) {
        if (id == targetObj) continue;
        if (qualifies_for(kb, id, property)) {
            next.objects.at(id).typeId = specialized;
            outcome.migratedInstances.insert(id);
        } else {
            outcome.nonMigrated.insert(id);
        }
    }
    // Instances bound to a more specialized type cannot become instances of
    // the new subtype, so they keep the base type from being replaced.
    for (const auto& d : descendants(kb, base))
        for (const auto& id : direct_instances(kb, d)) outcome.nonMigrated.insert(id);

    if (outcome.nonMigrated.empty()) {
        outcome.decision = InductionDecision::TypeReplaced;
        next.types.erase(specialized);
        next.types.at(base).ownAttributes.push_back(property.attribute);
        for (const auto& id : outcome.migratedInstances) next.objects.at(id).typeId = base;
        outcome.newOrEnrichedTypeId = base;
    } else {
        outcome.decision = InductionDecision::SubtypeCreated;
        outcome.newOrEnrichedTypeId = specialized;
    }

    outcome.propagatedTo = propagate_upward(next, *outcome.newOrEnrichedTypeId);
    auto violations = validate_kb(next);
    if (!violations.empty()) throw KbError(violations.front().code, violations.front().message);
    return result;
}

}  // namespace objkb
