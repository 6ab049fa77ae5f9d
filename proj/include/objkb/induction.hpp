#pragma once

// Inductive type specialization: transfer a qualifier attribute observed on
// one object to the type of a structurally similar object.

#include <set>
#include <string>

#include "objkb/kb.hpp"
#include "objkb/model.hpp"

namespace objkb {

struct InducibleProperty {
    AttributeDef attribute;
    Value sourceValue;
};

enum class InductionDecision { TypeReplaced, SubtypeCreated, Rejected };

std::string_view to_string(InductionDecision d);

struct InductionOutcome {
    InductionDecision decision = InductionDecision::Rejected;
    std::optional<TypeId> newOrEnrichedTypeId;
    std::set<ObjectId> migratedInstances;
    std::set<ObjectId> nonMigrated;
    double degreeObserved = 0.0;
    double threshold = 0.0;
    std::set<TypeId> propagatedTo;
};

struct InductionResult {
    KnowledgeBase kb;
    InductionOutcome outcome;
};

// True iff the instance already carries an in-domain value for the property.
bool qualifies_for(const KnowledgeBase& kb, const ObjectId& objectId, const InducibleProperty& property);

// Compound types whose instances may now expose the enriched type's
// properties through upward inheritance. Throws PropertyNameClash if the
// name partition is broken anywhere in the type graph.
std::set<TypeId> propagate_upward(const KnowledgeBase& kb, const TypeId& enrichedTypeId);

// Name of the specialized type created for `property` under `base`.
TypeId specialized_type_id(const TypeId& base, const std::string& property);

InductionResult induce(const KnowledgeBase& kb, const ObjectId& sourceObj, const std::string& propertyName,
                       const ObjectId& targetObj, double threshold);

}  // namespace objkb
