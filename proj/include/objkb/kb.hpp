#pragma once

// Operations on the twin-level object model: type definition, instantiation,
// downward (IS-A) and upward (IS-PART-OF) inheritance, and validation.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "objkb/error.hpp"
#include "objkb/model.hpp"

namespace objkb {

enum class PropertyOrigin { Own, Descending, Ascending };

struct EffectiveProperty {
    std::string name;
    PropertyOrigin origin;
    // Type that declares the attribute.
    TypeId declaredBy;

    bool operator==(const EffectiveProperty&) const = default;
};

enum class TypeRelationship { SameType, T1AncestorOfT2, T2AncestorOfT1, Independent };

std::string_view to_string(TypeRelationship rel);
std::string_view to_string(PropertyOrigin origin);

// Registers a type. Supertypes and slot types must already exist.
TypeId define_type(KnowledgeBase& kb, TypeDef def);

// Registers several types at once; references among the batch may point
// forward. Either all are registered or none.
void define_types(KnowledgeBase& kb, std::vector<TypeDef> defs);

// Creates an instance and sets the father back-reference on each child.
// An empty `objectId` is replaced by a fresh `<typeId>_<n>` identifier.
ObjectId instantiate(KnowledgeBase& kb,
                     const TypeId& typeId,
                     std::map<std::string, AttrValue> attributeValues,
                     std::map<std::string, std::vector<ObjectId>> parts,
                     ObjectId objectId = {});

// Own attributes, attributes inherited down the IS-A chain, and attributes
// contributed up by every composition child. Sorted by name.
std::vector<EffectiveProperty> effective_properties(const KnowledgeBase& kb, const ObjectId& objectId);

TypeRelationship type_relationship(const KnowledgeBase& kb, const TypeId& t1, const TypeId& t2);

std::vector<Violation> validate_kb(const KnowledgeBase& kb);

// The type-level subset of validate_kb.
std::vector<Violation> validate_types(const KnowledgeBase& kb);

// IS-A helpers. Ancestors exclude the type itself; ordering is breadth-first
// over the declared supertype lists. Throw on unknown ids.
std::vector<TypeId> ancestors(const KnowledgeBase& kb, const TypeId& t);
std::vector<TypeId> descendants(const KnowledgeBase& kb, const TypeId& t);
bool is_same_or_descendant(const KnowledgeBase& kb, const TypeId& t, const TypeId& ancestor);

// Own attributes first, then inherited ones in ancestor order.
std::vector<AttributeDef> effective_attributes(const KnowledgeBase& kb, const TypeId& t);
const AttributeDef* find_effective_attribute(const KnowledgeBase& kb, const TypeId& t, std::string_view name);

// Own slots plus slots inherited from supertypes.
std::vector<SubObjectSlot> effective_slots(const KnowledgeBase& kb, const TypeId& t);

// Objects whose type is exactly `t`, sorted by id.
std::vector<ObjectId> direct_instances(const KnowledgeBase& kb, const TypeId& t);

// Recomputes every father back-reference from the parts maps.
void rebuild_father_links(KnowledgeBase& kb);

}  // namespace objkb
