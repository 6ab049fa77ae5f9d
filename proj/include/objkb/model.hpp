#pragma once

// Object model: types (outer level) and instances (inner level).

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace objkb {

using TypeId = std::string;
using ObjectId = std::string;

// Non-empty ASCII [A-Za-z0-9_].
bool is_identifier(std::string_view s) noexcept;

struct Symbol {
    std::string name;
    auto operator<=>(const Symbol&) const = default;
};

// Integer, real, enumeration symbol, or free text.
using Value = std::variant<std::int64_t, double, Symbol, std::string>;

struct IntRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool operator==(const IntRange&) const = default;
};

struct RealRange {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const RealRange&) const = default;
};

struct EnumDomain {
    std::vector<std::string> symbols;
    bool operator==(const EnumDomain&) const = default;
};

struct TextDomain {
    bool operator==(const TextDomain&) const = default;
};

using ValueDomain = std::variant<IntRange, RealRange, EnumDomain, TextDomain>;

bool domain_is_well_formed(const ValueDomain& domain);
bool domain_accepts(const ValueDomain& domain, const Value& value);

struct AttributeDef {
    std::string name;
    ValueDomain domain = TextDomain{};
    bool qualifier = false;
    bool operator==(const AttributeDef&) const = default;
};

struct SubObjectSlot {
    std::string name;
    std::set<TypeId> legalTypes;
    double weight = 1.0;
    bool essential = false;
    bool operator==(const SubObjectSlot&) const = default;
};

struct TypeDef {
    TypeId id;
    std::string name;
    std::vector<TypeId> supertypes;
    std::vector<AttributeDef> ownAttributes;
    std::vector<SubObjectSlot> slots;

    const AttributeDef* find_attribute(std::string_view attr) const;
    const SubObjectSlot* find_slot(std::string_view slot) const;

    bool operator==(const TypeDef&) const = default;
};

struct AttrValue {
    Value value;
    // Set when the value was transferred by induction rather than observed.
    bool induced = false;
    bool operator==(const AttrValue&) const = default;
};

struct FatherRef {
    ObjectId objectId;
    std::string slotName;
    bool operator==(const FatherRef&) const = default;
};

struct ObjectInstance {
    ObjectId id;
    TypeId typeId;
    std::map<std::string, AttrValue> attributes;
    std::map<std::string, std::vector<ObjectId>> parts;
    std::optional<FatherRef> father;

    bool operator==(const ObjectInstance&) const = default;
};

struct KnowledgeBase {
    std::map<TypeId, TypeDef> types;
    std::map<ObjectId, ObjectInstance> objects;

    // Throw KbError(UnknownType / UnknownObject) on a miss.
    const TypeDef& type(std::string_view id) const;
    const ObjectInstance& object(std::string_view id) const;

    bool has_type(std::string_view id) const { return types.find(std::string(id)) != types.end(); }
    bool has_object(std::string_view id) const { return objects.find(std::string(id)) != objects.end(); }

    bool operator==(const KnowledgeBase&) const = default;
};

}  // namespace objkb
