#include "objkb/model.hpp"

#include <algorithm>
#include <cmath>

#include "objkb/error.hpp"

namespace objkb {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicateType: return "DuplicateType";
        case ErrorCode::DuplicateObject: return "DuplicateObject";
        case ErrorCode::UnknownReference: return "UnknownReference";
        case ErrorCode::UnknownType: return "UnknownType";
        case ErrorCode::UnknownObject: return "UnknownObject";
        case ErrorCode::UnknownSlot: return "UnknownSlot";
        case ErrorCode::SupertypeCycle: return "SupertypeCycle";
        case ErrorCode::CompositionCycle: return "CompositionCycle";
        case ErrorCode::PropertyNameClash: return "PropertyNameClash";
        case ErrorCode::InvalidIdentifier: return "InvalidIdentifier";
        case ErrorCode::InvalidDomain: return "InvalidDomain";
        case ErrorCode::InvalidWeight: return "InvalidWeight";
        case ErrorCode::MissingQualifier: return "MissingQualifier";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::EssentialSlotEmpty: return "EssentialSlotEmpty";
        case ErrorCode::IllegalPartType: return "IllegalPartType";
        case ErrorCode::ChildAlreadyOwned: return "ChildAlreadyOwned";
        case ErrorCode::FatherMismatch: return "FatherMismatch";
        case ErrorCode::UnsortedTable: return "UnsortedTable";
        case ErrorCode::PropertyAlreadyPresent: return "PropertyAlreadyPresent";
        case ErrorCode::PropertyMissingOnSource: return "PropertyMissingOnSource";
        case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    }
    return "Unknown";
}

bool is_identifier(std::string_view s) noexcept {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

bool domain_is_well_formed(const ValueDomain& domain) {
    if (const auto* r = std::get_if<IntRange>(&domain)) return r->lo <= r->hi;
    if (const auto* r = std::get_if<RealRange>(&domain))
        return std::isfinite(r->lo) && std::isfinite(r->hi) && r->lo <= r->hi;
    if (const auto* e = std::get_if<EnumDomain>(&domain)) {
        if (e->symbols.empty()) return false;
        return std::all_of(e->symbols.begin(), e->symbols.end(),
                           [](const std::string& s) { return is_identifier(s); });
    }
    return true;
}

bool domain_accepts(const ValueDomain& domain, const Value& value) {
    if (const auto* r = std::get_if<IntRange>(&domain)) {
        const auto* v = std::get_if<std::int64_t>(&value);
        return v && *v >= r->lo && *v <= r->hi;
    }
    if (const auto* r = std::get_if<RealRange>(&domain)) {
        double v = 0.0;
        if (const auto* d = std::get_if<double>(&value)) v = *d;
        else if (const auto* i = std::get_if<std::int64_t>(&value)) v = static_cast<double>(*i);
        else return false;
        return std::isfinite(v) && v >= r->lo && v <= r->hi;
    }
    if (const auto* e = std::get_if<EnumDomain>(&domain)) {
        const auto* s = std::get_if<Symbol>(&value);
        return s && std::find(e->symbols.begin(), e->symbols.end(), s->name) != e->symbols.end();
    }
    return std::holds_alternative<std::string>(value);
}

const AttributeDef* TypeDef::find_attribute(std::string_view attr) const {
    for (const auto& a : ownAttributes)
        if (a.name == attr) return &a;
    return nullptr;
}

const SubObjectSlot* TypeDef::find_slot(std::string_view slot) const {
    for (const auto& s : slots)
        if (s.name == slot) return &s;
    return nullptr;
}

const TypeDef& KnowledgeBase::type(std::string_view id) const {
    auto it = types.find(std::string(id));
    if (it == types.end()) throw KbError(ErrorCode::UnknownType, "unknown type '" + std::string(id) + "'");
    return it->second;
}

const ObjectInstance& KnowledgeBase::object(std::string_view id) const {
    auto it = objects.find(std::string(id));
    if (it == objects.end()) throw KbError(ErrorCode::UnknownObject, "unknown object '" + std::string(id) + "'");
    return it->second;
}

}  // namespace objkb
