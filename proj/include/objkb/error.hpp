#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace objkb {

enum class ErrorCode {
    DuplicateType,
    DuplicateObject,
    UnknownReference,
    UnknownType,
    UnknownObject,
    UnknownSlot,
    SupertypeCycle,
    CompositionCycle,
    PropertyNameClash,
    InvalidIdentifier,
    InvalidDomain,
    InvalidWeight,
    MissingQualifier,
    DomainViolation,
    EssentialSlotEmpty,
    IllegalPartType,
    ChildAlreadyOwned,
    FatherMismatch,
    UnsortedTable,
    PropertyAlreadyPresent,
    PropertyMissingOnSource,
    InvalidThreshold,
};

std::string_view to_string(ErrorCode code);

enum class EntityKind { Type, Object };

// One broken invariant found by validate_kb. `member` names the slot,
// attribute or part inside the entity when the violation is that precise.
struct Violation {
    ErrorCode code;
    EntityKind kind;
    std::string id;
    std::string member;
    std::string message;

    bool operator==(const Violation&) const = default;
};

class KbError : public std::runtime_error {
public:
    KbError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace objkb
