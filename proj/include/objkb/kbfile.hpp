#pragma once

// Line-oriented text format for knowledge bases.
//
//   type <TypeId> "<display name>"
//     supertype <TypeId>
//     attribute <Name> : <Domain> [qualifier]
//     slot <SlotName> : {<TypeId>,...} weight <real> (essential|optional)
//   end
//   object <ObjId> : <TypeId>
//     attr <Name> = <value> [induced]
//     part <SlotName> <ObjId>
//   end
//
// Domain is one of `int lo..hi`, `real lo..hi`, `enum {a,b,...}`, `text`.
// `#` starts a comment outside string literals.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "objkb/error.hpp"
#include "objkb/model.hpp"

namespace objkb {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, int column, std::string expectation);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& expectation() const noexcept { return expectation_; }

private:
    int line_;
    int column_;
    std::string expectation_;
};

struct LocatedViolation {
    Violation violation;
    int line = 0;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<LocatedViolation> violations);

    const std::vector<LocatedViolation>& violations() const noexcept { return violations_; }

private:
    std::vector<LocatedViolation> violations_;
};

struct KbDocument {
    std::string source;
    KnowledgeBase kb;
    // "type:<id>", "object:<id>", and "<kind>:<id>/<member>" -> 1-based line.
    std::map<std::string, int> locations;

    int line_of(const Violation& v) const;
};

// Throws SyntaxError or ValidationError.
KbDocument parse_document(std::string text);
KnowledgeBase parse_kb(std::string_view text);

std::string serialize_kb(const KnowledgeBase& kb);

// Shortest text that parses back to the same double; always carries a
// decimal point or exponent.
std::string format_real_literal(double v);

}  // namespace objkb
