#include "objkb/kbfile.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "objkb/kb.hpp"

namespace objkb {

SyntaxError::SyntaxError(int line, int column, std::string expectation)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": expected " + expectation),
      line_(line),
      column_(column),
      expectation_(std::move(expectation)) {}

namespace {

std::string summarize(const std::vector<LocatedViolation>& vs) {
    std::string out = std::to_string(vs.size()) + " validation error(s)";
    if (!vs.empty()) out += "; first at line " + std::to_string(vs.front().line) + ": " + vs.front().violation.message;
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<LocatedViolation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

int KbDocument::line_of(const Violation& v) const {
    std::string key = (v.kind == EntityKind::Type ? "type:" : "object:") + v.id;
    if (!v.member.empty())
        if (auto it = locations.find(key + "/" + v.member); it != locations.end()) return it->second;
    if (auto it = locations.find(key); it != locations.end()) return it->second;
    return 0;
}

std::string format_real_literal(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

namespace {

bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Length of the numeric literal at the start of `s`, or 0.
// Grammar: -?[0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?
std::size_t numeric_prefix(std::string_view s, bool& is_real) {
    std::size_t i = 0;
    is_real = false;
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t digits = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == digits) return 0;
    if (i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1])) {
        is_real = true;
        i += 1;
        while (i < s.size() && is_digit(s[i])) ++i;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && is_digit(s[j])) {
            is_real = true;
            i = j;
            while (i < s.size() && is_digit(s[i])) ++i;
        }
    }
    return i;
}

std::string strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
        } else if (c == '"') {
            in_string = true;
        } else if (c == '#') {
            return std::string(line.substr(0, i));
        }
    }
    return std::string(line);
}

struct RawValue {
    std::string text;
    bool quoted = false;
    int line = 0;
    int column = 0;
};

class Cursor {
public:
    Cursor(std::string text, int line) : text_(std::move(text)), line_(line) {}

    int line() const { return line_; }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    [[noreturn]] void fail(std::string expectation) {
        skip_ws();
        throw SyntaxError(line_, static_cast<int>(pos_) + 1, std::move(expectation));
    }

    std::string identifier(std::string_view what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (start == pos_) fail(std::string(what));
        return text_.substr(start, pos_ - start);
    }

    bool try_keyword(std::string_view kw) {
        skip_ws();
        if (text_.compare(pos_, kw.size(), kw) != 0) return false;
        std::size_t after = pos_ + kw.size();
        if (after < text_.size() && ident_char(text_[after])) return false;
        pos_ = after;
        return true;
    }

    void expect_keyword(std::string_view kw) {
        if (!try_keyword(kw)) fail("'" + std::string(kw) + "'");
    }

    bool try_char(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_char(char c) {
        if (!try_char(c)) fail(std::string("'") + c + "'");
    }

    void expect_literal(std::string_view lit) {
        skip_ws();
        if (text_.compare(pos_, lit.size(), lit) != 0) fail("'" + std::string(lit) + "'");
        pos_ += lit.size();
    }

    std::string quoted() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '"') fail("string literal");
        std::size_t open = pos_++;
        std::string out;
        while (pos_ < text_.size()) {
            char c = text_[pos_++];
            if (c == '"') return out;
            if (c == '\\') {
                if (pos_ >= text_.size()) break;
                char e = text_[pos_++];
                if (e == 'n') out += '\n';
                else if (e == '"' || e == '\\') out += e;
                else {
                    pos_ -= 2;
                    fail("escape sequence \\\", \\\\ or \\n");
                }
            } else {
                out += c;
            }
        }
        pos_ = open;
        fail("closing '\"'");
    }

    template <typename T>
    T number(std::string_view what) {
        skip_ws();
        std::string_view rest(text_);
        rest.remove_prefix(pos_);
        bool is_real = false;
        std::size_t len = numeric_prefix(rest, is_real);
        if (len == 0 || (len < rest.size() && ident_char(rest[len]))) fail(std::string(what));
        T value{};
        auto res = std::from_chars(rest.data(), rest.data() + len, value);
        if (res.ec != std::errc() || res.ptr != rest.data() + len) fail(std::string(what));
        if constexpr (std::is_floating_point_v<T>) {
            if (!std::isfinite(value)) fail(std::string(what));
        }
        pos_ += len;
        return value;
    }

    RawValue value() {
        skip_ws();
        RawValue raw;
        raw.line = line_;
        raw.column = static_cast<int>(pos_) + 1;
        if (pos_ < text_.size() && text_[pos_] == '"') {
            raw.text = quoted();
            raw.quoted = true;
            return raw;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\t' && text_[pos_] != '\r') ++pos_;
        if (start == pos_) fail("value");
        raw.text = text_.substr(start, pos_ - start);
        return raw;
    }

    void expect_end() {
        if (!at_end()) fail("end of line");
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
    }

    std::string text_;
    int line_;
    std::size_t pos_ = 0;
};

ValueDomain parse_domain(Cursor& cur) {
    if (cur.try_keyword("int")) {
        IntRange r;
        r.lo = cur.number<std::int64_t>("integer lower bound");
        cur.expect_literal("..");
        r.hi = cur.number<std::int64_t>("integer upper bound");
        return r;
    }
    if (cur.try_keyword("real")) {
        RealRange r;
        r.lo = cur.number<double>("real lower bound");
        cur.expect_literal("..");
        r.hi = cur.number<double>("real upper bound");
        return r;
    }
    if (cur.try_keyword("enum")) {
        EnumDomain e;
        cur.expect_char('{');
        if (!cur.try_char('}')) {
            do {
                e.symbols.push_back(cur.identifier("enumeration symbol"));
            } while (cur.try_char(','));
            cur.expect_char('}');
        }
        return e;
    }
    if (cur.try_keyword("text")) return TextDomain{};
    cur.fail("domain (int, real, enum or text)");
}

Value resolve_value(const RawValue& raw, const AttributeDef* decl) {
    if (raw.quoted) return raw.text;
    if (decl && std::holds_alternative<EnumDomain>(decl->domain)) return Symbol{raw.text};
    bool is_real = false;
    std::size_t len = numeric_prefix(raw.text, is_real);
    if (len == raw.text.size()) {
        const char* first = raw.text.data();
        const char* last = first + len;
        if (is_real) {
            double d = 0.0;
            auto res = std::from_chars(first, last, d);
            if (res.ec == std::errc() && res.ptr == last && std::isfinite(d)) return d;
        } else {
            std::int64_t i = 0;
            auto res = std::from_chars(first, last, i);
            if (res.ec == std::errc() && res.ptr == last) return i;
        }
        throw SyntaxError(raw.line, raw.column, "number within range");
    }
    if (is_identifier(raw.text)) return Symbol{raw.text};
    throw SyntaxError(raw.line, raw.column, "integer, real, symbol or string value");
}

struct PendingObject {
    ObjectInstance obj;
    std::vector<std::pair<std::string, std::pair<RawValue, bool>>> attrs;
};

class Parser {
public:
    explicit Parser(KbDocument& doc) : doc_(doc) {}

    void run() {
        std::istringstream in(doc_.source);
        std::string raw;
        int lineNo = 0;
        while (std::getline(in, raw)) {
            ++lineNo;
            Cursor cur(strip_comment(raw), lineNo);
            if (cur.at_end()) continue;
            if (type_) type_line(cur);
            else if (object_) object_line(cur);
            else top_line(cur);
        }
        if (type_ || object_) throw SyntaxError(std::max(lineNo, 1), 1, "'end'");
        finish();
    }

private:
    void locate(const std::string& key, int line) { doc_.locations.emplace(key, line); }

    void top_line(Cursor& cur) {
        if (cur.try_keyword("type")) {
            TypeDef def;
            def.id = cur.identifier("type identifier");
            def.name = cur.quoted();
            cur.expect_end();
            key_ = "type:" + def.id;
            if (doc_.kb.has_type(def.id) || doc_.locations.count(key_))
                pre_.push_back({{ErrorCode::DuplicateType, EntityKind::Type, def.id, "", "type '" + def.id + "' is defined twice"}, cur.line()});
            else
                locate(key_, cur.line());
            type_ = std::move(def);
        } else if (cur.try_keyword("object")) {
            PendingObject p;
            p.obj.id = cur.identifier("object identifier");
            cur.expect_char(':');
            p.obj.typeId = cur.identifier("type identifier");
            cur.expect_end();
            key_ = "object:" + p.obj.id;
            if (doc_.locations.count(key_))
                pre_.push_back({{ErrorCode::DuplicateObject, EntityKind::Object, p.obj.id, "", "object '" + p.obj.id + "' is defined twice"}, cur.line()});
            else
                locate(key_, cur.line());
            object_ = std::move(p);
        } else {
            cur.fail("'type' or 'object'");
        }
    }

    void type_line(Cursor& cur) {
        auto& def = *type_;
        if (cur.try_keyword("end")) {
            cur.expect_end();
            if (!doc_.kb.has_type(def.id)) doc_.kb.types.emplace(def.id, std::move(def));
            type_.reset();
        } else if (cur.try_keyword("supertype")) {
            def.supertypes.push_back(cur.identifier("supertype identifier"));
            locate(key_ + "/" + def.supertypes.back(), cur.line());
            cur.expect_end();
        } else if (cur.try_keyword("attribute")) {
            AttributeDef a;
            a.name = cur.identifier("attribute name");
            cur.expect_char(':');
            a.domain = parse_domain(cur);
            a.qualifier = cur.try_keyword("qualifier");
            cur.expect_end();
            locate(key_ + "/" + a.name, cur.line());
            def.ownAttributes.push_back(std::move(a));
        } else if (cur.try_keyword("slot")) {
            SubObjectSlot s;
            s.name = cur.identifier("slot name");
            cur.expect_char(':');
            cur.expect_char('{');
            do {
                s.legalTypes.insert(cur.identifier("legal type identifier"));
            } while (cur.try_char(','));
            cur.expect_char('}');
            cur.expect_keyword("weight");
            s.weight = cur.number<double>("slot weight");
            if (cur.try_keyword("essential")) s.essential = true;
            else if (cur.try_keyword("optional")) s.essential = false;
            else cur.fail("'essential' or 'optional'");
            cur.expect_end();
            locate(key_ + "/" + s.name, cur.line());
            def.slots.push_back(std::move(s));
        } else {
            cur.fail("'supertype', 'attribute', 'slot' or 'end'");
        }
    }

    void object_line(Cursor& cur) {
        auto& p = *object_;
        if (cur.try_keyword("end")) {
            cur.expect_end();
            if (!objects_.count(p.obj.id)) objects_.emplace(p.obj.id, std::move(p));
            object_.reset();
        } else if (cur.try_keyword("attr")) {
            std::string name = cur.identifier("attribute name");
            cur.expect_char('=');
            RawValue v = cur.value();
            bool induced = cur.try_keyword("induced");
            cur.expect_end();
            for (const auto& [n, _] : p.attrs)
                if (n == name)
                    pre_.push_back({{ErrorCode::PropertyNameClash, EntityKind::Object, p.obj.id, name, "attribute '" + name + "' given twice"}, cur.line()});
            locate(key_ + "/" + name, cur.line());
            p.attrs.emplace_back(name, std::make_pair(std::move(v), induced));
        } else if (cur.try_keyword("part")) {
            std::string slot = cur.identifier("slot name");
            std::string child = cur.identifier("part object identifier");
            cur.expect_end();
            locate(key_ + "/" + slot, cur.line());
            p.obj.parts[slot].push_back(child);
        } else {
            cur.fail("'attr', 'part' or 'end'");
        }
    }

    void finish() {
        auto& kb = doc_.kb;
        for (auto& [id, p] : objects_) {
            for (auto& [name, vi] : p.attrs) {
                const AttributeDef* decl = kb.has_type(p.obj.typeId) ? find_effective_attribute(kb, p.obj.typeId, name) : nullptr;
                p.obj.attributes.emplace(name, AttrValue{resolve_value(vi.first, decl), vi.second});
            }
            kb.objects.emplace(id, std::move(p.obj));
        }
        rebuild_father_links(kb);

        std::vector<LocatedViolation> all = std::move(pre_);
        for (auto& v : validate_kb(kb)) {
            int line = doc_.line_of(v);
            all.push_back({std::move(v), line});
        }
        if (!all.empty()) throw ValidationError(std::move(all));
    }

    KbDocument& doc_;
    std::optional<TypeDef> type_;
    std::optional<PendingObject> object_;
    std::string key_;
    std::map<ObjectId, PendingObject> objects_;
    std::vector<LocatedViolation> pre_;
};

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

std::string render_domain(const ValueDomain& d) {
    if (const auto* r = std::get_if<IntRange>(&d)) return "int " + std::to_string(r->lo) + ".." + std::to_string(r->hi);
    if (const auto* r = std::get_if<RealRange>(&d)) return "real " + format_real_literal(r->lo) + ".." + format_real_literal(r->hi);
    if (const auto* e = std::get_if<EnumDomain>(&d)) {
        std::string out = "enum {";
        for (std::size_t i = 0; i < e->symbols.size(); ++i) out += (i ? "," : "") + e->symbols[i];
        return out + "}";
    }
    return "text";
}

std::string render_value(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) return format_real_literal(*d);
    if (const auto* s = std::get_if<Symbol>(&v)) return s->name;
    return "\"" + escape(std::get<std::string>(v)) + "\"";
}

}  // namespace

KbDocument parse_document(std::string text) {
    KbDocument doc;
    doc.source = std::move(text);
    Parser(doc).run();
    return doc;
}

KnowledgeBase parse_kb(std::string_view text) {
    return parse_document(std::string(text)).kb;
}

std::string serialize_kb(const KnowledgeBase& kb) {
    std::ostringstream out;
    bool first = true;
    auto separate = [&] {
        if (!first) out << '\n';
        first = false;
    };
    for (const auto& [id, def] : kb.types) {
        separate();
        out << "type " << id << " \"" << escape(def.name) << "\"\n";
        for (const auto& s : def.supertypes) out << "  supertype " << s << '\n';
        for (const auto& a : def.ownAttributes)
            out << "  attribute " << a.name << " : " << render_domain(a.domain) << (a.qualifier ? " qualifier" : "") << '\n';
        for (const auto& s : def.slots) {
            out << "  slot " << s.name << " : {";
            bool firstType = true;
            for (const auto& t : s.legalTypes) {
                out << (firstType ? "" : ",") << t;
                firstType = false;
            }
            out << "} weight " << format_real_literal(s.weight) << (s.essential ? " essential" : " optional") << '\n';
        }
        out << "end\n";
    }
    for (const auto& [id, obj] : kb.objects) {
        separate();
        out << "object " << id << " : " << obj.typeId << '\n';
        for (const auto& [name, av] : obj.attributes)
            out << "  attr " << name << " = " << render_value(av.value) << (av.induced ? " induced" : "") << '\n';
        for (const auto& [slot, children] : obj.parts)
            for (const auto& c : children) out << "  part " << slot << ' ' << c << '\n';
        out << "end\n";
    }
    return out.str();
}

}  // namespace objkb
