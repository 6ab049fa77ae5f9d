#include <doctest.h>

#include <functional>

#include "objkb/kb.hpp"
#include "support/door_kb.hpp"
#include "support/generators.hpp"

using namespace objkb;
using namespace objkb::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const KbError& e) {
        return e.code();
    }
    FAIL("expected a KbError");
    return ErrorCode::UnknownReference;
}

std::set<std::string> names_of(const std::vector<EffectiveProperty>& props) {
    std::set<std::string> out;
    for (const auto& p : props) out.insert(p.name);
    return out;
}

std::optional<PropertyOrigin> origin_of(const std::vector<EffectiveProperty>& props, const std::string& name) {
    for (const auto& p : props)
        if (p.name == name) return p.origin;
    return std::nullopt;
}

// Names visible on an object: its type's attributes and those of every IS-A
// ancestor, plus the same for every object below it.
std::set<std::string> brute_property_names(const KnowledgeBase& kb, const ObjectId& id) {
    std::set<std::string> out;
    std::vector<ObjectId> objects{id};
    while (!objects.empty()) {
        const auto& obj = kb.objects.at(objects.back());
        objects.pop_back();
        std::vector<TypeId> types{obj.typeId};
        std::set<TypeId> seen;
        while (!types.empty()) {
            TypeId t = types.back();
            types.pop_back();
            if (!seen.insert(t).second) continue;
            for (const auto& a : kb.types.at(t).ownAttributes) out.insert(a.name);
            for (const auto& s : kb.types.at(t).supertypes) types.push_back(s);
        }
        for (const auto& [slot, children] : obj.parts)
            for (const auto& c : children) objects.push_back(c);
    }
    return out;
}

bool has_violation(const std::vector<Violation>& vs, ErrorCode code, const std::string& id) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.code == code && v.id == id; });
}

}  // namespace

TEST_CASE("define_type registers a type with inherited attributes and slots") {
    KnowledgeBase kb = door_types();
    CHECK(kb.has_type("Door"));
    const auto* lock = kb.type("Door").find_slot("lock");
    REQUIRE(lock);
    CHECK(lock->weight == 3.0);
    CHECK(lock->essential);
    CHECK_FALSE(kb.type("Door").find_slot("handle")->essential);

    define_type(kb, {"FireDoor", "fire door", {"Door"}, {{"rating", IntRange{30, 120}, true}}, {}});
    auto attrs = effective_attributes(kb, "FireDoor");
    REQUIRE(attrs.size() == 2);
    CHECK(attrs[0].name == "rating");
    CHECK(attrs[1].name == "width");
    auto slots = effective_slots(kb, "FireDoor");
    REQUIRE(slots.size() == 2);
    CHECK(slots[0].name == "lock");
    CHECK(slots[1].name == "handle");
}

TEST_CASE("define_type rejects malformed definitions and leaves the KB untouched") {
    KnowledgeBase kb = door_types();
    const KnowledgeBase before = kb;

    CHECK(code_of([&] { define_type(kb, {"Door", "again", {}, {}, {}}); }) == ErrorCode::DuplicateType);
    CHECK(code_of([&] { define_type(kb, {"X", "x", {"Nope"}, {}, {}}); }) == ErrorCode::UnknownReference);
    CHECK(code_of([&] { define_type(kb, {"X", "x", {}, {}, {{"s", {"Nope"}, 1.0, false}}}); }) == ErrorCode::UnknownReference);
    CHECK(code_of([&] { define_type(kb, {"X", "x", {"X"}, {}, {}}); }) == ErrorCode::SupertypeCycle);
    CHECK(code_of([&] { define_type(kb, {"X", "x", {}, {{"n", IntRange{2, 1}, false}}, {}}); }) == ErrorCode::InvalidDomain);
    CHECK(code_of([&] { define_type(kb, {"X", "x", {}, {{"n", EnumDomain{}, false}}, {}}); }) == ErrorCode::InvalidDomain);
    CHECK(code_of([&] { define_type(kb, {"X", "x", {}, {}, {{"s", {"Lock"}, -1.0, false}}}); }) == ErrorCode::InvalidWeight);
    CHECK(code_of([&] { define_type(kb, {"bad id", "x", {}, {}, {}}); }) == ErrorCode::InvalidIdentifier);
    // A subtype may not redeclare an inherited attribute.
    CHECK(code_of([&] { define_type(kb, {"X", "x", {"Door"}, {{"width", TextDomain{}, false}}, {}}); }) ==
          ErrorCode::PropertyNameClash);
    CHECK(code_of([&] { define_type(kb, {"X", "x", {}, {}, {{"s", {"Lock"}, 1.0, false}, {"s", {"Handle"}, 1.0, false}}}); }) ==
          ErrorCode::PropertyNameClash);
    CHECK(kb == before);
}

TEST_CASE("define_types detects a cycle among forward references") {
    KnowledgeBase kb;
    CHECK(code_of([&] {
              define_types(kb, {{"T1", "t1", {"T2"}, {}, {}}, {"T2", "t2", {"T1"}, {}, {}}});
          }) == ErrorCode::SupertypeCycle);
    CHECK(kb.types.empty());

    define_types(kb, {{"T1", "t1", {"T2"}, {}, {}}, {"T2", "t2", {}, {}, {}}});
    CHECK(ancestors(kb, "T1") == std::vector<TypeId>{"T2"});
}

TEST_CASE("define_type rejects recursive composition") {
    KnowledgeBase kb;
    define_type(kb, {"Leaf", "leaf", {}, {}, {}});
    CHECK(code_of([&] {
              define_types(kb, {{"A", "a", {}, {}, {{"b", {"B"}, 1.0, false}}}, {"B", "b", {}, {}, {{"a", {"A"}, 1.0, false}}}});
          }) == ErrorCode::CompositionCycle);
}

TEST_CASE("two slots contributing the same name upward clash") {
    KnowledgeBase kb;
    define_type(kb, {"Hinge", "hinge", {}, {{"pin", IntRange{0, 5}, false}}, {}});
    define_type(kb, {"Latch", "latch", {}, {{"pin", IntRange{0, 5}, false}}, {}});
    CHECK(code_of([&] {
              define_type(kb, {"Gate", "gate", {}, {}, {{"top", {"Hinge"}, 1.0, false}, {"catch", {"Latch"}, 1.0, false}}});
          }) == ErrorCode::PropertyNameClash);
    // One slot listing both as alternatives is fine: a slot is one source.
    define_type(kb, {"Gate", "gate", {}, {}, {{"fixing", {"Hinge", "Latch"}, 1.0, false}}});
}

TEST_CASE("name clash detection agrees with a union-of-contributions oracle") {
    // Leaf types draw attribute names from a small pool; a compound type with
    // two slots clashes exactly when the names reaching it from different
    // sources intersect.
    Rng rng(7);
    const char* pool[] = {"p", "q", "r", "s"};
    for (int round = 0; round < 300; ++round) {
        KnowledgeBase kb;
        std::map<TypeId, std::set<std::string>> names;
        for (int t = 0; t < 3; ++t) {
            TypeDef def{"L" + std::to_string(t), "leaf", {}, {}, {}};
            std::set<std::string> picked;
            for (const char* n : pool)
                if (coin(rng, 0.3)) picked.insert(n);
            for (const auto& n : picked) def.ownAttributes.push_back({n, TextDomain{}, false});
            names[def.id] = picked;
            define_type(kb, def);
        }
        std::set<std::string> own;
        for (const char* n : pool)
            if (coin(rng, 0.15)) own.insert(n);
        TypeId s1 = "L" + std::to_string(uniform(rng, 0, 2));
        TypeId s2 = "L" + std::to_string(uniform(rng, 0, 2));

        std::vector<std::set<std::string>> sources{own, names[s1], names[s2]};
        bool clash = false;
        for (std::size_t i = 0; i < sources.size(); ++i)
            for (std::size_t j = i + 1; j < sources.size(); ++j)
                for (const auto& n : sources[i]) clash = clash || sources[j].count(n) > 0;

        TypeDef compound{"C", "compound", {}, {}, {{"x", {s1}, 1.0, false}, {"y", {s2}, 1.0, false}}};
        for (const auto& n : own) compound.ownAttributes.push_back({n, TextDomain{}, false});
        bool threw = false;
        try {
            define_type(kb, compound);
        } catch (const KbError& e) {
            CHECK(e.code() == ErrorCode::PropertyNameClash);
            threw = true;
        }
        CHECK(threw == clash);
    }
}

TEST_CASE("instantiate enforces qualifiers, part legality and the one-father partition") {
    KnowledgeBase kb = door_kb();
    instantiate(kb, "Lock", {}, {}, "lock2");
    instantiate(kb, "Window", {{"glazing", {std::int64_t{2}}}}, {}, "win");
    const KnowledgeBase before = kb;

    CHECK(code_of([&] { instantiate(kb, "Door", {}, {{"lock", {"lock2"}}}, "d"); }) == ErrorCode::MissingQualifier);
    CHECK(code_of([&] { instantiate(kb, "Door", {{"width", {5.0}}}, {{"lock", {"lock2"}}}, "d"); }) == ErrorCode::DomainViolation);
    CHECK(code_of([&] { instantiate(kb, "Door", {{"width", {1.0}}}, {{"lock", {"win"}}}, "d"); }) == ErrorCode::IllegalPartType);
    CHECK(code_of([&] { instantiate(kb, "Door", {{"width", {1.0}}}, {{"lock", {"lock1"}}}, "d"); }) == ErrorCode::ChildAlreadyOwned);
    CHECK(code_of([&] { instantiate(kb, "Door", {{"width", {1.0}}}, {{"lock", {"lock2", "lock2"}}}, "d"); }) ==
          ErrorCode::ChildAlreadyOwned);
    CHECK(code_of([&] { instantiate(kb, "Door", {{"width", {1.0}}}, {}, "d"); }) == ErrorCode::EssentialSlotEmpty);
    CHECK(code_of([&] { instantiate(kb, "Door", {{"width", {1.0}}}, {{"lock", {"lock2"}}, {"hinge", {}}}, "d"); }) ==
          ErrorCode::UnknownSlot);
    CHECK(code_of([&] { instantiate(kb, "Door", {{"width", {1.0}}}, {{"lock", {"ghost"}}}, "d"); }) == ErrorCode::UnknownObject);
    CHECK(code_of([&] { instantiate(kb, "Door", {{"width", {1.0}}}, {{"lock", {"lock2"}}}, "door1"); }) == ErrorCode::DuplicateObject);
    CHECK(code_of([&] { instantiate(kb, "Gate", {}, {}, "g"); }) == ErrorCode::UnknownType);
    CHECK(kb == before);

    auto id = instantiate(kb, "Door", {{"width", {1.0}}}, {{"lock", {"lock2"}}});
    CHECK(id == "Door_1");
    REQUIRE(kb.object("lock2").father);
    CHECK(kb.object("lock2").father->objectId == "Door_1");
    CHECK(kb.object("lock2").father->slotName == "lock");
    CHECK(validate_kb(kb).empty());
}

TEST_CASE("a slot accepts descendants of its legal types") {
    KnowledgeBase kb = door_types();
    define_type(kb, {"SmartLock", "smart lock", {"Lock"}, {{"firmware", TextDomain{}, false}}, {}});
    instantiate(kb, "SmartLock", {}, {}, "sl");
    instantiate(kb, "Door", {{"width", {1.0}}}, {{"lock", {"sl"}}}, "d");
    auto props = effective_properties(kb, "d");
    CHECK(origin_of(props, "firmware") == PropertyOrigin::Ascending);
    CHECK(validate_kb(kb).empty());
}

TEST_CASE("effective_properties combines own, descending and ascending properties") {
    KnowledgeBase kb = door_kb();

    auto handle = effective_properties(kb, "handle1");
    REQUIRE(handle.size() == 1);
    CHECK(handle[0] == EffectiveProperty{"grip", PropertyOrigin::Own, "Handle"});

    auto lock = effective_properties(kb, "lock1");
    CHECK(origin_of(lock, "keyCode") == PropertyOrigin::Own);
    CHECK(origin_of(lock, "material") == PropertyOrigin::Descending);

    auto door = effective_properties(kb, "door1");
    CHECK(names_of(door) == std::set<std::string>{"grip", "keyCode", "material", "width"});
    CHECK(origin_of(door, "width") == PropertyOrigin::Own);
    CHECK(origin_of(door, "keyCode") == PropertyOrigin::Ascending);
    CHECK(origin_of(door, "material") == PropertyOrigin::Ascending);

    auto house = effective_properties(kb, "house");
    CHECK(names_of(house) == brute_property_names(kb, "house"));
    CHECK(origin_of(house, "floors") == PropertyOrigin::Own);
    CHECK(origin_of(house, "keyCode") == PropertyOrigin::Ascending);

    CHECK(code_of([&] { effective_properties(kb, "ghost"); }) == ErrorCode::UnknownObject);
}

TEST_CASE("effective_properties matches brute-force traversal on random knowledge bases") {
    Rng rng(11);
    for (int round = 0; round < 60; ++round) {
        KbGenerator gen(rng);
        KnowledgeBase kb = gen.generate(2, 2);
        for (const auto& [id, obj] : kb.objects) {
            auto props = effective_properties(kb, id);
            CHECK(names_of(props) == brute_property_names(kb, id));
            CHECK(names_of(props).size() == props.size());
        }
    }
}

TEST_CASE("effective_properties is monotone under attribute additions") {
    Rng rng(12);
    for (int round = 0; round < 60; ++round) {
        KbGenerator gen(rng);
        KnowledgeBase kb = gen.generate(2, 1);
        auto it = std::next(kb.objects.begin(), static_cast<long>(uniform(rng, 0, kb.objects.size() - 1)));
        const ObjectId id = it->first;
        auto before = names_of(effective_properties(kb, id));

        std::vector<TypeId> closure;
        std::vector<ObjectId> stack{id};
        while (!stack.empty()) {
            const auto& o = kb.objects.at(stack.back());
            stack.pop_back();
            closure.push_back(o.typeId);
            for (auto& a : ancestors(kb, o.typeId)) closure.push_back(a);
            for (const auto& [s, cs] : o.parts) stack.insert(stack.end(), cs.begin(), cs.end());
        }
        TypeId t = closure[uniform(rng, 0, closure.size() - 1)];
        kb.types.at(t).ownAttributes.push_back({"added_" + std::to_string(round), TextDomain{}, false});
        auto after = names_of(effective_properties(kb, id));
        CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        CHECK(after.count("added_" + std::to_string(round)) == 1);
    }
}

TEST_CASE("type_relationship searches both supertype chains") {
    KnowledgeBase kb = door_types();
    define_type(kb, {"SmartLock", "smart lock", {"Lock"}, {}, {}});
    CHECK(type_relationship(kb, "Door", "Door") == TypeRelationship::SameType);
    CHECK(type_relationship(kb, "Mechanism", "Lock") == TypeRelationship::T1AncestorOfT2);
    CHECK(type_relationship(kb, "Lock", "Mechanism") == TypeRelationship::T2AncestorOfT1);
    CHECK(type_relationship(kb, "Mechanism", "SmartLock") == TypeRelationship::T1AncestorOfT2);
    CHECK(type_relationship(kb, "Door", "Window") == TypeRelationship::Independent);
    CHECK(type_relationship(kb, "Lock", "Handle") == TypeRelationship::Independent);
    CHECK(code_of([&] { type_relationship(kb, "Door", "Gate"); }) == ErrorCode::UnknownType);
}

TEST_CASE("validate_kb on consistent and hand-corrupted knowledge bases") {
    KnowledgeBase kb = door_kb();
    CHECK(validate_kb(kb).empty());

    kb.objects.at("door1").parts["handle"].push_back("ghost");
    auto report = validate_kb(kb);
    REQUIRE(report.size() == 1);
    CHECK(report[0].code == ErrorCode::UnknownReference);
    CHECK(report[0].id == "door1");
    CHECK(report[0].kind == EntityKind::Object);
}

TEST_CASE("validate_kb detects every injected mutation") {
    // Each mutation records what it broke; the report must name it.
    struct Injected {
        ErrorCode code;
        std::string id;
        std::string alsoAcceptable = {};
    };
    using Mutation = std::function<std::optional<Injected>(KnowledgeBase&, Rng&)>;

    auto random_object = [](KnowledgeBase& kb, Rng& rng) -> ObjectInstance& {
        return std::next(kb.objects.begin(), static_cast<long>(uniform(rng, 0, kb.objects.size() - 1)))->second;
    };

    std::vector<std::pair<const char*, Mutation>> mutations = {
        {"drop qualifier", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto& o = random_object(kb, rng);
             for (const auto& a : effective_attributes(kb, o.typeId))
                 if (a.qualifier) {
                     o.attributes.erase(a.name);
                     return Injected{ErrorCode::MissingQualifier, o.id};
                 }
             return std::nullopt;
         }},
        {"out-of-domain value", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto& o = random_object(kb, rng);
             auto attrs = effective_attributes(kb, o.typeId);
             if (attrs.empty()) return std::nullopt;
             const auto& a = attrs[uniform(rng, 0, attrs.size() - 1)];
             o.attributes[a.name] = AttrValue{std::holds_alternative<TextDomain>(a.domain) ? Value{Symbol{"x"}} : Value{std::string("x")}, false};
             return Injected{ErrorCode::DomainViolation, o.id};
         }},
        {"dangling part", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto& o = random_object(kb, rng);
             auto slots = effective_slots(kb, o.typeId);
             if (slots.empty()) return std::nullopt;
             o.parts[slots[uniform(rng, 0, slots.size() - 1)].name].push_back("ghost");
             return Injected{ErrorCode::UnknownReference, o.id};
         }},
        {"shared child", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto& o = random_object(kb, rng);
             for (const auto& [slot, children] : o.parts)
                 for (const auto& c : children) {
                     // Give the child a second father elsewhere.
                     for (auto& [id, other] : kb.objects) {
                         if (id == o.id || id == c) continue;
                         for (const auto& s : effective_slots(kb, other.typeId))
                             if (s.legalTypes.count(kb.objects.at(c).typeId)) {
                                 other.parts[s.name].push_back(c);
                                 return Injected{ErrorCode::ChildAlreadyOwned, c};
                             }
                     }
                 }
             return std::nullopt;
         }},
        {"illegal part type", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto& o = random_object(kb, rng);
             if (!o.father) return std::nullopt;
             const auto& fatherId = o.father->objectId;
             TypeId alien = "Alien" + std::to_string(kb.types.size());
             kb.types.emplace(alien, TypeDef{alien, "alien", {}, {}, {}});
             o.typeId = alien;
             return Injected{ErrorCode::IllegalPartType, fatherId};
         }},
        {"empty essential slot", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto& o = random_object(kb, rng);
             for (const auto& s : effective_slots(kb, o.typeId))
                 if (s.essential) {
                     o.parts.erase(s.name);
                     return Injected{ErrorCode::EssentialSlotEmpty, o.id};
                 }
             return std::nullopt;
         }},
        {"stale father", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto& o = random_object(kb, rng);
             o.father = FatherRef{"nobody", "nowhere"};
             return Injected{ErrorCode::FatherMismatch, o.id};
         }},
        {"supertype cycle", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto it = std::next(kb.types.begin(), static_cast<long>(uniform(rng, 0, kb.types.size() - 1)));
             auto below = descendants(kb, it->first);
             TypeId back = below.empty() ? it->first : below[uniform(rng, 0, below.size() - 1)];
             it->second.supertypes.push_back(back);
             return Injected{ErrorCode::SupertypeCycle, it->first};
         }},
        {"unknown supertype", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto it = std::next(kb.types.begin(), static_cast<long>(uniform(rng, 0, kb.types.size() - 1)));
             it->second.supertypes.push_back("Missing");
             return Injected{ErrorCode::UnknownReference, it->first};
         }},
        {"negative weight", [&](KnowledgeBase& kb, Rng&) -> std::optional<Injected> {
             for (auto& [id, def] : kb.types)
                 if (!def.slots.empty()) {
                     def.slots.front().weight = -0.5;
                     return Injected{ErrorCode::InvalidWeight, id};
                 }
             return std::nullopt;
         }},
        {"composition cycle", [&](KnowledgeBase& kb, Rng& rng) -> std::optional<Injected> {
             auto& o = random_object(kb, rng);
             if (o.parts.empty() || o.parts.begin()->second.empty()) return std::nullopt;
             // Make the object a part of its own first child.
             auto child = o.parts.begin()->second.front();
             kb.objects.at(child).parts["loop"].push_back(o.id);
             return Injected{ErrorCode::CompositionCycle, o.id, child};
         }},
    };

    Rng rng(2024);
    std::map<std::string, int> applied;
    for (int round = 0; round < 150; ++round) {
        KbGenerator gen(rng);
        const KnowledgeBase base = gen.generate(2, 2);
        REQUIRE(validate_kb(base).empty());
        for (const auto& [name, mutate] : mutations) {
            KnowledgeBase kb = base;
            auto injected = mutate(kb, rng);
            if (!injected) continue;
            ++applied[name];
            auto report = validate_kb(kb);
            INFO("mutation: " << std::string(name) << " on " << injected->id);
            CHECK((has_violation(report, injected->code, injected->id) ||
                   (!injected->alsoAcceptable.empty() && has_violation(report, injected->code, injected->alsoAcceptable))));
        }
    }
    for (const auto& [name, _] : mutations) {
        INFO("mutation never applied: " << name);
        CHECK(applied[name] > 0);
    }
}
