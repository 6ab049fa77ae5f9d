#include "objkb/kb.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace objkb {

std::string_view to_string(TypeRelationship rel) {
    switch (rel) {
        case TypeRelationship::SameType: return "same-type";
        case TypeRelationship::T1AncestorOfT2: return "t1-ancestor-of-t2";
        case TypeRelationship::T2AncestorOfT1: return "t2-ancestor-of-t1";
        case TypeRelationship::Independent: return "independent";
    }
    return "independent";
}

std::string_view to_string(PropertyOrigin origin) {
    switch (origin) {
        case PropertyOrigin::Own: return "own";
        case PropertyOrigin::Descending: return "descending";
        case PropertyOrigin::Ascending: return "ascending";
    }
    return "own";
}

namespace {

// Breadth-first walk over supertypes. Unknown ids are skipped so that the
// walk is usable on knowledge bases that have not been validated.
std::vector<TypeId> ancestors_of(const std::map<TypeId, TypeDef>& types, const TypeId& t) {
    std::vector<TypeId> out;
    std::unordered_set<TypeId> seen{t};
    std::deque<TypeId> queue{t};
    while (!queue.empty()) {
        auto it = types.find(queue.front());
        queue.pop_front();
        if (it == types.end()) continue;
        for (const auto& s : it->second.supertypes) {
            if (!seen.insert(s).second) continue;
            if (!types.count(s)) continue;
            out.push_back(s);
            queue.push_back(s);
        }
    }
    return out;
}

std::map<TypeId, std::vector<TypeId>> subtype_index(const std::map<TypeId, TypeDef>& types) {
    std::map<TypeId, std::vector<TypeId>> subs;
    for (const auto& [id, def] : types)
        for (const auto& s : def.supertypes) subs[s].push_back(id);
    return subs;
}

std::vector<TypeId> descendants_of(const std::map<TypeId, std::vector<TypeId>>& subs, const TypeId& t) {
    std::vector<TypeId> out;
    std::unordered_set<TypeId> seen{t};
    std::deque<TypeId> queue{t};
    while (!queue.empty()) {
        auto it = subs.find(queue.front());
        queue.pop_front();
        if (it == subs.end()) continue;
        for (const auto& d : it->second) {
            if (!seen.insert(d).second) continue;
            out.push_back(d);
            queue.push_back(d);
        }
    }
    return out;
}

bool same_or_descendant(const std::map<TypeId, TypeDef>& types, const TypeId& t, const TypeId& anc) {
    if (t == anc) return true;
    auto a = ancestors_of(types, t);
    return std::find(a.begin(), a.end(), anc) != a.end();
}

Violation type_violation(ErrorCode code, const TypeId& id, std::string member, std::string msg) {
    return Violation{code, EntityKind::Type, id, std::move(member), std::move(msg)};
}

Violation object_violation(ErrorCode code, const ObjectId& id, std::string member, std::string msg) {
    return Violation{code, EntityKind::Object, id, std::move(member), std::move(msg)};
}

std::string join(const std::set<TypeId>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ",";
        out += id;
    }
    return out;
}

// Type-level checks: references, IS-A acyclicity, domains, and the name
// partition over own, inherited and upward-contributed attribute names.
class TypeChecker {
public:
    TypeChecker(const std::map<TypeId, TypeDef>& types, std::vector<Violation>& out)
        : types_(types), out_(out), subs_(subtype_index(types)) {}

    void run() {
        for (const auto& [id, def] : types_) check_local(def);
        for (const auto& [id, def] : types_) check_supertype_cycle(def);
        for (const auto& [id, def] : types_) check_inherited_names(def);
        for (const auto& [id, def] : types_) composition_names(id);
        for (const auto& [id, def] : types_) check_partition(def);
    }

private:
    void check_local(const TypeDef& def) {
        if (!is_identifier(def.id))
            out_.push_back(type_violation(ErrorCode::InvalidIdentifier, def.id, "", "type id '" + def.id + "' is not an identifier"));
        for (const auto& s : def.supertypes) {
            if (!types_.count(s))
                out_.push_back(type_violation(ErrorCode::UnknownReference, def.id, s, "type '" + def.id + "' names unknown supertype '" + s + "'"));
        }
        std::set<std::string> names;
        for (const auto& a : def.ownAttributes) {
            if (!is_identifier(a.name))
                out_.push_back(type_violation(ErrorCode::InvalidIdentifier, def.id, a.name, "attribute name '" + a.name + "' is not an identifier"));
            if (!names.insert(a.name).second)
                out_.push_back(type_violation(ErrorCode::PropertyNameClash, def.id, a.name, "attribute '" + a.name + "' declared twice in type '" + def.id + "'"));
            if (!domain_is_well_formed(a.domain))
                out_.push_back(type_violation(ErrorCode::InvalidDomain, def.id, a.name, "attribute '" + a.name + "' of type '" + def.id + "' has an empty or inverted domain"));
        }
        std::set<std::string> slots;
        for (const auto& s : def.slots) {
            if (!is_identifier(s.name))
                out_.push_back(type_violation(ErrorCode::InvalidIdentifier, def.id, s.name, "slot name '" + s.name + "' is not an identifier"));
            if (!slots.insert(s.name).second)
                out_.push_back(type_violation(ErrorCode::PropertyNameClash, def.id, s.name, "slot '" + s.name + "' declared twice in type '" + def.id + "'"));
            if (!std::isfinite(s.weight) || s.weight < 0.0)
                out_.push_back(type_violation(ErrorCode::InvalidWeight, def.id, s.name, "slot '" + s.name + "' of type '" + def.id + "' has a negative or non-finite weight"));
            if (s.legalTypes.empty())
                out_.push_back(type_violation(ErrorCode::UnknownReference, def.id, s.name, "slot '" + s.name + "' of type '" + def.id + "' lists no legal types"));
            for (const auto& l : s.legalTypes) {
                if (!types_.count(l))
                    out_.push_back(type_violation(ErrorCode::UnknownReference, def.id, s.name, "slot '" + s.name + "' of type '" + def.id + "' names unknown type '" + l + "'"));
            }
        }
    }

    void check_supertype_cycle(const TypeDef& def) {
        // A type lies on a cycle iff it is reachable from one of its supertypes.
        std::unordered_set<TypeId> seen;
        std::deque<TypeId> queue(def.supertypes.begin(), def.supertypes.end());
        while (!queue.empty()) {
            TypeId t = queue.front();
            queue.pop_front();
            if (t == def.id) {
                out_.push_back(type_violation(ErrorCode::SupertypeCycle, def.id, "", "type '" + def.id + "' is its own ancestor"));
                return;
            }
            if (!seen.insert(t).second) continue;
            auto it = types_.find(t);
            if (it == types_.end()) continue;
            for (const auto& s : it->second.supertypes) queue.push_back(s);
        }
    }

    void check_inherited_names(const TypeDef& def) {
        std::map<std::string, TypeId> attrs;
        std::map<std::string, TypeId> slots;
        std::vector<TypeId> chain{def.id};
        auto anc = ancestors_of(types_, def.id);
        chain.insert(chain.end(), anc.begin(), anc.end());
        for (const auto& t : chain) {
            auto found = types_.find(t);
            if (found == types_.end()) continue;
            const auto& td = found->second;
            for (const auto& a : td.ownAttributes) {
                auto [it, fresh] = attrs.emplace(a.name, t);
                if (!fresh && it->second != t)
                    out_.push_back(type_violation(ErrorCode::PropertyNameClash, def.id, a.name,
                                                  "attribute '" + a.name + "' of type '" + def.id + "' is declared by both '" + it->second + "' and '" + t + "'"));
            }
            for (const auto& s : td.slots) {
                auto [it, fresh] = slots.emplace(s.name, t);
                if (!fresh && it->second != t)
                    out_.push_back(type_violation(ErrorCode::PropertyNameClash, def.id, s.name,
                                                  "slot '" + s.name + "' of type '" + def.id + "' is declared by both '" + it->second + "' and '" + t + "'"));
            }
        }
    }

    std::vector<const SubObjectSlot*> slots_of(const TypeId& t) const {
        std::vector<const SubObjectSlot*> out;
        std::set<std::string> seen;
        std::vector<TypeId> chain{t};
        auto anc = ancestors_of(types_, t);
        chain.insert(chain.end(), anc.begin(), anc.end());
        for (const auto& c : chain) {
            auto found = types_.find(c);
            if (found == types_.end()) continue;
            for (const auto& s : found->second.slots)
                if (seen.insert(s.name).second) out.push_back(&s);
        }
        return out;
    }

    // Types whose instances may fill the slot: legal types and their descendants.
    std::set<TypeId> fillers(const SubObjectSlot& s) const {
        std::set<TypeId> out;
        for (const auto& l : s.legalTypes) {
            if (!types_.count(l)) continue;
            out.insert(l);
            for (auto& d : descendants_of(subs_, l)) out.insert(d);
        }
        return out;
    }

    std::set<std::string> attribute_names(const TypeId& t) const {
        std::set<std::string> out;
        if (auto found = types_.find(t); found != types_.end())
            for (const auto& a : found->second.ownAttributes) out.insert(a.name);
        for (const auto& anc : ancestors_of(types_, t))
            for (const auto& a : types_.at(anc).ownAttributes) out.insert(a.name);
        return out;
    }

    // Every attribute name visible on an instance of `t` through its
    // possible composition subtrees. Reports composition cycles.
    const std::set<std::string>& composition_names(const TypeId& t) {
        if (auto it = names_.find(t); it != names_.end()) return it->second;
        static const std::set<std::string> empty;
        if (!in_progress_.insert(t).second) {
            if (cyclic_.insert(t).second)
                out_.push_back(type_violation(ErrorCode::CompositionCycle, t, "", "type '" + t + "' can contain itself through its slots"));
            return empty;
        }
        std::set<std::string> names = attribute_names(t);
        for (const auto* s : slots_of(t))
            for (const auto& f : fillers(*s)) {
                const auto& sub = composition_names(f);
                names.insert(sub.begin(), sub.end());
            }
        in_progress_.erase(t);
        return names_[t] = std::move(names);
    }

    void check_partition(const TypeDef& def) {
        std::map<std::string, std::string> source;
        for (const auto& n : attribute_names(def.id)) source.emplace(n, "attributes");
        std::set<std::string> reported;
        for (const auto* s : slots_of(def.id)) {
            std::set<std::string> contributed;
            for (const auto& f : fillers(*s)) {
                const auto& sub = composition_names(f);
                contributed.insert(sub.begin(), sub.end());
            }
            for (const auto& n : contributed) {
                auto [it, fresh] = source.emplace(n, "slot '" + s->name + "'");
                if (!fresh && reported.insert(n).second)
                    out_.push_back(type_violation(ErrorCode::PropertyNameClash, def.id, n,
                                                  "property '" + n + "' reaches type '" + def.id + "' from both " + it->second + " and slot '" + s->name + "'"));
            }
        }
    }

    const std::map<TypeId, TypeDef>& types_;
    std::vector<Violation>& out_;
    std::map<TypeId, std::vector<TypeId>> subs_;
    std::map<TypeId, std::set<std::string>> names_;
    std::set<TypeId> in_progress_;
    std::set<TypeId> cyclic_;
};

void check_objects(const KnowledgeBase& kb, std::vector<Violation>& out) {
    // child -> every (parent, slot) that lists it
    std::map<ObjectId, std::vector<FatherRef>> owners;
    for (const auto& [id, obj] : kb.objects)
        for (const auto& [slot, children] : obj.parts)
            for (const auto& c : children) owners[c].push_back(FatherRef{id, slot});

    for (const auto& [id, obj] : kb.objects) {
        if (!is_identifier(id) || id != obj.id)
            out.push_back(object_violation(ErrorCode::InvalidIdentifier, id, "", "object id '" + id + "' is not a valid identifier"));
        if (!kb.has_type(obj.typeId)) {
            out.push_back(object_violation(ErrorCode::UnknownReference, id, "", "object '" + id + "' has unknown type '" + obj.typeId + "'"));
            continue;
        }
        for (const auto& a : effective_attributes(kb, obj.typeId)) {
            auto v = obj.attributes.find(a.name);
            if (v == obj.attributes.end()) {
                if (a.qualifier)
                    out.push_back(object_violation(ErrorCode::MissingQualifier, id, a.name, "object '" + id + "' lacks qualifier attribute '" + a.name + "'"));
            } else if (!domain_accepts(a.domain, v->second.value)) {
                out.push_back(object_violation(ErrorCode::DomainViolation, id, a.name, "object '" + id + "' has an out-of-domain value for '" + a.name + "'"));
            }
        }
        for (const auto& [name, value] : obj.attributes)
            if (!is_identifier(name))
                out.push_back(object_violation(ErrorCode::InvalidIdentifier, id, name, "attribute name '" + name + "' is not an identifier"));

        auto slots = effective_slots(kb, obj.typeId);
        for (const auto& s : slots) {
            auto p = obj.parts.find(s.name);
            if (s.essential && (p == obj.parts.end() || p->second.empty()))
                out.push_back(object_violation(ErrorCode::EssentialSlotEmpty, id, s.name, "object '" + id + "' leaves essential slot '" + s.name + "' empty"));
        }
        for (const auto& [slotName, children] : obj.parts) {
            auto s = std::find_if(slots.begin(), slots.end(), [&](const auto& x) { return x.name == slotName; });
            if (s == slots.end()) {
                out.push_back(object_violation(ErrorCode::UnknownSlot, id, slotName, "object '" + id + "' fills unknown slot '" + slotName + "'"));
                continue;
            }
            for (const auto& c : children) {
                auto child = kb.objects.find(c);
                if (child == kb.objects.end()) {
                    out.push_back(object_violation(ErrorCode::UnknownReference, id, slotName, "object '" + id + "' references unknown part '" + c + "'"));
                    continue;
                }
                const auto& ct = child->second.typeId;
                bool legal = kb.has_type(ct) && std::any_of(s->legalTypes.begin(), s->legalTypes.end(), [&](const TypeId& l) {
                    return same_or_descendant(kb.types, ct, l);
                });
                if (!legal)
                    out.push_back(object_violation(ErrorCode::IllegalPartType, id, slotName,
                                                   "part '" + c + "' of type '" + ct + "' is not legal in slot '" + slotName + "' {" + join(s->legalTypes) + "}"));
            }
        }

        auto o = owners.find(id);
        if (o != owners.end() && o->second.size() > 1) {
            out.push_back(object_violation(ErrorCode::ChildAlreadyOwned, id, "", "object '" + id + "' is a part of more than one father"));
        } else {
            std::optional<FatherRef> expected;
            if (o != owners.end()) expected = o->second.front();
            if (expected != obj.father)
                out.push_back(object_violation(ErrorCode::FatherMismatch, id, "", "object '" + id + "' has a stale father back-reference"));
        }
    }

    // Composition acyclicity: iterative three-colour DFS.
    enum class Colour { White, Grey, Black };
    std::map<ObjectId, Colour> colour;
    for (const auto& [id, _] : kb.objects) colour[id] = Colour::White;
    for (const auto& [root, _] : kb.objects) {
        if (colour[root] != Colour::White) continue;
        std::vector<std::pair<ObjectId, std::vector<ObjectId>>> stack;
        auto children_of = [&](const ObjectId& id) {
            std::vector<ObjectId> cs;
            for (const auto& [slot, children] : kb.objects.at(id).parts)
                for (const auto& c : children)
                    if (kb.objects.count(c)) cs.push_back(c);
            std::reverse(cs.begin(), cs.end());
            return cs;
        };
        colour[root] = Colour::Grey;
        stack.emplace_back(root, children_of(root));
        while (!stack.empty()) {
            auto& [node, pending] = stack.back();
            if (pending.empty()) {
                colour[node] = Colour::Black;
                stack.pop_back();
                continue;
            }
            ObjectId next = pending.back();
            pending.pop_back();
            if (colour[next] == Colour::Grey) {
                out.push_back(object_violation(ErrorCode::CompositionCycle, next, "", "object '" + next + "' contains itself through its parts"));
            } else if (colour[next] == Colour::White) {
                colour[next] = Colour::Grey;
                auto cs = children_of(next);
                stack.emplace_back(next, std::move(cs));
            }
        }
    }
}

int priority(ErrorCode code) {
    static const ErrorCode order[] = {
        ErrorCode::DuplicateType,   ErrorCode::InvalidIdentifier, ErrorCode::UnknownReference,
        ErrorCode::SupertypeCycle,  ErrorCode::InvalidDomain,     ErrorCode::InvalidWeight,
        ErrorCode::PropertyNameClash, ErrorCode::CompositionCycle,
    };
    for (int i = 0; i < static_cast<int>(std::size(order)); ++i)
        if (order[i] == code) return i;
    return static_cast<int>(std::size(order));
}

void collect_properties(const KnowledgeBase& kb, const ObjectInstance& obj,
                        std::vector<EffectiveProperty>& out, std::unordered_set<ObjectId>& visiting) {
    if (!visiting.insert(obj.id).second)
        throw KbError(ErrorCode::CompositionCycle, "object '" + obj.id + "' contains itself through its parts");
    const auto& def = kb.type(obj.typeId);

    std::map<std::string, std::string> source;
    auto add = [&](EffectiveProperty p, const std::string& from) {
        auto [it, fresh] = source.emplace(p.name, from);
        if (!fresh) {
            if (it->second == from) return;
            throw KbError(ErrorCode::PropertyNameClash,
                          "property '" + p.name + "' reaches object '" + obj.id + "' from both " + it->second + " and " + from);
        }
        out.push_back(std::move(p));
    };

    for (const auto& a : def.ownAttributes) add({a.name, PropertyOrigin::Own, def.id}, "attributes");
    for (const auto& anc : ancestors(kb, def.id))
        for (const auto& a : kb.type(anc).ownAttributes) add({a.name, PropertyOrigin::Descending, anc}, "attributes");

    for (const auto& [slot, children] : obj.parts) {
        for (const auto& c : children) {
            std::vector<EffectiveProperty> sub;
            collect_properties(kb, kb.object(c), sub, visiting);
            for (auto& p : sub) {
                p.origin = PropertyOrigin::Ascending;
                add(std::move(p), "slot '" + slot + "'");
            }
        }
    }
    visiting.erase(obj.id);
}

}  // namespace

std::vector<TypeId> ancestors(const KnowledgeBase& kb, const TypeId& t) {
    kb.type(t);
    return ancestors_of(kb.types, t);
}

std::vector<TypeId> descendants(const KnowledgeBase& kb, const TypeId& t) {
    kb.type(t);
    return descendants_of(subtype_index(kb.types), t);
}

bool is_same_or_descendant(const KnowledgeBase& kb, const TypeId& t, const TypeId& ancestor) {
    kb.type(t);
    kb.type(ancestor);
    return same_or_descendant(kb.types, t, ancestor);
}

std::vector<AttributeDef> effective_attributes(const KnowledgeBase& kb, const TypeId& t) {
    std::vector<AttributeDef> out = kb.type(t).ownAttributes;
    std::set<std::string> seen;
    for (const auto& a : out) seen.insert(a.name);
    for (const auto& anc : ancestors_of(kb.types, t))
        for (const auto& a : kb.types.at(anc).ownAttributes)
            if (seen.insert(a.name).second) out.push_back(a);
    return out;
}

const AttributeDef* find_effective_attribute(const KnowledgeBase& kb, const TypeId& t, std::string_view name) {
    if (const auto* a = kb.type(t).find_attribute(name)) return a;
    for (const auto& anc : ancestors_of(kb.types, t))
        if (const auto* a = kb.types.at(anc).find_attribute(name)) return a;
    return nullptr;
}

std::vector<SubObjectSlot> effective_slots(const KnowledgeBase& kb, const TypeId& t) {
    std::vector<SubObjectSlot> out = kb.type(t).slots;
    std::set<std::string> seen;
    for (const auto& s : out) seen.insert(s.name);
    for (const auto& anc : ancestors_of(kb.types, t))
        for (const auto& s : kb.types.at(anc).slots)
            if (seen.insert(s.name).second) out.push_back(s);
    return out;
}

std::vector<ObjectId> direct_instances(const KnowledgeBase& kb, const TypeId& t) {
    std::vector<ObjectId> out;
    for (const auto& [id, obj] : kb.objects)
        if (obj.typeId == t) out.push_back(id);
    return out;
}

void rebuild_father_links(KnowledgeBase& kb) {
    for (auto& [id, obj] : kb.objects) obj.father.reset();
    for (const auto& [id, obj] : kb.objects)
        for (const auto& [slot, children] : obj.parts)
            for (const auto& c : children) {
                auto it = kb.objects.find(c);
                if (it != kb.objects.end() && !it->second.father) it->second.father = FatherRef{id, slot};
            }
}

void define_types(KnowledgeBase& kb, std::vector<TypeDef> defs) {
    KnowledgeBase candidate{kb.types, {}};
    std::set<TypeId> fresh;
    for (auto& def : defs) {
        if (candidate.has_type(def.id))
            throw KbError(ErrorCode::DuplicateType, "type '" + def.id + "' is already defined");
        fresh.insert(def.id);
        candidate.types.emplace(def.id, std::move(def));
    }
    std::vector<Violation> violations;
    TypeChecker(candidate.types, violations).run();
    if (!violations.empty()) {
        auto worst = std::min_element(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
            return priority(a.code) < priority(b.code);
        });
        throw KbError(worst->code, worst->message);
    }
    kb.types = std::move(candidate.types);
}

TypeId define_type(KnowledgeBase& kb, TypeDef def) {
    TypeId id = def.id;
    define_types(kb, {std::move(def)});
    return id;
}

ObjectId instantiate(KnowledgeBase& kb,
                     const TypeId& typeId,
                     std::map<std::string, AttrValue> attributeValues,
                     std::map<std::string, std::vector<ObjectId>> parts,
                     ObjectId objectId) {
    kb.type(typeId);
    if (objectId.empty()) {
        for (std::size_t n = 1;; ++n) {
            objectId = typeId + "_" + std::to_string(n);
            if (!kb.has_object(objectId)) break;
        }
    } else if (!is_identifier(objectId)) {
        throw KbError(ErrorCode::InvalidIdentifier, "object id '" + objectId + "' is not an identifier");
    } else if (kb.has_object(objectId)) {
        throw KbError(ErrorCode::DuplicateObject, "object '" + objectId + "' already exists");
    }

    for (const auto& a : effective_attributes(kb, typeId)) {
        auto v = attributeValues.find(a.name);
        if (v == attributeValues.end()) {
            if (a.qualifier)
                throw KbError(ErrorCode::MissingQualifier, "instance of '" + typeId + "' lacks qualifier attribute '" + a.name + "'");
        } else if (!domain_accepts(a.domain, v->second.value)) {
            throw KbError(ErrorCode::DomainViolation, "value of '" + a.name + "' is outside its domain");
        }
    }
    for (const auto& [name, _] : attributeValues)
        if (!is_identifier(name)) throw KbError(ErrorCode::InvalidIdentifier, "attribute name '" + name + "' is not an identifier");

    auto slots = effective_slots(kb, typeId);
    std::set<ObjectId> claimed;
    for (const auto& [slotName, children] : parts) {
        auto s = std::find_if(slots.begin(), slots.end(), [&](const auto& x) { return x.name == slotName; });
        if (s == slots.end())
            throw KbError(ErrorCode::UnknownSlot, "type '" + typeId + "' has no slot '" + slotName + "'");
        for (const auto& c : children) {
            const auto& child = kb.object(c);
            bool legal = std::any_of(s->legalTypes.begin(), s->legalTypes.end(), [&](const TypeId& l) {
                return same_or_descendant(kb.types, child.typeId, l);
            });
            if (!legal)
                throw KbError(ErrorCode::IllegalPartType,
                              "part '" + c + "' of type '" + child.typeId + "' is not legal in slot '" + slotName + "'");
            if (child.father || !claimed.insert(c).second)
                throw KbError(ErrorCode::ChildAlreadyOwned, "object '" + c + "' already belongs to another object");
        }
    }
    for (const auto& s : slots) {
        auto p = parts.find(s.name);
        if (s.essential && (p == parts.end() || p->second.empty()))
            throw KbError(ErrorCode::EssentialSlotEmpty, "essential slot '" + s.name + "' of '" + typeId + "' is empty");
    }

    ObjectInstance obj{objectId, typeId, std::move(attributeValues), std::move(parts), std::nullopt};
    for (const auto& [slotName, children] : obj.parts)
        for (const auto& c : children) kb.objects.at(c).father = FatherRef{objectId, slotName};
    kb.objects.emplace(objectId, std::move(obj));
    return objectId;
}

std::vector<EffectiveProperty> effective_properties(const KnowledgeBase& kb, const ObjectId& objectId) {
    const auto& obj = kb.object(objectId);
    std::vector<EffectiveProperty> out;
    std::unordered_set<ObjectId> visiting;
    collect_properties(kb, obj, out, visiting);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

TypeRelationship type_relationship(const KnowledgeBase& kb, const TypeId& t1, const TypeId& t2) {
    kb.type(t1);
    kb.type(t2);
    if (t1 == t2) return TypeRelationship::SameType;
    auto up1 = ancestors_of(kb.types, t1);
    if (std::find(up1.begin(), up1.end(), t2) != up1.end()) return TypeRelationship::T2AncestorOfT1;
    auto up2 = ancestors_of(kb.types, t2);
    if (std::find(up2.begin(), up2.end(), t1) != up2.end()) return TypeRelationship::T1AncestorOfT2;
    return TypeRelationship::Independent;
}

std::vector<Violation> validate_types(const KnowledgeBase& kb) {
    std::vector<Violation> out;
    TypeChecker(kb.types, out).run();
    return out;
}

std::vector<Violation> validate_kb(const KnowledgeBase& kb) {
    std::vector<Violation> out;
    for (const auto& [id, def] : kb.types)
        if (id != def.id)
            out.push_back(type_violation(ErrorCode::InvalidIdentifier, id, "", "type stored under '" + id + "' claims id '" + def.id + "'"));
    TypeChecker(kb.types, out).run();
    check_objects(kb, out);
    return out;
}

}  // namespace objkb
