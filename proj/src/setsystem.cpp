#include "credal/setsystem.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_set>

namespace credal {

namespace {

void require_event(GroundSet g, EventSet a, const char* where) {
    if (a > full_event(g))
        throw Error(std::string(where) + ": event outside the ground set");
}

bool contains_sorted(const std::vector<EventSet>& events, EventSet a) {
    return std::binary_search(events.begin(), events.end(), a);
}

}  // namespace

GroundSet ground(int n) {
    if (n < 1 || n > 16) throw Error("ground set size must be between 1 and 16");
    return GroundSet{n};
}

EventSet full_event(GroundSet g) {
    return static_cast<EventSet>((1u << g.n) - 1);
}

EventSet complement(GroundSet g, EventSet a) {
    require_event(g, a, "complement");
    return full_event(g) ^ a;
}

int popcount_event(EventSet a) { return std::popcount(a); }

std::string event_name(GroundSet g, EventSet a) {
    require_event(g, a, "event_name");
    if (a == 0) return "{}";
    std::string s;
    if (g.n <= 9) {
        for (int i = 0; i < g.n; ++i)
            if (a >> i & 1u) s += static_cast<char>('1' + i);
        return s;
    }
    s = "{";
    bool first = true;
    for (int i = 0; i < g.n; ++i) {
        if (a >> i & 1u) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
    }
    return s + "}";
}

EventSet event_from_name(GroundSet g, const std::string& name) {
    if (name.empty()) throw ParseError("empty event name");
    if (name == "{}") return 0;
    EventSet mask = 0;
    auto add_element = [&](int k) {
        if (k < 1 || k > g.n)
            throw ParseError("event element out of range: " + std::to_string(k));
        const EventSet bit = 1u << (k - 1);
        if (mask & bit) throw ParseError("repeated event element in: " + name);
        mask |= bit;
    };
    if (name.front() == '{') {
        if (name.back() != '}') throw ParseError("unterminated event name: " + name);
        int value = 0;
        bool have = false;
        for (std::size_t i = 1; i + 1 < name.size(); ++i) {
            const char c = name[i];
            if (c >= '0' && c <= '9') {
                value = value * 10 + (c - '0');
                have = true;
            } else if (c == ',') {
                if (!have) throw ParseError("bad event name: " + name);
                add_element(value);
                value = 0;
                have = false;
            } else {
                throw ParseError("bad event name: " + name);
            }
        }
        if (have) add_element(value);
        else if (name.size() > 2) throw ParseError("bad event name: " + name);
        return mask;
    }
    if (g.n > 9)
        throw ParseError("digit event names need n <= 9, got: " + name);
    for (char c : name) {
        if (c < '1' || c > '9') throw ParseError("bad event name: " + name);
        add_element(c - '0');
    }
    return mask;
}

bool SetSystem::contains(EventSet a) const {
    return contains_sorted(events, a);
}

SetSystem make_system(GroundSet g, std::vector<EventSet> events) {
    for (EventSet a : events) require_event(g, a, "make_system");
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    return SetSystem{g, std::move(events)};
}

SetSystem power_set(GroundSet g) {
    std::vector<EventSet> events(static_cast<std::size_t>(full_event(g)) + 1);
    for (std::size_t a = 0; a < events.size(); ++a)
        events[a] = static_cast<EventSet>(a);
    return SetSystem{g, std::move(events)};
}

Partition make_partition(GroundSet g, std::vector<EventSet> parts) {
    EventSet seen = 0;
    for (EventSet p : parts) {
        require_event(g, p, "make_partition");
        if (p == 0) throw Error("make_partition: empty part");
        if (seen & p) throw Error("make_partition: overlapping parts");
        seen |= p;
    }
    if (seen != full_event(g)) throw Error("make_partition: parts do not cover");
    std::sort(parts.begin(), parts.end());
    return Partition{g, std::move(parts)};
}

bool is_pre_dynkin(const SetSystem& s) {
    if (!s.contains(0)) return false;
    const EventSet om = full_event(s.ground);
    for (EventSet a : s.events)
        if (!s.contains(om ^ a)) return false;
    for (EventSet a : s.events)
        for (EventSet b : s.events) {
            if (b > a) break;
            if ((a & b) == 0 && !s.contains(a | b)) return false;
        }
    return true;
}

SetSystem pre_dynkin_hull(const SetSystem& a) {
    const EventSet om = full_event(a.ground);
    std::vector<bool> in(static_cast<std::size_t>(om) + 1, false);
    std::vector<EventSet> members;
    auto add = [&](EventSet e) {
        if (!in[e]) {
            in[e] = true;
            members.push_back(e);
        }
    };
    add(0);
    for (EventSet e : a.events) add(e);
    for (std::size_t i = 0; i < members.size(); ++i) {
        add(om ^ members[i]);
        for (std::size_t j = 0; j <= i; ++j)
            if ((members[i] & members[j]) == 0) add(members[i] | members[j]);
    }
    return make_system(a.ground, std::move(members));
}

bool is_algebra(const SetSystem& s) {
    if (!s.contains(0)) return false;
    const EventSet om = full_event(s.ground);
    for (EventSet a : s.events)
        if (!s.contains(om ^ a)) return false;
    for (EventSet a : s.events)
        for (EventSet b : s.events) {
            if (b > a) break;
            if (!s.contains(a | b)) return false;
        }
    return true;
}

bool is_compatible(const SetSystem& d, EventSet a, EventSet b) {
    if (!d.contains(a) || !d.contains(b))
        throw MembershipError("is_compatible: event outside the system");
    const bool cap = d.contains(a & b);
    const bool cup = d.contains(a | b);
    if (cap != cup)
        throw Error("is_compatible: cap/cup disagree, system is not pre-Dynkin");
    return cap;
}

SetSystem partition_algebra(const Partition& p) {
    const std::size_t k = p.parts.size();
    std::vector<EventSet> events;
    events.reserve(std::size_t(1) << k);
    for (std::size_t pick = 0; pick < (std::size_t(1) << k); ++pick) {
        EventSet e = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (pick >> i & 1u) e |= p.parts[i];
        events.push_back(e);
    }
    return make_system(p.ground, std::move(events));
}

std::vector<SetSystem> blocks(const SetSystem& d) {
    if (!is_pre_dynkin(d)) throw Error("blocks: system is not pre-Dynkin");
    if (is_algebra(d)) return {d};
    const EventSet om = full_event(d.ground);

    // Every algebra inside D is generated by a partition of Omega into
    // D-events (its atoms), and the closure of D under disjoint unions
    // makes every such partition generate an algebra inside D. Enumerate
    // those partitions by always covering the lowest uncovered atom.
    std::vector<std::vector<EventSet>> parts_found;
    std::vector<EventSet> current;
    auto rec = [&](auto&& self, EventSet covered) -> void {
        if (covered == om) {
            parts_found.push_back(current);
            return;
        }
        const EventSet low = (covered + 1) & ~covered;  // lowest uncovered atom
        for (EventSet e : d.events) {
            if (e == 0 || (e & low) == 0 || (e & covered) != 0) continue;
            current.push_back(e);
            self(self, covered | e);
            current.pop_back();
        }
    };
    rec(rec, 0);

    // q refines p: every q-part sits inside some p-part. Keep partitions
    // no other one strictly refines (= maximal algebras).
    auto refines = [](const std::vector<EventSet>& q,
                      const std::vector<EventSet>& p) {
        for (EventSet qm : q) {
            bool inside = false;
            for (EventSet pm : p)
                if ((qm & pm) == qm) {
                    inside = true;
                    break;
                }
            if (!inside) return false;
        }
        return true;
    };
    std::vector<SetSystem> result;
    for (std::size_t i = 0; i < parts_found.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < parts_found.size() && maximal; ++j)
            if (j != i && parts_found[j] != parts_found[i] &&
                refines(parts_found[j], parts_found[i]))
                maximal = false;
        if (maximal)
            result.push_back(
                partition_algebra(make_partition(d.ground, parts_found[i])));
    }
    std::sort(result.begin(), result.end(),
              [](const SetSystem& x, const SetSystem& y) {
                  return x.events < y.events;
              });
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

SetSystem lattice_join(const SetSystem& d1, const SetSystem& d2) {
    if (!(d1.ground == d2.ground))
        throw GroundMismatch("lattice_join: different ground sets");
    std::vector<EventSet> both = d1.events;
    both.insert(both.end(), d2.events.begin(), d2.events.end());
    return pre_dynkin_hull(make_system(d1.ground, std::move(both)));
}

SetSystem lattice_meet(const SetSystem& d1, const SetSystem& d2) {
    if (!(d1.ground == d2.ground))
        throw GroundMismatch("lattice_meet: different ground sets");
    std::vector<EventSet> common;
    std::set_intersection(d1.events.begin(), d1.events.end(),
                          d2.events.begin(), d2.events.end(),
                          std::back_inserter(common));
    SetSystem meet = make_system(d1.ground, std::move(common));
    if (!is_pre_dynkin(meet))
        throw Error("lattice_meet: intersection is not pre-Dynkin");
    return meet;
}

std::vector<EventSet> weak_atoms(const SetSystem& d) {
    if (!is_pre_dynkin(d)) throw Error("weak_atoms: system is not pre-Dynkin");
    std::vector<EventSet> out;
    const EventSet om = full_event(d.ground);
    for (EventSet a = 0;; ++a) {
        bool weak = true;
        for (EventSet e : d.events) {
            if (e != 0 && e != a && (e & a) == e) {
                weak = false;
                break;
            }
        }
        if (weak) out.push_back(a);
        if (a == om) break;
    }
    return out;
}

std::pair<EventSet, EventSet> decompose_atom(const SetSystem& d, EventSet b) {
    require_event(d.ground, b, "decompose_atom");
    if (d.contains(b))
        throw MembershipError("decompose_atom: event already in the system");
    std::vector<EventSet> subs;
    for (EventSet e : d.events)
        if ((e & b) == e) subs.push_back(e);
    EventSet bd = 0;
    bool found = false;
    for (EventSet e : subs) {
        bool maximal = true;
        for (EventSet f : subs)
            if (f != e && (e & f) == e) {
                maximal = false;
                break;
            }
        if (maximal && (!found || e < bd)) {
            bd = e;
            found = true;
        }
    }
    const EventSet atom = b ^ bd;
    if (d.contains(atom))
        throw Error("decompose_atom: remainder unexpectedly in the system");
    for (EventSet e : d.events)
        if (e != 0 && e != atom && (e & atom) == e)
            throw Error("decompose_atom: remainder is not a weak atom");
    return {bd, atom};
}

bool is_compatibility_structure(const std::vector<SetSystem>& systems) {
    if (systems.empty()) return true;
    const GroundSet g = systems.front().ground;
    for (const SetSystem& s : systems) {
        if (!(s.ground == g))
            throw GroundMismatch("is_compatibility_structure: mixed grounds");
        if (s.events.empty())
            throw PiSystemError("is_compatibility_structure: empty member");
        for (EventSet a : s.events)
            for (EventSet b : s.events) {
                if (b > a) break;
                if (!s.contains(a & b))
                    throw PiSystemError(
                        "is_compatibility_structure: member is not a pi-system");
            }
    }
    std::vector<EventSet> uni;
    for (const SetSystem& s : systems)
        uni.insert(uni.end(), s.events.begin(), s.events.end());
    std::sort(uni.begin(), uni.end());
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    if (uni.size() > 24)
        throw SizeLimitExceeded(
            "is_compatibility_structure: union exceeds 24 events");

    std::map<EventSet, std::size_t> index;
    for (std::size_t i = 0; i < uni.size(); ++i) index[uni[i]] = i;
    std::vector<std::uint32_t> member_masks;
    for (const SetSystem& s : systems) {
        std::uint32_t m = 0;
        for (EventSet a : s.events) m |= std::uint32_t(1) << index[a];
        member_masks.push_back(m);
    }

    // Closure of an index subset under pairwise event intersection; fails
    // (nullopt behaviour via the bool) when an intersection leaves the
    // union, in which case no pi-system inside the union extends the seed.
    auto close = [&](std::uint32_t set, bool& ok) {
        ok = true;
        for (;;) {
            std::uint32_t add = 0;
            for (std::size_t i = 0; i < uni.size(); ++i) {
                if (!(set >> i & 1u)) continue;
                for (std::size_t j = 0; j <= i; ++j) {
                    if (!(set >> j & 1u)) continue;
                    const EventSet cap = uni[i] & uni[j];
                    auto it = index.find(cap);
                    if (it == index.end()) {
                        ok = false;
                        return set;
                    }
                    add |= std::uint32_t(1) << it->second;
                }
            }
            if ((add | set) == set) return set;
            set |= add;
        }
    };

    // Any pi-closed T is reached from a singleton closure by repeatedly
    // adjoining one element of T and closing: the closure stays inside T.
    std::unordered_set<std::uint32_t> visited;
    std::vector<std::uint32_t> stack;
    auto visit = [&](std::uint32_t set) -> bool {
        // returns false when the set is a counterexample
        if (!visited.insert(set).second) return true;
        for (std::uint32_t m : member_masks)
            if ((set & ~m) == 0) {
                stack.push_back(set);
                return true;
            }
        return false;
    };
    for (std::size_t i = 0; i < uni.size(); ++i) {
        bool ok = false;
        const std::uint32_t seed = close(std::uint32_t(1) << i, ok);
        if (ok && !visit(seed)) return false;
    }
    while (!stack.empty()) {
        const std::uint32_t set = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < uni.size(); ++i) {
            if (set >> i & 1u) continue;
            bool ok = false;
            const std::uint32_t grown = close(set | (std::uint32_t(1) << i), ok);
            if (ok && !visit(grown)) return false;
        }
    }
    return true;
}

}  // namespace credal
