#include "credal/problemio.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "credal/errors.hpp"
#include "credal/galois.hpp"
#include "credal/measure.hpp"
#include "credal/previsions.hpp"

namespace credal {

const std::vector<std::string> kSubcommands = {
    "hull",          "blocks",    "validate",
    "extendable",    "extend",    "inner-outer",
    "bayes",         "precise-events", "bipolar",
    "dual",          "galois-audit",   "distort",
    "certainty",     "prevision-from-measure", "prevision-extend",
    "precise-gambles", "falsify",
};

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

std::string at(const std::string& path, std::size_t index) {
    return path + "[" + std::to_string(index) + "]";
}

EventSet parse_event_list(const ojson& j, GroundSet g, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of elements");
    EventSet e = 0;
    long long prev = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer())
            fail(at(path, i), "expected an integer element");
        const long long v = j[i].get<long long>();
        if (v < 1 || v > g.n)
            fail(at(path, i), "element outside 1.." + std::to_string(g.n));
        if (v <= prev) fail(at(path, i), "elements must be strictly ascending");
        prev = v;
        e |= EventSet(1) << (v - 1);
    }
    return e;
}

Rational parse_rational(const ojson& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a rational string like \"1/2\"");
    try {
        return rat_from_string(j.get<std::string>());
    } catch (const std::exception& ex) {
        fail(path, ex.what());
    }
}

std::vector<Rational> parse_rational_list(const ojson& j, std::size_t want,
                                          const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of rational strings");
    if (j.size() != want)
        fail(path, "expected " + std::to_string(want) + " entries, got " +
                       std::to_string(j.size()));
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_rational(j[i], at(path, i)));
    return out;
}

std::vector<std::pair<EventSet, Rational>> parse_assignments(
    const ojson& j, GroundSet g, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of {event, value} entries");
    std::vector<std::pair<EventSet, Rational>> out;
    std::set<EventSet> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const ojson& entry = j[i];
        if (!entry.is_object()) fail(at(path, i), "expected an object");
        for (auto it = entry.begin(); it != entry.end(); ++it)
            if (it.key() != "event" && it.key() != "value")
                fail(at(path, i) + "." + it.key(), "unknown field");
        if (!entry.contains("event")) fail(at(path, i), "missing field 'event'");
        if (!entry.contains("value")) fail(at(path, i), "missing field 'value'");
        const EventSet e =
            parse_event_list(entry["event"], g, at(path, i) + ".event");
        if (!seen.insert(e).second)
            fail(at(path, i) + ".event", "duplicate event " + event_name(g, e));
        out.emplace_back(e, parse_rational(entry["value"], at(path, i) + ".value"));
    }
    return out;
}

ojson event_to_list(GroundSet g, EventSet e) {
    ojson arr = ojson::array();
    for (int i = 0; i < g.n; ++i)
        if (e >> i & 1u) arr.push_back(i + 1);
    return arr;
}

ojson rats_json(const std::vector<Rational>& v) {
    ojson arr = ojson::array();
    for (const Rational& x : v) arr.push_back(rat_to_string(x));
    return arr;
}

ojson names_of(const SetSystem& s) {
    ojson arr = ojson::array();
    for (EventSet e : s.events) arr.push_back(event_name(s.ground, e));
    return arr;
}

ojson assignments_json(GroundSet g,
                       const std::vector<std::pair<EventSet, Rational>>& v) {
    ojson arr = ojson::array();
    for (const auto& [e, x] : v) {
        ojson entry;
        entry["event"] = event_to_list(g, e);
        entry["value"] = rat_to_string(x);
        arr.push_back(entry);
    }
    return arr;
}

ojson echo_json(const ProblemFile& p) {
    const GroundSet g = ground(p.n);
    ojson j;
    j["n"] = p.n;
    if (p.system) {
        ojson arr = ojson::array();
        for (EventSet e : *p.system) arr.push_back(event_to_list(g, e));
        j["system"] = arr;
    }
    if (p.measure) j["measure"] = assignments_json(g, *p.measure);
    if (p.psi) j["psi"] = rats_json(*p.psi);
    if (p.gambles) {
        ojson arr = ojson::array();
        for (const auto& f : *p.gambles) arr.push_back(rats_json(f));
        j["gambles"] = arr;
    }
    if (p.gamma) {
        ojson arr = ojson::array();
        for (const auto& [x, y] : *p.gamma) {
            ojson bp = ojson::array();
            bp.push_back(rat_to_string(x));
            bp.push_back(rat_to_string(y));
            arr.push_back(bp);
        }
        j["gamma"] = arr;
    }
    if (p.measures) {
        ojson arr = ojson::array();
        for (const auto& nu : *p.measures) arr.push_back(rats_json(nu));
        j["measures"] = arr;
    }
    if (p.lower) j["lower"] = assignments_json(g, *p.lower);
    if (p.upper) j["upper"] = assignments_json(g, *p.upper);
    if (p.event) j["event"] = event_to_list(g, *p.event);
    if (p.cond) j["cond"] = event_to_list(g, *p.cond);
    if (p.depth) j["depth"] = *p.depth;
    return j;
}

ojson violations_json(const ValidationReport& r) {
    ojson arr = ojson::array();
    for (const Violation& v : r.violations) {
        ojson entry;
        entry["clause"] = v.clause;
        entry["witness"] = v.witness;
        arr.push_back(entry);
    }
    return arr;
}

ojson table_json(const ImpreciseProbability& ip) {
    ojson arr = ojson::array();
    const std::size_t total = std::size_t(1) << ip.ground.n;
    for (std::size_t a = 0; a < total; ++a) {
        ojson row;
        row["event"] = event_name(ip.ground, static_cast<EventSet>(a));
        row["lower"] = rat_to_string(ip.lower[a]);
        row["upper"] = rat_to_string(ip.upper[a]);
        arr.push_back(row);
    }
    return arr;
}

SetSystem system_from(const ProblemFile& p) {
    if (!p.system)
        throw ParseError("system: section required for this operation");
    return make_system(ground(p.n), *p.system);
}

PartialProbability measure_from(const ProblemFile& p) {
    if (!p.measure)
        throw ParseError("measure: section required for this operation");
    const GroundSet g = ground(p.n);
    std::vector<EventSet> events;
    std::map<EventSet, Rational> values;
    for (const auto& [e, v] : *p.measure) {
        events.push_back(e);
        values.emplace(e, v);
    }
    return {make_system(g, std::move(events)), std::move(values)};
}

ReferenceMeasure psi_from(const ProblemFile& p) {
    if (!p.psi) throw ParseError("psi: section required for this operation");
    return make_reference(ground(p.n), *p.psi);
}

ImpreciseProbability table_from(const ProblemFile& p) {
    const GroundSet g = ground(p.n);
    const std::size_t total = std::size_t(1) << g.n;
    ImpreciseProbability ip{g, std::vector<Rational>(total),
                            std::vector<Rational>(total)};
    for (const auto* side : {&p.lower, &p.upper}) {
        const bool low = side == &p.lower;
        const char* label = low ? "lower" : "upper";
        std::vector<char> seen(total, 0);
        for (const auto& [e, v] : **side) {
            seen[e] = 1;
            (low ? ip.lower : ip.upper)[e] = v;
        }
        for (std::size_t a = 0; a < total; ++a)
            if (!seen[a])
                throw ParseError(std::string(label) + ": missing event " +
                                 event_name(g, static_cast<EventSet>(a)));
    }
    return ip;
}

}  // namespace

ProblemFile parse_problem(const std::string& json_text) {
    ojson j;
    try {
        j = ojson::parse(json_text);
    } catch (const std::exception& ex) {
        throw ParseError(std::string("invalid json: ") + ex.what());
    }
    if (!j.is_object()) throw ParseError("top level: expected an object");
    static const std::vector<std::string> allowed = {
        "n",      "system", "measure", "psi",   "gambles", "gamma",
        "measures", "lower",  "upper",   "event", "cond",    "depth"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            fail(it.key(), "unknown field");
    if (!j.contains("n")) throw ParseError("n: missing");
    if (!j["n"].is_number_integer()) fail("n", "expected an integer");
    const long long nv = j["n"].get<long long>();
    if (nv < 1 || nv > 16) fail("n", "must be between 1 and 16");

    ProblemFile p;
    p.n = static_cast<int>(nv);
    const GroundSet g = ground(p.n);
    const std::size_t n = static_cast<std::size_t>(p.n);

    if (j.contains("system")) {
        const ojson& js = j["system"];
        if (!js.is_array()) fail("system", "expected an array of events");
        std::vector<EventSet> events;
        for (std::size_t i = 0; i < js.size(); ++i)
            events.push_back(parse_event_list(js[i], g, at("system", i)));
        p.system = std::move(events);
    }
    if (j.contains("measure"))
        p.measure = parse_assignments(j["measure"], g, "measure");
    if (j.contains("psi")) p.psi = parse_rational_list(j["psi"], n, "psi");
    if (j.contains("gambles")) {
        const ojson& jg = j["gambles"];
        if (!jg.is_array()) fail("gambles", "expected an array of gambles");
        std::vector<std::vector<Rational>> gambles;
        for (std::size_t i = 0; i < jg.size(); ++i)
            gambles.push_back(parse_rational_list(jg[i], n, at("gambles", i)));
        p.gambles = std::move(gambles);
    }
    if (j.contains("gamma")) {
        const ojson& jg = j["gamma"];
        if (!jg.is_array()) fail("gamma", "expected an array of breakpoints");
        std::vector<std::pair<Rational, Rational>> bps;
        for (std::size_t i = 0; i < jg.size(); ++i) {
            const auto pair = parse_rational_list(jg[i], 2, at("gamma", i));
            bps.emplace_back(pair[0], pair[1]);
        }
        p.gamma = std::move(bps);
    }
    if (j.contains("measures")) {
        const ojson& jm = j["measures"];
        if (!jm.is_array()) fail("measures", "expected an array of measures");
        std::vector<std::vector<Rational>> measures;
        for (std::size_t i = 0; i < jm.size(); ++i)
            measures.push_back(parse_rational_list(jm[i], n, at("measures", i)));
        p.measures = std::move(measures);
    }
    if (j.contains("lower")) p.lower = parse_assignments(j["lower"], g, "lower");
    if (j.contains("upper")) p.upper = parse_assignments(j["upper"], g, "upper");
    if (j.contains("event")) p.event = parse_event_list(j["event"], g, "event");
    if (j.contains("cond")) p.cond = parse_event_list(j["cond"], g, "cond");
    if (j.contains("depth")) {
        if (!j["depth"].is_number_integer()) fail("depth", "expected an integer");
        const long long d = j["depth"].get<long long>();
        if (d < 0) fail("depth", "must be nonnegative");
        if (d > 16) fail("depth", "must be at most 16");
        p.depth = static_cast<int>(d);
    }
    return p;
}

std::string problem_echo(const ProblemFile& p) {
    return echo_json(p).dump(2) + "\n";
}

std::string run_operation(const std::string& subcommand, const ProblemFile& file,
                          const RunFlags& flags) {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) ==
        kSubcommands.end())
        throw ParseError("unknown operation: " + subcommand);

    ProblemFile p = file;
    const GroundSet g = ground(p.n);
    if (flags.event) {
        try {
            p.event = event_from_name(g, *flags.event);
        } catch (const std::exception& ex) {
            fail("--event", ex.what());
        }
    }
    if (flags.cond) {
        try {
            p.cond = event_from_name(g, *flags.cond);
        } catch (const std::exception& ex) {
            fail("--cond", ex.what());
        }
    }
    if (flags.depth) {
        if (*flags.depth < 0) fail("--depth", "must be nonnegative");
        if (*flags.depth > 16) fail("--depth", "must be at most 16");
        p.depth = *flags.depth;
    }
    const int threads = flags.threads < 1 ? 1 : flags.threads;

    ojson result;
    if (subcommand == "hull") {
        result["events"] = names_of(pre_dynkin_hull(system_from(p)));
    } else if (subcommand == "blocks") {
        ojson arr = ojson::array();
        for (const SetSystem& b : blocks(system_from(p)))
            arr.push_back(names_of(b));
        result["blocks"] = arr;
    } else if (subcommand == "validate") {
        const ValidationReport rep = validate_measure(measure_from(p));
        result["valid"] = rep.valid();
        result["violations"] = violations_json(rep);
    } else if (subcommand == "extendable") {
        const auto [ok, witness] = is_extendable(measure_from(p));
        result["extendable"] = ok;
        result["witness"] = witness ? rats_json(*witness) : ojson(nullptr);
    } else if (subcommand == "extend") {
        const PartialProbability mu = measure_from(p);
        if (p.event) {
            const auto [lo, hi] = coherent_extension(mu, *p.event);
            result["event"] = event_name(g, *p.event);
            result["lower"] = rat_to_string(lo);
            result["upper"] = rat_to_string(hi);
        } else {
            result["table"] = table_json(coherent_extension_table(mu, threads));
        }
    } else if (subcommand == "inner-outer") {
        const ImpreciseProbability ip = inner_outer(measure_from(p));
        result["table"] = table_json(ip);
        const ValidationReport rep = check_ip_axioms(ip);
        ojson axioms;
        axioms["valid"] = rep.valid();
        axioms["violations"] = violations_json(rep);
        result["axioms"] = axioms;
    } else if (subcommand == "bayes") {
        const PartialProbability mu = measure_from(p);
        if (!p.event) throw ParseError("event: required for bayes");
        if (!p.cond) throw ParseError("cond: required for bayes");
        const auto [lo, hi] = gbr_conditional(mu, *p.event, *p.cond);
        result["event"] = event_name(g, *p.event);
        result["cond"] = event_name(g, *p.cond);
        result["lower"] = rat_to_string(lo);
        result["upper"] = rat_to_string(hi);
    } else if (subcommand == "precise-events") {
        ImpreciseProbability ip =
            (p.lower && p.upper)
                ? table_from(p)
                : coherent_extension_table(measure_from(p), threads);
        const auto [d, flag] = precise_events(ip);
        result["events"] = names_of(d);
        result["pre_dynkin"] = flag;
    } else if (subcommand == "bipolar") {
        const ReferenceMeasure psi = psi_from(p);
        const SetSystem a = system_from(p);
        const SetSystem closure = bipolar_closure(psi, a);
        result["closure"] = names_of(closure);
        result["bipolar_closed"] = closure == a;
    } else if (subcommand == "dual") {
        const ReferenceMeasure psi = psi_from(p);
        const SetSystem d =
            p.measures ? dual_credal_finite(psi, *p.measures)
                       : dual_credal(psi, credal(psi, system_from(p)), threads);
        result["events"] = names_of(d);
    } else if (subcommand == "galois-audit") {
        const ReferenceMeasure psi = psi_from(p);
        const SetSystem a = system_from(p);
        const CredalPolytope qa = credal(psi, a);
        const CredalPolytope qh = credal(psi, pre_dynkin_hull(a));
        const SetSystem closure = dual_credal(psi, qa, threads);
        const CredalPolytope qc = credal(psi, closure);
        bool extensive = true;
        for (EventSet e : a.events)
            if (!closure.contains(e)) extensive = false;
        bool measure_zero = true;
        for (EventSet e : closure.events) {
            if (psi.of_event(e) != 0) continue;
            for (EventSet b = e;; b = (b - 1) & e) {
                if (!closure.contains(b)) measure_zero = false;
                if (b == 0) break;
            }
            const EventSet comp = complement(g, e);
            for (EventSet s = e;; s = (s - 1) & e) {
                if (!closure.contains(comp | s)) measure_zero = false;
                if (s == 0) break;
            }
        }
        ojson laws;
        laws["hull-invariance"] =
            polytope_subset(qa, qh) && polytope_subset(qh, qa);
        laws["extensive"] = extensive;
        laws["pseudo-inverse"] =
            polytope_subset(qa, qc) && polytope_subset(qc, qa);
        laws["dual-pre-dynkin"] = is_pre_dynkin(closure);
        laws["measure-zero"] = measure_zero;
        laws["bipolar-closed"] = closure == a;
        result["laws"] = laws;
        result["closure"] = names_of(closure);
    } else if (subcommand == "distort") {
        const ReferenceMeasure psi = psi_from(p);
        if (!p.gamma)
            throw ParseError("gamma: section required for this operation");
        const PiecewiseLinearConcave gam = make_distortion(*p.gamma);
        const CredalPolytope q = distorted_credal(psi, gam);
        ojson ineqs = ojson::array();
        for (const auto& [e, bound] : q.inequalities) {
            ojson entry;
            entry["event"] = event_name(g, e);
            entry["bound"] = rat_to_string(bound);
            ineqs.push_back(entry);
        }
        result["inequalities"] = ineqs;
        result["dual"] = names_of(dual_credal(psi, q, threads));
    } else if (subcommand == "certainty") {
        result["events"] = names_of(certainty_system(psi_from(p)));
    } else if (subcommand == "prevision-from-measure") {
        const PartialExpectation e = from_measure(measure_from(p));
        ojson subs = ojson::array();
        for (const auto& sub : e.subspaces) {
            ojson entry;
            ojson basis = ojson::array();
            for (const auto& row : sub.basis) basis.push_back(rats_json(row));
            entry["basis"] = basis;
            entry["values"] = rats_json(sub.values);
            subs.push_back(entry);
        }
        result["subspaces"] = subs;
    } else if (subcommand == "prevision-extend") {
        const PartialProbability mu = measure_from(p);
        const PartialExpectation pe = from_measure(mu);
        Gamble f{g, {}};
        if (p.gambles && !p.gambles->empty()) {
            f.values = (*p.gambles)[0];
        } else if (p.event) {
            f = indicator(g, *p.event);
        } else {
            throw ParseError(
                "gambles/event: one of them required for this operation");
        }
        const auto [lo, hi] = natural_extension(pe, f);
        result["gamble"] = rats_json(f.values);
        result["lower"] = rat_to_string(lo);
        result["upper"] = rat_to_string(hi);
    } else if (subcommand == "precise-gambles") {
        CredalPolytope q{g, {}, {}, {}};
        if (p.measure) {
            const PartialProbability mu = measure_from(p);
            for (EventSet e : mu.domain.events)
                q.equalities.emplace_back(e, mu.at(e));
        } else {
            q = credal(psi_from(p), system_from(p));
        }
        const LinearSubspace s = precise_gambles(q);
        result["dimension"] = static_cast<int>(s.dimension());
        ojson basis = ojson::array();
        for (const auto& row : s.basis) basis.push_back(rats_json(row));
        result["basis"] = basis;
    } else if (subcommand == "falsify") {
        const PartialProbability mu = measure_from(p);
        const int depth = p.depth.value_or(4);
        result["extendable"] = is_extendable(mu).first;
        result["depth"] = depth;
        const auto family = horn_tarski_falsify(mu, depth);
        if (family) {
            ojson b = ojson::array(), a = ojson::array();
            for (EventSet e : family->first) b.push_back(event_name(g, e));
            for (EventSet e : family->second) a.push_back(event_name(g, e));
            ojson fals;
            fals["b"] = b;
            fals["a"] = a;
            result["falsifier"] = fals;
        } else {
            result["falsifier"] = ojson(nullptr);
        }
    }

    ojson doc;
    doc["operation"] = subcommand;
    doc["input"] = echo_json(p);
    doc["result"] = result;
    return doc.dump(2) + "\n";
}

}  // namespace credal
