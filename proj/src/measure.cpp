#include "credal/measure.hpp"

#include <algorithm>
#include <string>

#include "credal/parallel.hpp"

namespace credal {

namespace {

std::vector<Rational> indicator_row(GroundSet g, EventSet a) {
    std::vector<Rational> row(static_cast<std::size_t>(g.n), Rational(0));
    for (int i = 0; i < g.n; ++i)
        if (a >> i & 1u) row[i] = 1;
    return row;
}

std::string pair_witness(GroundSet g, EventSet a, EventSet b) {
    return event_name(g, a) + "," + event_name(g, b);
}

// Combinations with repetition over indices 0..count-1, in ascending
// lexicographic order; calls fn on each selection, stops once fn says so.
template <typename Fn>
bool for_each_multiset(std::size_t count, int size, Fn&& fn) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(size), 0);
    for (;;) {
        if (fn(pick)) return true;
        int i = size - 1;
        while (i >= 0 && pick[i] == count - 1) --i;
        if (i < 0) return false;
        const std::size_t next = pick[i] + 1;
        for (int j = i; j < size; ++j) pick[j] = next;
    }
}

}  // namespace

const Rational& PartialProbability::at(EventSet a) const {
    const auto it = values.find(a);
    if (it == values.end())
        throw MembershipError("measure undefined on " +
                              event_name(domain.ground, a));
    return it->second;
}

ValidationReport validate_measure(const PartialProbability& mu) {
    ValidationReport report;
    const GroundSet g = mu.domain.ground;
    if (!is_pre_dynkin(mu.domain))
        report.violations.push_back({"domain", "domain is not pre-Dynkin"});
    for (EventSet a : mu.domain.events)
        if (!mu.values.count(a))
            report.violations.push_back({"coverage", event_name(g, a)});
    for (const auto& [a, v] : mu.values)
        if (!mu.domain.contains(a))
            report.violations.push_back(
                {"coverage", "value outside domain: " + event_name(g, a)});
    if (!report.violations.empty()) return report;

    if (mu.at(0) != 0)
        report.violations.push_back({"normalization", "mu({})"});
    if (mu.at(full_event(g)) != 1)
        report.violations.push_back({"normalization", "mu(Omega)"});
    for (const auto& [a, v] : mu.values)
        if (v < 0 || v > 1)
            report.violations.push_back({"range", event_name(g, a)});
    for (EventSet b : mu.domain.events)
        for (EventSet a : mu.domain.events) {
            if (a >= b) break;
            if ((a & b) != 0 || !mu.domain.contains(a | b)) continue;
            if (mu.at(a | b) != mu.at(a) + mu.at(b))
                report.violations.push_back(
                    {"additivity", pair_witness(g, a, b) + "," +
                                       event_name(g, a | b)});
        }
    return report;
}

ImpreciseProbability inner_outer(const PartialProbability& mu) {
    const GroundSet g = mu.domain.ground;
    const std::size_t total = std::size_t(1) << g.n;
    ImpreciseProbability ip{g, std::vector<Rational>(total),
                            std::vector<Rational>(total)};
    for (std::size_t a = 0; a < total; ++a) {
        bool low_set = false, up_set = false;
        for (EventSet e : mu.domain.events) {
            const Rational& v = mu.at(e);
            if ((e & a) == e && (!low_set || v > ip.lower[a])) {
                ip.lower[a] = v;
                low_set = true;
            }
            if ((e & a) == a && (!up_set || v < ip.upper[a])) {
                ip.upper[a] = v;
                up_set = true;
            }
        }
        // the empty set and Omega are always available
        if (!low_set || !up_set)
            throw Error("inner_outer: domain misses {} or Omega");
    }
    return ip;
}

LinearProgram credal_lp(const PartialProbability& mu) {
    const GroundSet g = mu.domain.ground;
    LinearProgram lp = simplex_domain(static_cast<std::size_t>(g.n));
    for (EventSet a : mu.domain.events)
        lp.equalities.emplace_back(indicator_row(g, a), mu.at(a));
    return lp;
}

std::pair<bool, std::optional<std::vector<Rational>>> is_extendable(
    const PartialProbability& mu) {
    const LinearProgram lp = credal_lp(mu);
    const std::vector<Rational> zero(lp.vars, Rational(0));
    const LPOutcome out = solve(lp, zero, Direction::Minimize);
    if (out.status == LPOutcome::Status::Optimal) return {true, out.point};
    return {false, std::nullopt};
}

std::optional<std::pair<std::vector<EventSet>, std::vector<EventSet>>>
horn_tarski_falsify(const PartialProbability& mu, int depth) {
    if (depth < 0) throw Error("horn_tarski_falsify: negative depth");
    const GroundSet g = mu.domain.ground;
    const std::vector<EventSet>& evs = mu.domain.events;
    if (evs.empty()) return std::nullopt;

    // families counted as multisets; quadratic-in-depth powers of |D| bound
    // the enumeration, guard against explosion
    double estimate = 0;
    for (int total = 1; total <= depth; ++total) {
        double combos = 1;
        for (int i = 0; i < total; ++i) combos *= static_cast<double>(evs.size());
        estimate += combos * (total + 1);
    }
    if (estimate > 5e8)
        throw SizeLimitExceeded("horn_tarski_falsify: search space too large");

    std::optional<std::pair<std::vector<EventSet>, std::vector<EventSet>>> hit;
    for (int total = 1; total <= depth && !hit; ++total) {
        for (int m = 1; m <= total && !hit; ++m) {
            const int q = total - m;
            for_each_multiset(evs.size(), m, [&](const std::vector<std::size_t>& bp) {
                std::vector<int> count(static_cast<std::size_t>(g.n), 0);
                Rational gap(0);
                for (std::size_t bi : bp) {
                    for (int w = 0; w < g.n; ++w)
                        if (evs[bi] >> w & 1u) ++count[w];
                    gap += mu.at(evs[bi]);
                }
                const bool done = for_each_multiset(
                    evs.size(), q, [&](const std::vector<std::size_t>& ap) {
                        Rational total_gap = gap;
                        std::vector<int> need(static_cast<std::size_t>(g.n), 0);
                        for (std::size_t ai : ap) {
                            for (int w = 0; w < g.n; ++w)
                                if (evs[ai] >> w & 1u) ++need[w];
                            total_gap -= mu.at(evs[ai]);
                        }
                        for (int w = 0; w < g.n; ++w)
                            if (count[w] < need[w]) return false;
                        if (total_gap >= 0) return false;
                        std::vector<EventSet> bs, as;
                        for (std::size_t bi : bp) bs.push_back(evs[bi]);
                        for (std::size_t ai : ap) as.push_back(evs[ai]);
                        hit = std::make_pair(std::move(bs), std::move(as));
                        return true;
                    });
                return done;
            });
        }
    }
    return hit;
}

std::pair<Rational, Rational> coherent_extension(const PartialProbability& mu,
                                                 EventSet a) {
    const GroundSet g = mu.domain.ground;
    if (a > full_event(g))
        throw Error("coherent_extension: event outside the ground set");
    const LinearProgram lp = credal_lp(mu);
    const std::vector<Rational> obj = indicator_row(g, a);
    const LPOutcome lo = solve(lp, obj, Direction::Minimize);
    if (lo.status != LPOutcome::Status::Optimal)
        throw NotExtendable("coherent_extension: measure is not extendable");
    const LPOutcome hi = solve(lp, obj, Direction::Maximize);
    return {lo.value, hi.value};
}

ImpreciseProbability coherent_extension_table(const PartialProbability& mu,
                                              int threads) {
    const GroundSet g = mu.domain.ground;
    if (!is_extendable(mu).first)
        throw NotExtendable("coherent_extension_table: measure is not extendable");
    const std::size_t total = std::size_t(1) << g.n;
    ImpreciseProbability ip{g, std::vector<Rational>(total),
                            std::vector<Rational>(total)};
    const LinearProgram lp = credal_lp(mu);
    par::for_each_index(total, threads, [&](std::size_t a) {
        const std::vector<Rational> obj =
            indicator_row(g, static_cast<EventSet>(a));
        ip.lower[a] = solve(lp, obj, Direction::Minimize).value;
        ip.upper[a] = solve(lp, obj, Direction::Maximize).value;
    });
    return ip;
}

std::pair<SetSystem, bool> precise_events(const ImpreciseProbability& ip) {
    const std::size_t total = std::size_t(1) << ip.ground.n;
    if (ip.lower.size() != total || ip.upper.size() != total)
        throw Error("precise_events: table size mismatch");
    std::vector<EventSet> events;
    for (std::size_t a = 0; a < total; ++a)
        if (ip.lower[a] == ip.upper[a]) events.push_back(static_cast<EventSet>(a));
    SetSystem d = make_system(ip.ground, std::move(events));
    const bool flag = is_pre_dynkin(d);
    return {std::move(d), flag};
}

ValidationReport check_ip_axioms(const ImpreciseProbability& ip) {
    const GroundSet g = ip.ground;
    const std::size_t total = std::size_t(1) << g.n;
    if (ip.lower.size() != total || ip.upper.size() != total)
        throw Error("check_ip_axioms: table size mismatch");
    ValidationReport report;
    if (ip.upper[0] != 0 || ip.lower[0] != 0)
        report.violations.push_back({"normalization", "{}"});
    const EventSet om = full_event(g);
    for (EventSet a = 0;; ++a) {
        if (ip.upper[a] != 1 - ip.lower[om ^ a]) {
            report.violations.push_back({"conjugacy", pair_witness(g, a, om ^ a)});
            break;
        }
        if (a == om) break;
    }
    bool sub_done = false, super_done = false;
    for (EventSet a = 0; a <= om && !(sub_done && super_done); ++a) {
        for (EventSet b = 0; b <= a; ++b) {
            if ((a & b) != 0) continue;
            const EventSet u = a | b;
            if (!sub_done && ip.upper[u] > ip.upper[a] + ip.upper[b]) {
                report.violations.push_back(
                    {"subadditivity-upper", pair_witness(g, b, a)});
                sub_done = true;
            }
            if (!super_done && ip.lower[u] < ip.lower[a] + ip.lower[b]) {
                report.violations.push_back(
                    {"superadditivity-lower", pair_witness(g, b, a)});
                super_done = true;
            }
            if (a == om) break;
        }
        if (a == om) break;
    }
    return report;
}

std::pair<Rational, Rational> gbr_conditional(const PartialProbability& mu,
                                              EventSet a, EventSet b) {
    const GroundSet g = mu.domain.ground;
    if (a > full_event(g))
        throw Error("gbr_conditional: event outside the ground set");
    if (!mu.domain.contains(b))
        throw ConditioningError("gbr_conditional: conditioning event not in domain");
    const Rational& pb = mu.at(b);
    if (pb == 0)
        throw ConditioningError("gbr_conditional: conditioning event has measure zero");
    const auto [lo, hi] = coherent_extension(mu, a & b);
    return {lo / pb, hi / pb};
}

}  // namespace credal
