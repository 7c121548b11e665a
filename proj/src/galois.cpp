#include "credal/galois.hpp"

#include <algorithm>
#include <utility>

#include "credal/errors.hpp"
#include "credal/parallel.hpp"

namespace credal {

namespace {

std::vector<Rational> indicator_row(GroundSet g, EventSet a) {
    std::vector<Rational> row(static_cast<std::size_t>(g.n), Rational(0));
    for (int i = 0; i < g.n; ++i)
        if (a >> i & 1u) row[i] = 1;
    return row;
}

std::pair<Rational, Rational> event_range(const LinearProgram& lp, GroundSet g,
                                          EventSet a) {
    const std::vector<Rational> obj = indicator_row(g, a);
    const LPOutcome lo = solve(lp, obj, Direction::Minimize);
    if (lo.status != LPOutcome::Status::Optimal)
        throw EmptyPolytope("credal polytope is empty");
    const LPOutcome hi = solve(lp, obj, Direction::Maximize);
    return {lo.value, hi.value};
}

}  // namespace

Rational ReferenceMeasure::of_event(EventSet a) const {
    Rational s(0);
    for (int i = 0; i < ground.n; ++i)
        if (a >> i & 1u) s += atom_mass[static_cast<std::size_t>(i)];
    return s;
}

ReferenceMeasure make_reference(GroundSet g, std::vector<Rational> atom_mass) {
    if (atom_mass.size() != static_cast<std::size_t>(g.n))
        throw Error("make_reference: expected one mass per element");
    Rational s(0);
    for (const Rational& m : atom_mass) {
        if (m < 0) throw Error("make_reference: negative atom mass");
        s += m;
    }
    if (s != 1) throw Error("make_reference: atom masses must sum to 1");
    return {g, std::move(atom_mass)};
}

LinearProgram polytope_lp(const CredalPolytope& q) {
    const std::size_t n = static_cast<std::size_t>(q.ground.n);
    LinearProgram lp = simplex_domain(n);
    for (const auto& [e, c] : q.equalities)
        lp.equalities.emplace_back(indicator_row(q.ground, e), c);
    for (const auto& [e, c] : q.inequalities)
        lp.inequalities.emplace_back(indicator_row(q.ground, e), c);
    for (const auto& [w, c] : q.gamble_equalities) {
        if (w.size() != n)
            throw Error("polytope_lp: gamble length mismatch");
        lp.equalities.emplace_back(w, c);
    }
    return lp;
}

bool PiecewiseLinearConcave::is_identity() const {
    for (const auto& [x, y] : breakpoints)
        if (x != y) return false;
    return true;
}

PiecewiseLinearConcave make_distortion(
    std::vector<std::pair<Rational, Rational>> breakpoints) {
    if (breakpoints.size() < 2)
        throw Error("make_distortion: need at least the two endpoints");
    if (breakpoints.front() != std::make_pair(Rational(0), Rational(0)) ||
        breakpoints.back() != std::make_pair(Rational(1), Rational(1)))
        throw Error("make_distortion: endpoints must be (0,0) and (1,1)");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (breakpoints[i - 1].first >= breakpoints[i].first)
            throw Error("make_distortion: x coordinates must strictly increase");
        if (breakpoints[i - 1].second > breakpoints[i].second)
            throw Error("make_distortion: function must be increasing");
    }
    for (std::size_t i = 2; i < breakpoints.size(); ++i) {
        const Rational rise0 = breakpoints[i - 1].second - breakpoints[i - 2].second;
        const Rational run0 = breakpoints[i - 1].first - breakpoints[i - 2].first;
        const Rational rise1 = breakpoints[i].second - breakpoints[i - 1].second;
        const Rational run1 = breakpoints[i].first - breakpoints[i - 1].first;
        if (rise0 * run1 < rise1 * run0)
            throw Error("make_distortion: slopes must be non-increasing");
    }
    return {std::move(breakpoints)};
}

Rational distortion_value(const PiecewiseLinearConcave& gamma,
                          const Rational& x) {
    if (x < 0 || x > 1)
        throw Error("distortion_value: argument outside [0,1]");
    const auto& bp = gamma.breakpoints;
    for (std::size_t i = 1; i < bp.size(); ++i) {
        if (x > bp[i].first) continue;
        const auto& [x0, y0] = bp[i - 1];
        const auto& [x1, y1] = bp[i];
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
    return bp.back().second;
}

CredalPolytope credal(const ReferenceMeasure& psi, const SetSystem& a) {
    if (a.ground != psi.ground)
        throw GroundMismatch("credal: system on a different ground set");
    CredalPolytope q{psi.ground, {}, {}, {}};
    for (EventSet e : a.events) q.equalities.emplace_back(e, psi.of_event(e));
    return q;
}

SetSystem dual_credal(const ReferenceMeasure& psi, const CredalPolytope& q,
                      int threads) {
    if (q.ground != psi.ground)
        throw GroundMismatch("dual_credal: polytope on a different ground set");
    const LinearProgram lp = polytope_lp(q);
    const std::vector<Rational> zero(lp.vars, Rational(0));
    if (solve(lp, zero, Direction::Minimize).status != LPOutcome::Status::Optimal)
        throw EmptyPolytope("dual_credal: credal polytope is empty");
    const std::size_t total = std::size_t(1) << psi.ground.n;
    std::vector<char> keep(total, 0);
    par::for_each_index(total, threads, [&](std::size_t a) {
        const EventSet e = static_cast<EventSet>(a);
        const auto [lo, hi] = event_range(lp, psi.ground, e);
        const Rational pe = psi.of_event(e);
        keep[a] = (lo == pe && hi == pe) ? 1 : 0;
    });
    std::vector<EventSet> events;
    for (std::size_t a = 0; a < total; ++a)
        if (keep[a]) events.push_back(static_cast<EventSet>(a));
    return make_system(psi.ground, std::move(events));
}

SetSystem dual_credal_finite(
    const ReferenceMeasure& psi,
    const std::vector<std::vector<Rational>>& measures) {
    const std::size_t n = static_cast<std::size_t>(psi.ground.n);
    for (const auto& nu : measures) {
        if (nu.size() != n)
            throw Error("dual_credal_finite: measure length mismatch");
        Rational s(0);
        for (const Rational& m : nu) {
            if (m < 0) throw Error("dual_credal_finite: negative mass");
            s += m;
        }
        if (s != 1) throw Error("dual_credal_finite: masses must sum to 1");
    }
    const std::size_t total = std::size_t(1) << psi.ground.n;
    std::vector<EventSet> events;
    for (std::size_t a = 0; a < total; ++a) {
        const EventSet e = static_cast<EventSet>(a);
        const Rational pe = psi.of_event(e);
        bool agree = true;
        for (const auto& nu : measures) {
            Rational s(0);
            for (int i = 0; i < psi.ground.n; ++i)
                if (e >> i & 1u) s += nu[static_cast<std::size_t>(i)];
            if (s != pe) {
                agree = false;
                break;
            }
        }
        if (agree) events.push_back(e);
    }
    return make_system(psi.ground, std::move(events));
}

SetSystem bipolar_closure(const ReferenceMeasure& psi, const SetSystem& a) {
    return dual_credal(psi, credal(psi, a));
}

bool is_bipolar_closed(const ReferenceMeasure& psi, const SetSystem& a) {
    return bipolar_closure(psi, a) == a;
}

bool polytope_subset(const CredalPolytope& p, const CredalPolytope& q) {
    if (p.ground != q.ground)
        throw GroundMismatch("polytope_subset: different ground sets");
    const LinearProgram lp = polytope_lp(p);
    const std::vector<Rational> zero(lp.vars, Rational(0));
    if (solve(lp, zero, Direction::Minimize).status != LPOutcome::Status::Optimal)
        return true;
    const auto range_of = [&](const std::vector<Rational>& w) {
        const LPOutcome lo = solve(lp, w, Direction::Minimize);
        const LPOutcome hi = solve(lp, w, Direction::Maximize);
        return std::make_pair(lo.value, hi.value);
    };
    for (const auto& [e, c] : q.equalities) {
        const auto [lo, hi] = range_of(indicator_row(q.ground, e));
        if (lo != c || hi != c) return false;
    }
    for (const auto& [e, c] : q.inequalities) {
        const LPOutcome hi =
            solve(lp, indicator_row(q.ground, e), Direction::Maximize);
        if (hi.value > c) return false;
    }
    for (const auto& [w, c] : q.gamble_equalities) {
        const auto [lo, hi] = range_of(w);
        if (lo != c || hi != c) return false;
    }
    return true;
}

CredalPolytope distorted_credal(const ReferenceMeasure& psi,
                                const PiecewiseLinearConcave& gamma) {
    CredalPolytope q{psi.ground, {}, {}, {}};
    const std::size_t total = std::size_t(1) << psi.ground.n;
    for (std::size_t a = 0; a < total; ++a) {
        const EventSet e = static_cast<EventSet>(a);
        q.inequalities.emplace_back(e, distortion_value(gamma, psi.of_event(e)));
    }
    return q;
}

SetSystem certainty_system(const ReferenceMeasure& psi) {
    const std::size_t total = std::size_t(1) << psi.ground.n;
    std::vector<EventSet> events;
    for (std::size_t a = 0; a < total; ++a) {
        const Rational m = psi.of_event(static_cast<EventSet>(a));
        if (m == 0 || m == 1) events.push_back(static_cast<EventSet>(a));
    }
    return make_system(psi.ground, std::move(events));
}

}  // namespace credal
