#include <algorithm>
#include <string>
#include <vector>

#include "credal/previsions.hpp"
#include "doctest.h"
#include "reference.hpp"

using namespace credal;

namespace {

const GroundSet g4 = ground(4);

EventSet ev(GroundSet g, const std::string& name) {
    return event_from_name(g, name);
}

PartialProbability running_mu() {
    const SetSystem d = make_system(
        g4, {0, ev(g4, "12"), ev(g4, "13"), ev(g4, "24"), ev(g4, "34"), 0b1111});
    return {d,
            {{0, rat(0)},
             {ev(g4, "12"), rat(1, 2)},
             {ev(g4, "13"), rat(1, 5)},
             {ev(g4, "24"), rat(4, 5)},
             {ev(g4, "34"), rat(1, 2)},
             {0b1111, rat(1)}}};
}

const GroundSet g5 = ground(5);

PartialProbability n5_fixture() {
    const SetSystem d =
        make_system(g5, {0, ev(g5, "13"), ev(g5, "23"), ev(g5, "124"),
                         ev(g5, "35"), ev(g5, "145"), ev(g5, "245"), 0b11111});
    return {d,
            {{0, rat(0)},
             {ev(g5, "13"), rat(1, 4)},
             {ev(g5, "23"), rat(1)},
             {ev(g5, "124"), rat(1, 4)},
             {ev(g5, "35"), rat(3, 4)},
             {ev(g5, "145"), rat(0)},
             {ev(g5, "245"), rat(3, 4)},
             {0b11111, rat(1)}}};
}

Gamble gam(GroundSet g, std::vector<Rational> v) { return {g, std::move(v)}; }

ReferenceMeasure psi0() {
    return make_reference(g4, {rat(1, 5), rat(3, 10), rat(1, 2), rat(0)});
}

CredalPolytope measure_polytope(const PartialProbability& mu) {
    CredalPolytope q{mu.domain.ground, {}, {}, {}};
    for (EventSet a : mu.domain.events) q.equalities.push_back({a, mu.at(a)});
    return q;
}

std::pair<Rational, Rational> polytope_range(const CredalPolytope& q,
                                             const std::vector<Rational>& f) {
    const LinearProgram lp = polytope_lp(q);
    return {solve(lp, f, Direction::Minimize).value,
            solve(lp, f, Direction::Maximize).value};
}

bool polytope_equal(const CredalPolytope& a, const CredalPolytope& b) {
    return polytope_subset(a, b) && polytope_subset(b, a);
}

PartialProbability random_extendable(ref::Rng& rng, int n) {
    const GroundSet g = ground(n);
    const SetSystem d = pre_dynkin_hull(
        make_system(g, ref::random_generators(rng, g, rng.uniform(1, 3))));
    const auto point = ref::random_point_with_zeros(rng, n);
    PartialProbability mu{d, {}};
    for (EventSet a : d.events) {
        Rational total(0);
        for (int i = 0; i < n; ++i)
            if (a >> i & 1u) total += point[static_cast<std::size_t>(i)];
        mu.values[a] = total;
    }
    return mu;
}

std::vector<Rational> random_gamble_values(ref::Rng& rng, int n) {
    std::vector<Rational> v;
    for (int i = 0; i < n; ++i) v.push_back(rat(rng.uniform(-6, 6), rng.uniform(1, 3)));
    return v;
}

}  // namespace

TEST_CASE("indicator gambles") {
    const Gamble chi = indicator(g4, ev(g4, "13"));
    CHECK(chi.values == std::vector<Rational>{rat(1), rat(0), rat(1), rat(0)});
    CHECK_THROWS_AS(indicator(g4, 0b10000), Error);
}

TEST_CASE("subspace construction and membership") {
    const LinearSubspace s = make_subspace(
        g4, {{rat(1), rat(1), rat(0), rat(0)}, {rat(2), rat(2), rat(0), rat(0)},
             {rat(0), rat(0), rat(1), rat(1)}});
    CHECK(s.dimension() == 2);
    CHECK(subspace_contains(s, {rat(3), rat(3), rat(-1), rat(-1)}));
    CHECK(!subspace_contains(s, {rat(1), rat(0), rat(0), rat(0)}));
    CHECK(subspace_contains(s, std::vector<Rational>(4, rat(1))));
    CHECK_THROWS_AS(make_subspace(g4, {{rat(1)}}), Error);

    // canonical bases make equality structural
    const LinearSubspace same = make_subspace(
        g4, {{rat(1), rat(1), rat(1), rat(1)}, {rat(1), rat(1), rat(-1), rat(-1)}});
    const LinearSubspace permuted = make_subspace(
        g4, {{rat(0), rat(0), rat(1), rat(1)}, {rat(2), rat(2), rat(0), rat(0)}});
    CHECK(same == permuted);
}

TEST_CASE("partial expectation from the running measure") {
    const PartialExpectation e = from_measure(running_mu());
    REQUIRE(e.subspaces.size() == 2);
    CHECK(e.subspaces[0].basis ==
          std::vector<std::vector<Rational>>{
              indicator(g4, ev(g4, "12")).values,
              indicator(g4, ev(g4, "34")).values});
    CHECK(e.subspaces[0].values == std::vector<Rational>{rat(1, 2), rat(1, 2)});
    CHECK(e.subspaces[1].basis ==
          std::vector<std::vector<Rational>>{
              indicator(g4, ev(g4, "13")).values,
              indicator(g4, ev(g4, "24")).values});
    CHECK(e.subspaces[1].values == std::vector<Rational>{rat(1, 5), rat(4, 5)});
}

TEST_CASE("partial expectation on the trivial and full domains") {
    PartialProbability triv{make_system(g4, {0, 0b1111}),
                            {{0, rat(0)}, {0b1111, rat(1)}}};
    const PartialExpectation et = from_measure(triv);
    REQUIRE(et.subspaces.size() == 1);
    CHECK(et.subspaces[0].basis ==
          std::vector<std::vector<Rational>>{std::vector<Rational>(4, rat(1))});
    CHECK(et.subspaces[0].values == std::vector<Rational>{rat(1)});

    const GroundSet g2 = ground(2);
    PartialProbability full{power_set(g2),
                            {{0, rat(0)},
                             {1, rat(1, 3)},
                             {2, rat(2, 3)},
                             {3, rat(1)}}};
    const PartialExpectation ef = from_measure(full);
    REQUIRE(ef.subspaces.size() == 1);
    CHECK(ef.subspaces[0].basis ==
          std::vector<std::vector<Rational>>{{rat(1), rat(0)}, {rat(0), rat(1)}});
    CHECK(ef.subspaces[0].values == std::vector<Rational>{rat(1, 3), rat(2, 3)});
}

TEST_CASE("evaluation inside and outside the domain") {
    const PartialExpectation e = from_measure(running_mu());
    CHECK(evaluate(e, gam(g4, {rat(2), rat(2), rat(0), rat(0)})) == rat(1));
    CHECK(evaluate(e, gam(g4, {rat(1), rat(1), rat(1), rat(1)})) == rat(1));
    CHECK(!evaluate(e, gam(g4, {rat(1), rat(0), rat(0), rat(0)})).has_value());
    CHECK_THROWS_AS(evaluate(e, gam(ground(3), {rat(1), rat(0), rat(0)})),
                    GroundMismatch);
}

TEST_CASE("validation passes on measure-induced expectations") {
    CHECK(validate_partial_expectation(from_measure(running_mu())).valid());
    CHECK(validate_partial_expectation(from_measure(n5_fixture())).valid());
}

TEST_CASE("cross-consistency violations are detected") {
    const std::vector<Rational> chi12 = indicator(g4, ev(g4, "12")).values;
    PartialExpectation e{g4,
                         {{{chi12}, {rat(1, 2)}}, {{chi12}, {rat(1, 3)}}}};
    const auto report = validate_partial_expectation(e);
    REQUIRE(!report.valid());
    CHECK(report.violations[0].clause == "cross-consistency");
}

TEST_CASE("coherence violations are detected") {
    PartialExpectation e{
        g4, {{{indicator(g4, ev(g4, "1")).values}, {rat(-1, 10)}}}};
    const auto report = validate_partial_expectation(e);
    REQUIRE(!report.valid());
    CHECK(report.violations[0].clause == "coherence");

    // constants present at the wrong value
    PartialExpectation bad_ones{
        g4, {{{std::vector<Rational>(4, rat(1))}, {rat(2)}}}};
    const auto ones_report = validate_partial_expectation(bad_ones);
    REQUIRE(!ones_report.valid());
    CHECK(ones_report.violations[0].clause == "coherence");
}

TEST_CASE("shape and basis violations are detected") {
    const std::vector<Rational> chi12 = indicator(g4, ev(g4, "12")).values;
    PartialExpectation shape{g4, {{{chi12}, {rat(1, 2), rat(1, 3)}}}};
    CHECK(validate_partial_expectation(shape).violations[0].clause == "shape");

    PartialExpectation dependent{
        g4, {{{chi12, chi12}, {rat(1, 2), rat(1, 2)}}}};
    CHECK(validate_partial_expectation(dependent).violations[0].clause ==
          "basis");
}

TEST_CASE("prevision extendability matches the measure level") {
    const auto [ok, witness] = is_extendable_prevision(from_measure(running_mu()));
    CHECK(ok);
    REQUIRE(witness.has_value());
    Rational total(0);
    for (const auto& x : *witness) {
        CHECK(x >= 0);
        total += x;
    }
    CHECK(total == 1);
    const PartialExpectation e = from_measure(running_mu());
    for (const auto& sub : e.subspaces)
        for (std::size_t j = 0; j < sub.basis.size(); ++j)
            CHECK(dot(sub.basis[j], *witness) == sub.values[j]);

    CHECK(!is_extendable_prevision(from_measure(n5_fixture())).first);

    PartialExpectation ones{g4, {{{std::vector<Rational>(4, rat(1))}, {rat(1)}}}};
    CHECK(is_extendable_prevision(ones).first);
}

TEST_CASE("violation search on both fixtures") {
    CHECK(!violation_search(from_measure(running_mu())).has_value());

    const PartialExpectation bad = from_measure(n5_fixture());
    const auto family = violation_search(bad);
    REQUIRE(family.has_value());
    std::vector<Rational> sum(5, rat(0));
    Rational total(0);
    for (const auto& [index, f] : *family) {
        REQUIRE(index < bad.subspaces.size());
        const auto value = evaluate(bad, f);
        REQUIRE(value.has_value());
        total += *value;
        for (std::size_t w = 0; w < 5; ++w) sum[w] += f.values[w];
    }
    for (const auto& x : sum) CHECK(x >= 0);
    CHECK(total < 0);
}

TEST_CASE("violation search degenerate inputs") {
    CHECK(!violation_search(PartialExpectation{g4, {}}).has_value());
    PartialExpectation ones{g4, {{{std::vector<Rational>(4, rat(1))}, {rat(1)}}}};
    CHECK(!violation_search(ones).has_value());

    const GroundSet g2 = ground(2);
    PartialProbability full{power_set(g2),
                            {{0, rat(0)}, {1, rat(1, 4)}, {2, rat(3, 4)}, {3, rat(1)}}};
    CHECK(!violation_search(from_measure(full)).has_value());
}

TEST_CASE("natural extension on the running example") {
    const PartialExpectation e = from_measure(running_mu());
    CHECK(natural_extension(e, indicator(g4, ev(g4, "1"))) ==
          std::pair<Rational, Rational>{rat(0), rat(1, 5)});
    CHECK(natural_extension(e, gam(g4, {rat(2), rat(2), rat(0), rat(0)})) ==
          std::pair<Rational, Rational>{rat(1), rat(1)});
    CHECK(natural_extension(e, gam(g4, {rat(1), rat(-1), rat(-1), rat(1)})) ==
          std::pair<Rational, Rational>{rat(-2, 5), rat(2, 5)});
    CHECK_THROWS_AS(
        natural_extension(from_measure(n5_fixture()), indicator(g5, 1)),
        NotExtendable);
}

TEST_CASE("natural extension restricted to indicators is the coherent table") {
    ref::Rng rng(401);
    for (int trial = 0; trial < 10; ++trial) {
        const PartialProbability mu = random_extendable(rng, rng.uniform(2, 4));
        const PartialExpectation e = from_measure(mu);
        const GroundSet g = mu.domain.ground;
        for (EventSet a = 0; a <= full_event(g); ++a)
            CHECK(natural_extension(e, indicator(g, a)) ==
                  coherent_extension(mu, a));
    }
}

TEST_CASE("natural-extension envelope laws on random gambles") {
    ref::Rng rng(402);
    const PartialExpectation e = from_measure(running_mu());
    const auto lower = [&](const Gamble& f) {
        return natural_extension(e, f).first;
    };
    const auto upper = [&](const Gamble& f) {
        return natural_extension(e, f).second;
    };
    CHECK(lower(gam(g4, std::vector<Rational>(4, rat(1)))) == 1);
    CHECK(upper(gam(g4, std::vector<Rational>(4, rat(1)))) == 1);
    for (int trial = 0; trial < 15; ++trial) {
        const Gamble f = gam(g4, random_gamble_values(rng, 4));
        const Gamble g = gam(g4, random_gamble_values(rng, 4));
        Gamble neg = f, sum = f;
        for (int i = 0; i < 4; ++i) {
            neg.values[static_cast<std::size_t>(i)] = -f.values[static_cast<std::size_t>(i)];
            sum.values[static_cast<std::size_t>(i)] += g.values[static_cast<std::size_t>(i)];
        }
        CHECK(upper(f) == -lower(neg));
        CHECK(lower(sum) >= lower(f) + lower(g));
        CHECK(upper(sum) <= upper(f) + upper(g));
        const Rational c = rat(rng.uniform(1, 5), rng.uniform(1, 3));
        Gamble scaled = f;
        for (auto& x : scaled.values) x *= c;
        CHECK(lower(scaled) == c * lower(f));
        CHECK(upper(scaled) == c * upper(f));
    }
}

TEST_CASE("precise gambles of the running credal polytope") {
    const LinearSubspace s = precise_gambles(measure_polytope(running_mu()));
    CHECK(s.dimension() == 3);
    CHECK(s.basis ==
          reduced_basis(nullspace({{rat(1), rat(-1), rat(-1), rat(1)}}, 4)));
    CHECK(subspace_contains(s, std::vector<Rational>(4, rat(1))));
}

TEST_CASE("precise gambles of extreme polytopes") {
    const ReferenceMeasure psi = psi0();
    CredalPolytope point{g4, {}, {}, {}};
    for (int i = 0; i < 4; ++i)
        point.equalities.push_back(
            {EventSet(1) << i, psi.atom_mass[static_cast<std::size_t>(i)]});
    CHECK(precise_gambles(point).dimension() == 4);

    CHECK(precise_gambles(CredalPolytope{g4, {}, {}, {}}) ==
          make_subspace(g4, {std::vector<Rational>(4, rat(1))}));

    CredalPolytope infeasible{g4, {}, {}, {}};
    infeasible.equalities.push_back({1, rat(1, 2)});
    infeasible.equalities.push_back({1, rat(1, 3)});
    CHECK_THROWS_AS(precise_gambles(infeasible), EmptyPolytope);
}

TEST_CASE("membership in the precise subspace decides bound collapse") {
    ref::Rng rng(403);
    for (int trial = 0; trial < 10; ++trial) {
        const PartialProbability mu = random_extendable(rng, rng.uniform(2, 4));
        const int n = mu.domain.ground.n;
        const CredalPolytope q = measure_polytope(mu);
        const LinearSubspace s = precise_gambles(q);
        for (const auto& f : s.basis) {
            const auto [lo, hi] = polytope_range(q, f);
            CHECK(lo == hi);
        }
        // complete the basis with standard vectors outside the subspace
        for (int i = 0; i < n; ++i) {
            std::vector<Rational> unit(static_cast<std::size_t>(n), rat(0));
            unit[static_cast<std::size_t>(i)] = rat(1);
            if (subspace_contains(s, unit)) continue;
            const auto [lo, hi] = polytope_range(q, unit);
            CHECK(lo < hi);
        }
        // closed under sampled rational combinations
        if (s.basis.size() >= 2) {
            std::vector<Rational> combo(static_cast<std::size_t>(n), rat(0));
            const Rational c1 = rat(rng.uniform(-3, 3), rng.uniform(1, 2));
            const Rational c2 = rat(rng.uniform(-3, 3), rng.uniform(1, 2));
            for (std::size_t w = 0; w < static_cast<std::size_t>(n); ++w)
                combo[w] = c1 * s.basis[0][w] + c2 * s.basis[1][w];
            CHECK(subspace_contains(s, combo));
        }
    }
}

TEST_CASE("generalized credal polytopes") {
    const ReferenceMeasure psi = psi0();
    const Gamble chi12 = indicator(g4, ev(g4, "12"));
    CHECK(polytope_equal(generalized_credal(psi, {chi12}),
                         credal::credal(psi, make_system(g4, {ev(g4, "12")}))));
    CHECK(generalized_credal(psi, {}).equalities.empty());
    CHECK(generalized_credal(psi, {}).gamble_equalities.empty());

    std::vector<Gamble> basis;
    for (int i = 0; i < 4; ++i) {
        std::vector<Rational> v(4, rat(0));
        v[static_cast<std::size_t>(i)] = rat(1);
        basis.push_back(gam(g4, v));
    }
    CredalPolytope point{g4, {}, {}, {}};
    for (int i = 0; i < 4; ++i)
        point.equalities.push_back(
            {EventSet(1) << i, psi.atom_mass[static_cast<std::size_t>(i)]});
    CHECK(polytope_equal(generalized_credal(psi, basis), point));
}

TEST_CASE("generalized dual credal subspaces") {
    const ReferenceMeasure psi = psi0();
    CredalPolytope point{g4, {}, {}, {}};
    for (int i = 0; i < 4; ++i)
        point.equalities.push_back(
            {EventSet(1) << i, psi.atom_mass[static_cast<std::size_t>(i)]});
    CHECK(generalized_dual_credal(psi, point).dimension() == 4);

    CHECK(generalized_dual_credal(psi, CredalPolytope{g4, {}, {}, {}}) ==
          make_subspace(g4, {std::vector<Rational>(4, rat(1))}));

    // {nu : nu1 + nu2 = 1/2} has directions (1,-1,0,0) and (0,0,1,-1)
    const Gamble chi12 = indicator(g4, ev(g4, "12"));
    const LinearSubspace dual =
        generalized_dual_credal(psi, generalized_credal(psi, {chi12}));
    CHECK(dual == make_subspace(g4, nullspace({{rat(1), rat(-1), rat(0), rat(0)},
                                               {rat(0), rat(0), rat(1), rat(-1)}},
                                              4)));
    CHECK(dual.dimension() == 2);
    CHECK(subspace_contains(dual, chi12.values));
}

TEST_CASE("generalized dual credal over finite measure lists") {
    const ReferenceMeasure psi = psi0();
    CHECK(generalized_dual_credal(psi, {psi.atom_mass}).dimension() == 4);
    const LinearSubspace s =
        generalized_dual_credal(psi, {{rat(0), rat(1, 2), rat(0), rat(1, 2)}});
    // orthogonal complement of the single direction nu - psi
    CHECK(s == make_subspace(
                   g4, nullspace({{rat(-1, 5), rat(1, 5), rat(-1, 2), rat(1, 2)}},
                                 4)));
    CHECK_THROWS_AS(
        generalized_dual_credal(psi, std::vector<std::vector<Rational>>{}),
        EmptyPolytope);
    CHECK_THROWS_AS(
        generalized_dual_credal(psi, {{rat(1), rat(1), rat(0), rat(0)}}), Error);
}

TEST_CASE("generalized dual equals precise gambles when psi is inside") {
    ref::Rng rng(404);
    for (int trial = 0; trial < 12; ++trial) {
        const GroundSet g = ground(rng.uniform(2, 4));
        const ReferenceMeasure psi =
            make_reference(g, ref::random_point_with_zeros(rng, g.n));
        std::vector<Gamble> gs;
        for (int i = rng.uniform(0, 2); i > 0; --i)
            gs.push_back(gam(g, random_gamble_values(rng, g.n)));
        const CredalPolytope q = generalized_credal(psi, gs);
        CHECK(generalized_dual_credal(psi, q) == precise_gambles(q));
    }
}

TEST_CASE("generalized galois laws") {
    ref::Rng rng(405);
    for (int trial = 0; trial < 15; ++trial) {
        const GroundSet g = ground(rng.uniform(2, 4));
        const ReferenceMeasure psi =
            make_reference(g, trial % 3 == 0
                                  ? ref::random_point_with_zeros(rng, g.n)
                                  : ref::random_positive_point(rng, g.n));
        std::vector<Gamble> g1;
        for (int i = rng.uniform(0, 2); i > 0; --i)
            g1.push_back(gam(g, random_gamble_values(rng, g.n)));
        std::vector<Gamble> g2 = g1;
        g2.push_back(gam(g, random_gamble_values(rng, g.n)));

        // antitone
        CHECK(polytope_subset(generalized_credal(psi, g2),
                              generalized_credal(psi, g1)));

        // extensive: the gambles land in the dual subspace
        const CredalPolytope q1 = generalized_credal(psi, g1);
        const LinearSubspace dual = generalized_dual_credal(psi, q1);
        for (const auto& f : g1) CHECK(subspace_contains(dual, f.values));

        // pseudo-inverse: m(G) = m(m°(m(G)))
        std::vector<Gamble> dual_gambles;
        for (const auto& row : dual.basis) dual_gambles.push_back(gam(g, row));
        const CredalPolytope back = generalized_credal(psi, dual_gambles);
        CHECK(polytope_equal(q1, back));
        CHECK(generalized_dual_credal(psi, back) == dual);
    }
}

TEST_CASE("dual subspace restricted to indicators recovers the event dual") {
    ref::Rng rng(406);
    for (int trial = 0; trial < 10; ++trial) {
        const GroundSet g = ground(rng.uniform(2, 4));
        const ReferenceMeasure psi =
            make_reference(g, ref::random_point_with_zeros(rng, g.n));
        const SetSystem a = make_system(g, ref::random_generators(rng, g, 2));
        std::vector<Gamble> chis;
        for (EventSet e : a.events) chis.push_back(indicator(g, e));
        CHECK(polytope_equal(generalized_credal(psi, chis), credal::credal(psi, a)));

        const CredalPolytope q = credal::credal(psi, a);
        const LinearSubspace dual = generalized_dual_credal(psi, q);
        const SetSystem event_dual = dual_credal(psi, q);
        for (EventSet e = 0; e <= full_event(g); ++e)
            CHECK(subspace_contains(dual, indicator(g, e).values) ==
                  event_dual.contains(e));
    }
}

TEST_CASE("subspace lattice against the credal map") {
    ref::Rng rng(407);
    for (int trial = 0; trial < 10; ++trial) {
        const GroundSet g = ground(rng.uniform(2, 4));
        const std::size_t n = static_cast<std::size_t>(g.n);
        const ReferenceMeasure psi =
            make_reference(g, ref::random_positive_point(rng, g.n));
        std::vector<std::vector<Rational>> b1, b2;
        for (int i = rng.uniform(1, 2); i > 0; --i)
            b1.push_back(random_gamble_values(rng, g.n));
        for (int i = rng.uniform(1, 2); i > 0; --i)
            b2.push_back(random_gamble_values(rng, g.n));
        const LinearSubspace l1 = make_subspace(g, b1);
        const LinearSubspace l2 = make_subspace(g, b2);

        std::vector<std::vector<Rational>> stacked = l1.basis;
        stacked.insert(stacked.end(), l2.basis.begin(), l2.basis.end());
        const LinearSubspace join = make_subspace(g, stacked);
        CHECK(join.dimension() >= l1.dimension());
        CHECK(join.dimension() >= l2.dimension());

        std::vector<std::vector<Rational>> annihilators =
            nullspace(l1.basis, n);
        const auto ann2 = nullspace(l2.basis, n);
        annihilators.insert(annihilators.end(), ann2.begin(), ann2.end());
        const LinearSubspace meet{g, nullspace(annihilators, n)};
        for (const auto& v : meet.basis) {
            CHECK(subspace_contains(l1, v));
            CHECK(subspace_contains(l2, v));
        }

        // m(join) = m(L1) cap m(L2)
        const auto to_gambles = [&](const LinearSubspace& s) {
            std::vector<Gamble> gs;
            for (const auto& row : s.basis) gs.push_back(gam(g, row));
            return gs;
        };
        CredalPolytope cap = generalized_credal(psi, to_gambles(l1));
        const CredalPolytope q2 = generalized_credal(psi, to_gambles(l2));
        cap.gamble_equalities.insert(cap.gamble_equalities.end(),
                                     q2.gamble_equalities.begin(),
                                     q2.gamble_equalities.end());
        CHECK(polytope_equal(generalized_credal(psi, to_gambles(join)), cap));
    }
}
