#include "credal/previsions.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "credal/errors.hpp"

namespace credal {

namespace {

std::vector<Rational> indicator_row(GroundSet g, EventSet a) {
    std::vector<Rational> row(static_cast<std::size_t>(g.n), Rational(0));
    for (int i = 0; i < g.n; ++i)
        if (a >> i & 1u) row[i] = 1;
    return row;
}

// Coefficients c with sum_j c_j rows_j = target, or nullopt; free
// coefficients are set to zero.
std::optional<std::vector<Rational>> solve_combination(
    const std::vector<std::vector<Rational>>& rows,
    const std::vector<Rational>& target) {
    const std::size_t k = rows.size();
    const std::size_t n = target.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = rows[j][i];
        m[i][k] = target[i];
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c <= k && r < n; ++c) {
        std::size_t sel = r;
        while (sel < n && m[sel][c] == 0) ++sel;
        if (sel == n) continue;
        std::swap(m[r], m[sel]);
        const Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j <= k; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational factor = m[i][c];
            for (std::size_t j = c; j <= k; ++j) m[i][j] -= factor * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;
    std::vector<Rational> coeff(k, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) coeff[pivots[i]] = m[i][k];
    return coeff;
}

std::string gamble_text(const std::vector<Rational>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(v[i]);
    }
    return s + ")";
}

LinearProgram prevision_lp(const PartialExpectation& e) {
    const std::size_t n = static_cast<std::size_t>(e.ground.n);
    LinearProgram lp = simplex_domain(n);
    for (const auto& sub : e.subspaces)
        for (std::size_t j = 0; j < sub.basis.size(); ++j)
            lp.equalities.emplace_back(sub.basis[j], sub.values[j]);
    return lp;
}

}  // namespace

Gamble indicator(GroundSet g, EventSet a) {
    if (a > full_event(g))
        throw Error("indicator: event outside the ground set");
    return {g, indicator_row(g, a)};
}

LinearSubspace make_subspace(GroundSet g,
                             std::vector<std::vector<Rational>> spanning) {
    for (const auto& row : spanning)
        if (row.size() != static_cast<std::size_t>(g.n))
            throw Error("make_subspace: gamble length mismatch");
    return {g, reduced_basis(spanning)};
}

bool subspace_contains(const LinearSubspace& s,
                       const std::vector<Rational>& v) {
    if (v.size() != static_cast<std::size_t>(s.ground.n))
        throw Error("subspace_contains: gamble length mismatch");
    std::vector<Rational> residual = v;
    for (const auto& row : s.basis) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        if (pivot == row.size()) continue;
        const Rational factor = residual[pivot] / row[pivot];
        if (factor == 0) continue;
        for (std::size_t j = 0; j < row.size(); ++j)
            residual[j] -= factor * row[j];
    }
    return std::all_of(residual.begin(), residual.end(),
                       [](const Rational& x) { return x == 0; });
}

PartialExpectation from_measure(const PartialProbability& mu) {
    const GroundSet g = mu.domain.ground;
    PartialExpectation e{g, {}};
    for (const SetSystem& block : blocks(mu.domain)) {
        PartialExpectation::Subspace sub;
        for (EventSet a : block.events) {
            if (a == 0) continue;
            bool minimal = true;
            for (EventSet b : block.events)
                if (b != 0 && b != a && (a & b) == b) {
                    minimal = false;
                    break;
                }
            if (!minimal) continue;
            sub.basis.push_back(indicator_row(g, a));
            sub.values.push_back(mu.at(a));
        }
        e.subspaces.push_back(std::move(sub));
    }
    return e;
}

std::optional<Rational> evaluate(const PartialExpectation& e, const Gamble& f) {
    if (f.ground != e.ground)
        throw GroundMismatch("evaluate: gamble on a different ground set");
    for (const auto& sub : e.subspaces) {
        const auto coeff = solve_combination(sub.basis, f.values);
        if (!coeff) continue;
        Rational v(0);
        for (std::size_t j = 0; j < sub.values.size(); ++j)
            v += (*coeff)[j] * sub.values[j];
        return v;
    }
    return std::nullopt;
}

ValidationReport validate_partial_expectation(const PartialExpectation& e) {
    ValidationReport report;
    const std::size_t n = static_cast<std::size_t>(e.ground.n);
    std::vector<char> usable(e.subspaces.size(), 1);
    for (std::size_t i = 0; i < e.subspaces.size(); ++i) {
        const auto& sub = e.subspaces[i];
        bool shaped = sub.values.size() == sub.basis.size();
        for (const auto& row : sub.basis)
            if (row.size() != n) shaped = false;
        if (!shaped) {
            report.violations.push_back({"shape", "subspace " + std::to_string(i)});
            usable[i] = 0;
            continue;
        }
        if (reduced_basis(sub.basis).size() != sub.basis.size()) {
            report.violations.push_back({"basis", "subspace " + std::to_string(i)});
            usable[i] = 0;
        }
    }

    std::vector<std::vector<std::vector<Rational>>> annihilators(
        e.subspaces.size());
    for (std::size_t i = 0; i < e.subspaces.size(); ++i)
        if (usable[i]) annihilators[i] = nullspace(e.subspaces[i].basis, n);

    const auto value_of = [&](std::size_t i, const std::vector<Rational>& v)
        -> std::optional<Rational> {
        const auto coeff = solve_combination(e.subspaces[i].basis, v);
        if (!coeff) return std::nullopt;
        Rational s(0);
        for (std::size_t j = 0; j < coeff->size(); ++j)
            s += (*coeff)[j] * e.subspaces[i].values[j];
        return s;
    };

    for (std::size_t i = 0; i < e.subspaces.size(); ++i) {
        if (!usable[i]) continue;
        for (std::size_t j = i + 1; j < e.subspaces.size(); ++j) {
            if (!usable[j]) continue;
            std::vector<std::vector<Rational>> stacked = annihilators[i];
            stacked.insert(stacked.end(), annihilators[j].begin(),
                           annihilators[j].end());
            for (const auto& v : nullspace(stacked, n)) {
                const auto vi = value_of(i, v);
                const auto vj = value_of(j, v);
                if (vi && vj && *vi != *vj) {
                    report.violations.push_back(
                        {"cross-consistency", "subspaces " + std::to_string(i) +
                                                  "," + std::to_string(j) +
                                                  " at " + gamble_text(v)});
                    break;
                }
            }
        }
    }

    const std::vector<Rational> ones(n, Rational(1));
    for (std::size_t i = 0; i < e.subspaces.size(); ++i) {
        if (!usable[i]) continue;
        std::vector<std::vector<Rational>> basis = e.subspaces[i].basis;
        std::vector<Rational> values = e.subspaces[i].values;
        const LinearSubspace span{e.ground, reduced_basis(basis)};
        bool augmented = false;
        if (subspace_contains(span, ones)) {
            const auto ev = value_of(i, ones);
            if (!ev || *ev != 1) {
                report.violations.push_back(
                    {"coherence", "subspace " + std::to_string(i) +
                                      ": constant gamble " + gamble_text(ones) +
                                      " expects " +
                                      (ev ? rat_to_string(*ev) : "nothing")});
                continue;
            }
        } else {
            basis.push_back(ones);
            values.push_back(Rational(1));
            augmented = true;
        }
        const std::size_t k = basis.size();
        if (k == 0) continue;
        LinearProgram lp;
        lp.vars = k;
        lp.nonneg.assign(k, false);
        for (std::size_t w = 0; w < n; ++w) {
            std::vector<Rational> row(k);
            for (std::size_t j = 0; j < k; ++j) row[j] = -basis[j][w];
            lp.inequalities.emplace_back(std::move(row), Rational(0));
        }
        std::vector<Rational> mass(k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t w = 0; w < n; ++w) mass[j] += basis[j][w];
        lp.equalities.emplace_back(std::move(mass), Rational(1));
        const LPOutcome out = solve(lp, values, Direction::Minimize);
        if (out.status != LPOutcome::Status::Optimal || out.value >= 0)
            continue;
        // peel off the adjoined constant part: h = f - t*1 stays in the
        // subspace and inherits the violation E(h) < inf h
        std::vector<Rational> h(n, Rational(0));
        Rational eh(0);
        const std::size_t own = augmented ? k - 1 : k;
        for (std::size_t j = 0; j < own; ++j) {
            eh += out.point[j] * e.subspaces[i].values[j];
            for (std::size_t w = 0; w < n; ++w)
                h[w] += out.point[j] * e.subspaces[i].basis[j][w];
        }
        Rational inf_h = h.empty() ? Rational(0) : h[0];
        for (const Rational& x : h) inf_h = std::min(inf_h, x);
        report.violations.push_back(
            {"coherence", "subspace " + std::to_string(i) + ": E" +
                              gamble_text(h) + " = " + rat_to_string(eh) +
                              " < " + rat_to_string(inf_h)});
    }
    return report;
}

std::pair<bool, std::optional<std::vector<Rational>>> is_extendable_prevision(
    const PartialExpectation& e) {
    const LinearProgram lp = prevision_lp(e);
    const std::vector<Rational> zero(lp.vars, Rational(0));
    const LPOutcome out = solve(lp, zero, Direction::Minimize);
    if (out.status == LPOutcome::Status::Optimal) return {true, out.point};
    return {false, std::nullopt};
}

std::optional<std::vector<std::pair<std::size_t, Gamble>>> violation_search(
    const PartialExpectation& e) {
    const std::size_t n = static_cast<std::size_t>(e.ground.n);
    std::vector<std::size_t> offset(e.subspaces.size() + 1, 0);
    for (std::size_t i = 0; i < e.subspaces.size(); ++i)
        offset[i + 1] = offset[i] + e.subspaces[i].basis.size();
    const std::size_t total = offset.back();
    if (total == 0) return std::nullopt;

    std::vector<Rational> cost(total, Rational(0));
    for (std::size_t i = 0; i < e.subspaces.size(); ++i)
        for (std::size_t j = 0; j < e.subspaces[i].basis.size(); ++j)
            cost[offset[i] + j] = e.subspaces[i].values[j];

    LinearProgram lp;
    lp.vars = total;
    lp.nonneg.assign(total, false);
    for (std::size_t w = 0; w < n; ++w) {
        std::vector<Rational> row(total, Rational(0));
        for (std::size_t i = 0; i < e.subspaces.size(); ++i)
            for (std::size_t j = 0; j < e.subspaces[i].basis.size(); ++j)
                row[offset[i] + j] = -e.subspaces[i].basis[j][w];
        lp.inequalities.emplace_back(std::move(row), Rational(0));
    }
    std::vector<Rational> norm(total);
    for (std::size_t j = 0; j < total; ++j) norm[j] = -cost[j];
    lp.inequalities.emplace_back(std::move(norm), Rational(1));

    const LPOutcome out = solve(lp, cost, Direction::Minimize);
    if (out.status != LPOutcome::Status::Optimal || out.value >= 0)
        return std::nullopt;
    std::vector<std::pair<std::size_t, Gamble>> family;
    for (std::size_t i = 0; i < e.subspaces.size(); ++i) {
        std::vector<Rational> f(n, Rational(0));
        for (std::size_t j = 0; j < e.subspaces[i].basis.size(); ++j)
            for (std::size_t w = 0; w < n; ++w)
                f[w] += out.point[offset[i] + j] * e.subspaces[i].basis[j][w];
        family.emplace_back(i, Gamble{e.ground, std::move(f)});
    }
    return family;
}

std::pair<Rational, Rational> natural_extension(const PartialExpectation& e,
                                                const Gamble& f) {
    if (f.ground != e.ground)
        throw GroundMismatch("natural_extension: gamble on a different ground set");
    const LinearProgram lp = prevision_lp(e);
    const LPOutcome lo = solve(lp, f.values, Direction::Minimize);
    if (lo.status != LPOutcome::Status::Optimal)
        throw NotExtendable("natural_extension: partial expectation is not extendable");
    const LPOutcome hi = solve(lp, f.values, Direction::Maximize);
    return {lo.value, hi.value};
}

LinearSubspace precise_gambles(const CredalPolytope& q) {
    const std::size_t n = static_cast<std::size_t>(q.ground.n);
    const LinearProgram lp = polytope_lp(q);
    const std::vector<Rational> zero(n, Rational(0));
    const LPOutcome anchor = solve(lp, zero, Direction::Minimize);
    if (anchor.status != LPOutcome::Status::Optimal)
        throw EmptyPolytope("precise_gambles: credal polytope is empty");
    const auto dirs = affine_directions(lp, anchor.point);
    return make_subspace(q.ground, nullspace(dirs, n));
}

CredalPolytope generalized_credal(const ReferenceMeasure& psi,
                                  const std::vector<Gamble>& gambles) {
    CredalPolytope q{psi.ground, {}, {}, {}};
    for (const Gamble& g : gambles) {
        if (g.ground != psi.ground)
            throw GroundMismatch("generalized_credal: gamble on a different ground set");
        q.gamble_equalities.emplace_back(g.values,
                                         dot(psi.atom_mass, g.values));
    }
    return q;
}

LinearSubspace generalized_dual_credal(const ReferenceMeasure& psi,
                                       const CredalPolytope& q) {
    if (q.ground != psi.ground)
        throw GroundMismatch("generalized_dual_credal: different ground sets");
    const std::size_t n = static_cast<std::size_t>(psi.ground.n);
    const LinearProgram lp = polytope_lp(q);
    const std::vector<Rational> zero(n, Rational(0));
    const LPOutcome anchor = solve(lp, zero, Direction::Minimize);
    if (anchor.status != LPOutcome::Status::Optimal)
        throw EmptyPolytope("generalized_dual_credal: credal polytope is empty");
    std::vector<std::vector<Rational>> rows = affine_directions(lp, anchor.point);
    std::vector<Rational> shift(n);
    for (std::size_t i = 0; i < n; ++i)
        shift[i] = anchor.point[i] - psi.atom_mass[i];
    rows.push_back(std::move(shift));
    return make_subspace(psi.ground, nullspace(reduced_basis(rows), n));
}

LinearSubspace generalized_dual_credal(
    const ReferenceMeasure& psi,
    const std::vector<std::vector<Rational>>& measures) {
    if (measures.empty())
        throw EmptyPolytope("generalized_dual_credal: no measures given");
    const std::size_t n = static_cast<std::size_t>(psi.ground.n);
    std::vector<std::vector<Rational>> rows;
    for (const auto& nu : measures) {
        if (nu.size() != n)
            throw Error("generalized_dual_credal: measure length mismatch");
        Rational s(0);
        for (const Rational& m : nu) {
            if (m < 0) throw Error("generalized_dual_credal: negative mass");
            s += m;
        }
        if (s != 1)
            throw Error("generalized_dual_credal: masses must sum to 1");
        std::vector<Rational> shift(n);
        for (std::size_t i = 0; i < n; ++i) shift[i] = nu[i] - psi.atom_mass[i];
        rows.push_back(std::move(shift));
    }
    return make_subspace(psi.ground, nullspace(reduced_basis(rows), n));
}

}  // namespace credal
