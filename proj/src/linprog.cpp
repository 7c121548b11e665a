#include "credal/linprog.hpp"

#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

namespace credal {

namespace {

constexpr std::size_t kNoCol = std::numeric_limits<std::size_t>::max();

// Constraint rows in basis-reduced form: basic columns form an identity,
// b stays nonnegative across simplex pivots.
struct Tableau {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::vector<std::size_t> basis;
};

void pivot(Tableau& t, std::size_t row, std::size_t col) {
    const std::size_t cols = t.a[row].size();
    const Rational p = t.a[row][col];
    for (std::size_t j = 0; j < cols; ++j) t.a[row][j] /= p;
    t.b[row] /= p;
    for (std::size_t i = 0; i < t.a.size(); ++i) {
        if (i == row || t.a[i][col] == 0) continue;
        const Rational f = t.a[i][col];
        for (std::size_t j = 0; j < cols; ++j)
            if (t.a[row][j] != 0) t.a[i][j] -= f * t.a[row][j];
        t.b[i] -= f * t.b[row];
    }
    t.basis[row] = col;
}

// Minimizes cost over the current basis. Bland's rule on both the entering
// and the leaving choice guarantees termination. False means unbounded.
bool simplex_min(Tableau& t, const std::vector<Rational>& cost) {
    const std::size_t m = t.a.size();
    const std::size_t cols = cost.size();
    std::vector<bool> in_basis(cols, false);
    for (std::size_t c : t.basis) in_basis[c] = true;
    for (;;) {
        std::size_t enter = kNoCol;
        for (std::size_t j = 0; j < cols && enter == kNoCol; ++j) {
            if (in_basis[j]) continue;
            Rational rc = cost[j];
            for (std::size_t i = 0; i < m; ++i) {
                const Rational& cb = cost[t.basis[i]];
                if (cb != 0 && t.a[i][j] != 0) rc -= cb * t.a[i][j];
            }
            if (rc < 0) enter = j;
        }
        if (enter == kNoCol) return true;
        std::size_t leave = kNoCol;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.a[i][enter] > 0) {
                Rational ratio = t.b[i] / t.a[i][enter];
                if (leave == kNoCol || ratio < best ||
                    (ratio == best && t.basis[i] < t.basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave == kNoCol) return false;
        in_basis[t.basis[leave]] = false;
        in_basis[enter] = true;
        pivot(t, leave, enter);
    }
}

bool var_nonneg(const LinearProgram& lp, std::size_t j) {
    return lp.nonneg.empty() || lp.nonneg[j];
}

}  // namespace

std::size_t size_cap() {
    if (const char* env = std::getenv("CREDAL_SIZE_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(1) << 16;
}

LinearProgram simplex_domain(std::size_t n) {
    LinearProgram lp;
    lp.vars = n;
    lp.equalities.emplace_back(std::vector<Rational>(n, Rational(1)),
                               Rational(1));
    return lp;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw Error("dot: length mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

bool is_feasible_point(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (x.size() != lp.vars) return false;
    for (std::size_t j = 0; j < lp.vars; ++j)
        if (var_nonneg(lp, j) && x[j] < 0) return false;
    for (const auto& [row, rhs] : lp.equalities)
        if (dot(row, x) != rhs) return false;
    for (const auto& [row, rhs] : lp.inequalities)
        if (dot(row, x) > rhs) return false;
    return true;
}

LPOutcome solve(const LinearProgram& lp, const std::vector<Rational>& objective,
                Direction direction) {
    const std::size_t n = lp.vars;
    if (objective.size() != n) throw Error("solve: objective length mismatch");
    if (!lp.nonneg.empty() && lp.nonneg.size() != n)
        throw Error("solve: nonneg flags length mismatch");
    const std::size_t m = lp.equalities.size() + lp.inequalities.size();
    if (n > size_cap() || m > size_cap())
        throw SizeLimitExceeded("linear program exceeds the size cap (" +
                                std::to_string(size_cap()) + ")");
    for (const auto& [row, rhs] : lp.equalities)
        if (row.size() != n) throw Error("solve: equality row length mismatch");
    for (const auto& [row, rhs] : lp.inequalities)
        if (row.size() != n) throw Error("solve: inequality row length mismatch");

    // Columns: one per variable, a negated twin per free variable, one
    // slack per inequality; artificials appended afterwards.
    std::vector<std::size_t> neg_col(n, kNoCol);
    std::size_t cols = n;
    for (std::size_t j = 0; j < n; ++j)
        if (!var_nonneg(lp, j)) neg_col[j] = cols++;
    const std::size_t slack0 = cols;
    cols += lp.inequalities.size();

    Tableau t;
    t.a.assign(m, std::vector<Rational>(cols, Rational(0)));
    t.b.assign(m, Rational(0));
    std::size_t r = 0;
    auto fill_structural = [&](const std::vector<Rational>& row) {
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] == 0) continue;
            t.a[r][j] = row[j];
            if (neg_col[j] != kNoCol) t.a[r][neg_col[j]] = -row[j];
        }
    };
    for (const auto& [row, rhs] : lp.equalities) {
        fill_structural(row);
        t.b[r] = rhs;
        ++r;
    }
    for (std::size_t k = 0; k < lp.inequalities.size(); ++k) {
        fill_structural(lp.inequalities[k].first);
        t.a[r][slack0 + k] = 1;
        t.b[r] = lp.inequalities[k].second;
        ++r;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (t.b[i] < 0) {
            for (auto& v : t.a[i]) v = -v;
            t.b[i] = -t.b[i];
        }
    }

    // Initial basis: the slack where it survived sign normalization with a
    // +1 coefficient, an artificial everywhere else.
    t.basis.assign(m, kNoCol);
    std::vector<std::size_t> art_rows;
    for (std::size_t i = 0; i < m; ++i) {
        if (i >= lp.equalities.size()) {
            const std::size_t sc = slack0 + (i - lp.equalities.size());
            if (t.a[i][sc] == 1) {
                t.basis[i] = sc;
                continue;
            }
        }
        art_rows.push_back(i);
    }
    const std::size_t art0 = cols;
    if (!art_rows.empty()) {
        cols += art_rows.size();
        for (auto& row : t.a) row.resize(cols, Rational(0));
        for (std::size_t k = 0; k < art_rows.size(); ++k) {
            t.a[art_rows[k]][art0 + k] = 1;
            t.basis[art_rows[k]] = art0 + k;
        }
        std::vector<Rational> phase1(cols, Rational(0));
        for (std::size_t k = 0; k < art_rows.size(); ++k)
            phase1[art0 + k] = 1;
        simplex_min(t, phase1);  // bounded below by zero, always terminates
        Rational residue(0);
        for (std::size_t i = 0; i < t.a.size(); ++i)
            if (t.basis[i] >= art0) residue += t.b[i];
        if (residue != 0) {
            LPOutcome out;
            out.status = LPOutcome::Status::Infeasible;
            return out;
        }
        // Artificials still basic sit at zero; pivot them out on any real
        // column, or drop the row as redundant.
        for (std::size_t i = 0; i < t.a.size();) {
            if (t.basis[i] >= art0) {
                std::size_t piv = kNoCol;
                for (std::size_t j = 0; j < art0 && piv == kNoCol; ++j)
                    if (t.a[i][j] != 0) piv = j;
                if (piv == kNoCol) {
                    t.a.erase(t.a.begin() + i);
                    t.b.erase(t.b.begin() + i);
                    t.basis.erase(t.basis.begin() + i);
                    continue;
                }
                pivot(t, i, piv);
            }
            ++i;
        }
        for (auto& row : t.a) row.resize(art0);
        cols = art0;
    }

    std::vector<Rational> cost(cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        Rational cj = objective[j];
        if (direction == Direction::Maximize) cj = -cj;
        cost[j] = cj;
        if (neg_col[j] != kNoCol) cost[neg_col[j]] = -cj;
    }
    LPOutcome out;
    if (!simplex_min(t, cost)) {
        out.status = LPOutcome::Status::Unbounded;
        return out;
    }
    std::vector<Rational> colval(cols, Rational(0));
    for (std::size_t i = 0; i < t.a.size(); ++i) colval[t.basis[i]] = t.b[i];
    out.point.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        out.point[j] = colval[j];
        if (neg_col[j] != kNoCol) out.point[j] -= colval[neg_col[j]];
    }
    out.value = dot(objective, out.point);
    out.status = LPOutcome::Status::Optimal;
    return out;
}

std::vector<std::vector<Rational>> reduced_basis(
    std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    for (const auto& row : rows)
        if (row.size() != cols) throw Error("reduced_basis: ragged rows");
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = kNoCol;
        for (std::size_t i = r; i < rows.size() && p == kNoCol; ++i)
            if (rows[i][c] != 0) p = i;
        if (p == kNoCol) continue;
        std::swap(rows[r], rows[p]);
        const Rational lead = rows[r][c];
        for (auto& v : rows[r]) v /= lead;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

std::vector<std::vector<Rational>> nullspace(
    const std::vector<std::vector<Rational>>& rows, std::size_t dim) {
    for (const auto& row : rows)
        if (row.size() != dim) throw Error("nullspace: row length mismatch");
    const auto red = reduced_basis(rows);
    std::vector<std::size_t> piv_col(red.size(), kNoCol);
    std::vector<bool> is_piv(dim, false);
    for (std::size_t i = 0; i < red.size(); ++i) {
        for (std::size_t c = 0; c < dim; ++c) {
            if (red[i][c] != 0) {
                piv_col[i] = c;
                is_piv[c] = true;
                break;
            }
        }
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t fc = 0; fc < dim; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<Rational> v(dim, Rational(0));
        v[fc] = 1;
        for (std::size_t i = 0; i < red.size(); ++i)
            v[piv_col[i]] = -red[i][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Rational>> affine_directions(
    const LinearProgram& p, const std::vector<Rational>& anchor) {
    if (!is_feasible_point(p, anchor))
        throw InfeasibleAnchor("affine_directions: anchor is not feasible");
    std::vector<std::vector<Rational>> dirs;
    for (;;) {
        const auto comp = nullspace(dirs, p.vars);
        bool grew = false;
        for (const auto& c : comp) {
            const Rational base = dot(c, anchor);
            for (Direction d : {Direction::Maximize, Direction::Minimize}) {
                const LPOutcome out = solve(p, c, d);
                if (out.status == LPOutcome::Status::Unbounded)
                    throw Error("affine_directions: feasible set is unbounded");
                if (out.status != LPOutcome::Status::Optimal)
                    throw Error("affine_directions: feasible set vanished");
                if (out.value != base) {
                    std::vector<Rational> dir(p.vars);
                    for (std::size_t j = 0; j < p.vars; ++j)
                        dir[j] = out.point[j] - anchor[j];
                    dirs.push_back(std::move(dir));
                    dirs = reduced_basis(std::move(dirs));
                    grew = true;
                    break;
                }
            }
            if (grew) break;
        }
        if (!grew) return dirs;
    }
}

}  // namespace credal
