/**
 * Exact rational linear programming.
 *
 * Dense two-phase tableau simplex over BigRational with Bland's rule on
 * every pivot. Infeasible problems come back with a Farkas witness
 * y >= 0, y^T A = 0, y^T b < 0 which the solver checks before returning.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "reflex/exact.hpp"

namespace reflex {

/** <a, x> <= b */
struct Constraint
{
    RatVector a;
    BigRational b;
};

enum class Sense { minimize, maximize };

struct LinearProgram
{
    std::size_t dim = 0;
    std::vector<Constraint> constraints;
    RatVector objective;   // empty means the zero functional
    Sense sense = Sense::maximize;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult
{
    LpStatus status = LpStatus::infeasible;
    BigRational value;
    RatVector point;    // optimal point, when status == optimal
    RatVector farkas;   // one multiplier per constraint, when status == infeasible
    std::size_t pivots = 0;
};

/** Raised when a solve exceeds its pivot budget. Bland's rule makes this a bug signal. */
class PivotLimitError : public std::runtime_error
{
    public:
        explicit PivotLimitError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t default_pivot_limit = 100000;

namespace detail {

struct StandardResult
{
    LpStatus status;
    RatVector z;
    BigRational value;
    std::size_t pivots = 0;
};

/**
 * min c^T z subject to A z = b, z >= 0.
 */
class Tableau
{
    public:
        Tableau(const RatMatrix& a, const RatVector& b, std::size_t pivot_limit)
            : m_(a.rows()), n_(a.cols()), limit_(pivot_limit)
        {
            // Rows with negative rhs are negated; each row then gets an
            // artificial unless some column is already the matching unit vector.
            std::vector<std::vector<BigRational>> rows(m_, std::vector<BigRational>(n_));
            rhs_.assign(m_, BigRational(0));
            for (std::size_t i = 0; i < m_; ++i) {
                bool flip = b[i] < 0;
                for (std::size_t j = 0; j < n_; ++j)
                    rows[i][j] = flip ? BigRational(-a(i, j)) : a(i, j);
                rhs_[i] = flip ? BigRational(-b[i]) : b[i];
            }
            basis_.assign(m_, SIZE_MAX);
            std::vector<bool> used(n_, false);
            for (std::size_t j = 0; j < n_; ++j) {
                std::size_t hit = SIZE_MAX;
                bool unit = true;
                for (std::size_t i = 0; i < m_ && unit; ++i) {
                    if (rows[i][j] == 0)
                        continue;
                    if (rows[i][j] == 1 && hit == SIZE_MAX)
                        hit = i;
                    else
                        unit = false;
                }
                if (unit && hit != SIZE_MAX && basis_[hit] == SIZE_MAX) {
                    basis_[hit] = j;
                    used[j] = true;
                }
            }
            cols_ = n_;
            for (std::size_t i = 0; i < m_; ++i)
                if (basis_[i] == SIZE_MAX)
                    basis_[i] = cols_++;
            t_.assign(m_, std::vector<BigRational>(cols_, BigRational(0)));
            for (std::size_t i = 0; i < m_; ++i) {
                for (std::size_t j = 0; j < n_; ++j)
                    t_[i][j] = rows[i][j];
                if (basis_[i] >= n_)
                    t_[i][basis_[i]] = 1;
            }
        }

        StandardResult solve(const RatVector& c)
        {
            StandardResult res;
            // phase one: minimize the artificial sum
            if (cols_ > n_) {
                std::vector<BigRational> c1(cols_, BigRational(0));
                for (std::size_t j = n_; j < cols_; ++j)
                    c1[j] = 1;
                load_objective(c1);
                LpStatus st = run(cols_);
                (void)st;
                if (-obj_rhs_ > 0) {
                    res.status = LpStatus::infeasible;
                    res.pivots = pivots_;
                    return res;
                }
                drive_out_artificials();
            }
            std::vector<BigRational> c2(cols_, BigRational(0));
            for (std::size_t j = 0; j < n_; ++j)
                c2[j] = c.empty() ? BigRational(0) : c[j];
            load_objective(c2);
            LpStatus st = run(n_);
            res.status = st;
            res.pivots = pivots_;
            if (st == LpStatus::optimal) {
                res.z.assign(n_, BigRational(0));
                for (std::size_t i = 0; i < m_; ++i)
                    if (basis_[i] < n_)
                        res.z[basis_[i]] = rhs_[i];
                res.value = -obj_rhs_;
            }
            return res;
        }

    private:
        void load_objective(const std::vector<BigRational>& c)
        {
            obj_ = c;
            obj_rhs_ = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                const BigRational cb = c[basis_[i]];
                if (cb == 0)
                    continue;
                for (std::size_t j = 0; j < cols_; ++j)
                    obj_[j] -= cb * t_[i][j];
                obj_rhs_ -= cb * rhs_[i];
            }
        }

        void pivot(std::size_t r, std::size_t col)
        {
            if (++pivots_ > limit_)
                throw PivotLimitError("simplex exceeded " + std::to_string(limit_) + " pivots");
            BigRational inv = 1 / t_[r][col];
            for (auto& x : t_[r])
                x *= inv;
            rhs_[r] *= inv;
            for (std::size_t i = 0; i < m_; ++i) {
                if (i == r || t_[i][col] == 0)
                    continue;
                BigRational f = t_[i][col];
                for (std::size_t j = 0; j < cols_; ++j)
                    if (t_[r][j] != 0)
                        t_[i][j] -= f * t_[r][j];
                rhs_[i] -= f * rhs_[r];
            }
            if (obj_[col] != 0) {
                BigRational f = obj_[col];
                for (std::size_t j = 0; j < cols_; ++j)
                    if (t_[r][j] != 0)
                        obj_[j] -= f * t_[r][j];
                obj_rhs_ -= f * rhs_[r];
            }
            basis_[r] = col;
        }

        // Bland: lowest-index improving column, ties in the ratio test by lowest basic index.
        LpStatus run(std::size_t enterable)
        {
            while (true) {
                std::size_t enter = SIZE_MAX;
                for (std::size_t j = 0; j < enterable; ++j)
                    if (obj_[j] < 0) {
                        enter = j;
                        break;
                    }
                if (enter == SIZE_MAX)
                    return LpStatus::optimal;
                std::size_t leave = SIZE_MAX;
                BigRational best;
                for (std::size_t i = 0; i < m_; ++i) {
                    if (t_[i][enter] <= 0)
                        continue;
                    BigRational ratio = rhs_[i] / t_[i][enter];
                    if (leave == SIZE_MAX || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
                if (leave == SIZE_MAX)
                    return LpStatus::unbounded;
                pivot(leave, enter);
            }
        }

        void drive_out_artificials()
        {
            for (std::size_t i = 0; i < m_; ++i) {
                if (basis_[i] < n_)
                    continue;
                for (std::size_t j = 0; j < n_; ++j)
                    if (t_[i][j] != 0) {
                        pivot(i, j);
                        break;
                    }
                // a row with no structural entry is redundant; its artificial stays at zero
            }
        }

        std::size_t m_, n_, cols_ = 0, limit_, pivots_ = 0;
        std::vector<std::vector<BigRational>> t_;
        std::vector<BigRational> rhs_;
        std::vector<std::size_t> basis_;
        std::vector<BigRational> obj_;
        BigRational obj_rhs_;
};

inline StandardResult solve_standard(const RatMatrix& a, const RatVector& b, const RatVector& c,
                                     std::size_t pivot_limit)
{
    Tableau t(a, b, pivot_limit);
    return t.solve(c);
}

/** y >= 0 with y^T A = 0 and y^T b = -1, for an infeasible system A x <= b. */
inline RatVector farkas_witness(const std::vector<Constraint>& cons, std::size_t dim, std::size_t pivot_limit)
{
    const std::size_t m = cons.size();
    RatMatrix a(dim + 1, m);
    RatVector b(dim + 1, BigRational(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < dim; ++j)
            a(j, i) = cons[i].a[j];
        a(dim, i) = cons[i].b;
    }
    b[dim] = -1;
    auto r = solve_standard(a, b, {}, pivot_limit);
    if (r.status != LpStatus::optimal)
        throw std::logic_error("farkas_witness: no certificate for an infeasible system");
    return r.z;
}

} // namespace detail

/**
 * Solves an LP over free variables x in Q^dim. An empty objective is the
 * zero functional, so the result is then any feasible point.
 */
inline LpResult solve(const LinearProgram& lp, std::size_t pivot_limit = default_pivot_limit)
{
    const std::size_t n = lp.dim, m = lp.constraints.size();
    for (const auto& c : lp.constraints)
        if (c.a.size() != n)
            throw DimensionError("solve: constraint length does not match dim");
    if (!lp.objective.empty() && lp.objective.size() != n)
        throw DimensionError("solve: objective length does not match dim");

    // columns: x+ (n), x- (n), slack (m)
    RatMatrix a(m, 2 * n + m);
    RatVector b(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = lp.constraints[i].a[j];
            a(i, n + j) = -lp.constraints[i].a[j];
        }
        a(i, 2 * n + i) = 1;
        b[i] = lp.constraints[i].b;
    }
    RatVector c;
    if (!lp.objective.empty()) {
        c.assign(2 * n + m, BigRational(0));
        for (std::size_t j = 0; j < n; ++j) {
            BigRational cj = lp.sense == Sense::minimize ? lp.objective[j] : BigRational(-lp.objective[j]);
            c[j] = cj;
            c[n + j] = -cj;
        }
    }
    auto r = detail::solve_standard(a, b, c, pivot_limit);

    LpResult out;
    out.status = r.status;
    out.pivots = r.pivots;
    if (r.status == LpStatus::optimal) {
        out.point.assign(n, BigRational(0));
        for (std::size_t j = 0; j < n; ++j)
            out.point[j] = r.z[j] - r.z[n + j];
        out.value = lp.objective.empty() ? BigRational(0) : dot(lp.objective, out.point);
    } else if (r.status == LpStatus::infeasible) {
        out.farkas = detail::farkas_witness(lp.constraints, n, pivot_limit);
    }
    return out;
}

/**
 * Any exact point with <a,x> <= b for each inequality and <a,x> = b for each
 * equality, or nullopt when the system is infeasible. Which feasible point
 * comes back is unspecified.
 */
inline std::optional<RatVector> feasible_point(std::size_t dim, const std::vector<Constraint>& inequalities,
                                               const std::vector<Constraint>& equalities = {})
{
    LinearProgram lp;
    lp.dim = dim;
    lp.constraints = inequalities;
    for (const auto& e : equalities) {
        lp.constraints.push_back(e);
        RatVector neg(e.a.size());
        for (std::size_t j = 0; j < e.a.size(); ++j)
            neg[j] = -e.a[j];
        lp.constraints.push_back({neg, -e.b});
    }
    auto r = solve(lp);
    if (r.status != LpStatus::optimal)
        return std::nullopt;
    return r.point;
}

} // namespace reflex
