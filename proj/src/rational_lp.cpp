#include "rational_lp.hpp"

#include <optional>

namespace toric {

namespace {

// Dense tableau: constraint rows, then the objective row last. The last
// column is the right-hand side. The objective row holds reduced profits;
// its rhs entry is minus the current objective value.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : t_(rows + 1, cols + 1), basis_(rows) {}

    Rational& at(std::size_t r, std::size_t c) { return t_(r, c); }
    Rational& rhs(std::size_t r) { return t_(r, cols()); }
    Rational& profit(std::size_t c) { return t_(rows(), c); }
    std::size_t rows() const { return t_.rows() - 1; }
    std::size_t cols() const { return t_.cols() - 1; }
    std::vector<std::size_t>& basis() { return basis_; }

    void set_objective(const RationalVector& c) {
        for (std::size_t j = 0; j <= cols(); ++j) profit(j) = j < c.size() ? c[j] : Rational(0);
        for (std::size_t i = 0; i < rows(); ++i) {
            Rational cb = basis_[i] < c.size() ? c[basis_[i]] : Rational(0);
            if (cb != 0) t_.add_row_multiple(rows(), i, Rational(-cb));
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / t_(r, c);
        for (std::size_t j = 0; j <= cols(); ++j) t_(r, j) *= inv;
        for (std::size_t i = 0; i <= rows(); ++i)
            if (i != r && t_(i, c) != 0) t_.add_row_multiple(i, r, Rational(-t_(i, c)));
        basis_[r] = c;
    }

    /// Runs Bland's-rule iterations over the columns [0, active). Returns
    /// false when the objective is unbounded.
    bool optimize(std::size_t active) {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < active; ++j)
                if (profit(j) > 0) {
                    enter = j;
                    break;
                }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (at(i, *enter) <= 0) continue;
                Rational ratio = rhs(i) / at(i, *enter);
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    }

private:
    RationalMatrix t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.constraints.size();

    // Columns: x+ (n), x- (n), one slack/surplus per inequality, one
    // artificial per row that has no natural basic column.
    std::size_t num_slack = 0;
    for (const auto& c : lp.constraints)
        if (c.relation != Relation::Equal) ++num_slack;

    struct RowPlan {
        Rational sign;
        Relation rel;
    };
    std::vector<RowPlan> plan(m);
    std::size_t num_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        if (c.coeffs.size() != n) throw std::invalid_argument("LP constraint has wrong width");
        Rational sign = c.rhs < 0 ? -1 : 1;
        Relation rel = c.relation;
        if (sign < 0 && rel != Relation::Equal)
            rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
        plan[i] = {sign, rel};
        if (rel != Relation::LessEqual) ++num_art;
    }

    const std::size_t slack0 = 2 * n;
    const std::size_t art0 = slack0 + num_slack;
    const std::size_t total = art0 + num_art;
    Tableau tab(m, total);

    std::size_t s = slack0, a = art0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        for (std::size_t j = 0; j < n; ++j) {
            tab.at(i, j) = plan[i].sign * c.coeffs[j];
            tab.at(i, n + j) = -plan[i].sign * c.coeffs[j];
        }
        tab.rhs(i) = plan[i].sign * c.rhs;
        if (plan[i].rel == Relation::LessEqual) {
            tab.at(i, s) = 1;
            tab.basis()[i] = s++;
        } else {
            if (plan[i].rel == Relation::GreaterEqual) tab.at(i, s++) = -1;
            tab.at(i, a) = 1;
            tab.basis()[i] = a++;
        }
    }

    LpResult result;
    if (num_art > 0) {
        RationalVector phase1(total, Rational(0));
        for (std::size_t j = art0; j < total; ++j) phase1[j] = -1;
        tab.set_objective(phase1);
        tab.optimize(total);
        if (tab.profit(total) != 0) return result;  // infeasible
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basis()[i] < art0) continue;
            for (std::size_t j = 0; j < art0; ++j)
                if (tab.at(i, j) != 0) {
                    tab.pivot(i, j);
                    break;
                }
        }
    }

    RationalVector phase2(total, Rational(0));
    for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j) {
        phase2[j] = lp.objective[j];
        phase2[n + j] = -lp.objective[j];
    }
    // Artificial columns stay out: they are excluded from entering and any
    // left in the basis sit on redundant all-zero rows.
    tab.set_objective(phase2);
    if (!tab.optimize(art0)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    result.status = LpStatus::Optimal;
    result.value = -tab.profit(total);
    result.point.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t b = tab.basis()[i];
        if (b < n) result.point[b] += tab.rhs(i);
        else if (b < 2 * n) result.point[b - n] -= tab.rhs(i);
    }
    return result;
}

}  // namespace toric
