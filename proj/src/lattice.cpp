#include "lattice.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace toric {

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(std::vector<Integer> orders) {
    // Diagonal matrix of the orders; its SNF yields the invariant factors.
    IntegerMatrix d(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] <= 0) throw std::invalid_argument("cyclic orders must be positive");
        d(i, i) = orders[i];
    }
    FiniteAbelianGroup g;
    for (const auto& f : smith_normal_form(d).nonzero_diagonal())
        if (f != 1) g.factors_.push_back(f);
    return g;
}

Integer FiniteAbelianGroup::order() const {
    Integer n = 1;
    for (const auto& f : factors_) n *= f;
    return n;
}

std::string FiniteAbelianGroup::to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& f : factors_) {
        if (!out.empty()) out += " x ";
        out += "Z/" + f.get_str();
    }
    return out;
}

std::vector<Integer> SmithDecomposition::nonzero_diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        if (D(i, i) != 0) out.push_back(D(i, i));
    return out;
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntegerMatrix& d,
                                                                  std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            Integer a = abs(d(i, j));
            if (!best || a < best_abs) {
                best = {i, j};
                best_abs = a;
            }
        }
    return best;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
    SmithDecomposition s{IntegerMatrix::identity(m.rows()), m, IntegerMatrix::identity(m.cols())};
    IntegerMatrix& d = s.D;
    const std::size_t steps = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            auto pivot = smallest_entry(d, t);
            if (!pivot) return s;
            d.swap_rows(t, pivot->first);
            s.U.swap_rows(t, pivot->first);
            d.swap_cols(t, pivot->second);
            s.V.swap_cols(t, pivot->second);

            bool clear = true;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (d(i, t) == 0) continue;
                Integer q = d(i, t) / d(t, t);
                d.add_row_multiple(i, t, Integer(-q));
                s.U.add_row_multiple(i, t, Integer(-q));
                if (d(i, t) != 0) clear = false;
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (d(t, j) == 0) continue;
                Integer q = d(t, j) / d(t, t);
                d.add_col_multiple(j, t, Integer(-q));
                s.V.add_col_multiple(j, t, Integer(-q));
                if (d(t, j) != 0) clear = false;
            }
            if (!clear) continue;

            // Divisibility: fold an offending row into the pivot row and retry.
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < d.rows() && !bad_row; ++i)
                for (std::size_t j = t + 1; j < d.cols(); ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row) {
                d.add_row_multiple(t, *bad_row, Integer(1));
                s.U.add_row_multiple(t, *bad_row, Integer(1));
                continue;
            }
            break;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.U.negate_row(t);
        }
    }
    return s;
}

IntegerMatrix hermite_normal_form(const IntegerMatrix& m) {
    IntegerMatrix h = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        // Euclid down column c among rows r..end.
        for (;;) {
            std::optional<std::size_t> piv;
            for (std::size_t i = r; i < h.rows(); ++i)
                if (h(i, c) != 0 && (!piv || abs(h(i, c)) < abs(h(*piv, c)))) piv = i;
            if (!piv) break;
            h.swap_rows(r, *piv);
            bool done = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, c) == 0) continue;
                Integer q = h(i, c) / h(r, c);
                h.add_row_multiple(i, r, Integer(-q));
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) h.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            if (q != 0) h.add_row_multiple(i, r, Integer(-q));
        }
        ++r;
    }
    std::vector<std::size_t> keep(r);
    for (std::size_t i = 0; i < r; ++i) keep[i] = i;
    return h.select_rows(keep);
}

AbelianQuotient row_lattice_quotient(const IntegerMatrix& m) {
    auto diag = smith_normal_form(m).nonzero_diagonal();
    AbelianQuotient q;
    q.free_rank = m.cols() - diag.size();
    q.torsion = FiniteAbelianGroup::from_cyclic_orders(std::move(diag));
    return q;
}

FiniteAbelianGroup cokernel_structure(const IntegerMatrix& m) {
    auto q = row_lattice_quotient(m);
    if (q.free_rank != 0)
        throw NotFiniteIndex("row lattice has rank " + std::to_string(m.cols() - q.free_rank) +
                             " < " + std::to_string(m.cols()));
    return q.torsion;
}

IntegerMatrix integer_kernel_basis(const IntegerMatrix& m) {
    auto s = smith_normal_form(m);
    const std::size_t r = s.nonzero_diagonal().size();
    IntegerMatrix basis(m.cols() - r, m.cols());
    for (std::size_t k = r; k < m.cols(); ++k)
        for (std::size_t c = 0; c < m.cols(); ++c) basis(k - r, c) = s.V(c, k);
    return hermite_normal_form(basis);
}

}  // namespace toric
