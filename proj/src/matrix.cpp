#include "matrix.hpp"

namespace toric {

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
    return out;
}

RationalVector mat_vec(const RationalMatrix& m, const RationalVector& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("apply: dimension mismatch");
    RationalVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

IntegerVector mat_vec(const IntegerMatrix& m, const IntegerVector& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("apply: dimension mismatch");
    IntegerVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots) {
    if (pivots) pivots->clear();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t p = lead;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(lead, p);
        Rational inv = 1 / m(lead, c);
        for (std::size_t k = 0; k < m.cols(); ++k) m(lead, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != lead && m(r, c) != 0) m.add_row_multiple(r, lead, Rational(-m(r, c)));
        if (pivots) pivots->push_back(c);
        ++lead;
    }
    return m;
}

std::size_t rank(const RationalMatrix& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

Rational determinant(const RationalMatrix& src) {
    if (src.rows() != src.cols()) throw std::invalid_argument("determinant: not square");
    RationalMatrix m = src;
    Rational det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r)
            if (m(r, c) != 0) m.add_row_multiple(r, c, Rational(-m(r, c) / m(c, c)));
    }
    return det;
}

Integer determinant(const IntegerMatrix& m) {
    Rational d = determinant(to_rational(m));
    return d.get_num();
}

RationalMatrix rational_kernel(const RationalMatrix& m) {
    std::vector<std::size_t> piv;
    RationalMatrix r = rref(m, &piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : piv) is_pivot[p] = true;

    RationalMatrix basis(m.cols() - piv.size(), m.cols());
    std::size_t k = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis(k, free) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) basis(k, piv[i]) = -r(i, free);
        ++k;
    }
    return basis;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    std::vector<std::size_t> piv;
    RationalMatrix red = rref(aug, &piv);
    if (piv.size() < n || (n > 0 && piv[n - 1] >= n)) return std::nullopt;
    RationalMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = red(r, n + c);
    return inv;
}

std::optional<AffineSolution> solve_affine(const RationalMatrix& m, const RationalVector& rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve_affine: dimension mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = rhs[r];
    }
    std::vector<std::size_t> piv;
    RationalMatrix red = rref(aug, &piv);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(m.cols(), Rational(0));
    for (std::size_t i = 0; i < piv.size(); ++i) sol.particular[piv[i]] = red(i, m.cols());
    sol.kernel = rational_kernel(m);
    return sol;
}

}  // namespace toric
