#include "confree/linalg.hpp"

#include <algorithm>

#include "confree/errors.hpp"

namespace confree {

int exact_rank(std::vector<std::vector<Rational>> rows)
{
    if (rows.empty()) return 0;
    const std::size_t ncols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != ncols) throw ArgumentError("exact_rank: ragged matrix");

    // clear denominators row by row; scaling a row does not change the rank
    std::vector<std::vector<mpz_class>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        mpz_class lcm_den(1);
        for (const auto& x : r) {
            mpz_class den = x.denominator();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
            lcm_den = lcm_den / g * den;
        }
        std::vector<mpz_class> row;
        row.reserve(ncols);
        for (const auto& x : r) row.push_back(x.numerator() * (lcm_den / x.denominator()));
        m.push_back(std::move(row));
    }

    // Bareiss: divisions are exact by construction
    int rank = 0;
    mpz_class prev_pivot(1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);

        for (std::size_t i = row + 1; i < m.size(); ++i) {
            for (std::size_t j = col + 1; j < ncols; ++j) {
                mpz_class num = m[row][col] * m[i][j] - m[i][col] * m[row][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev_pivot.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev_pivot = m[row][col];
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace confree
