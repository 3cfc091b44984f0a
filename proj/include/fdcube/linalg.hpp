/*
   Copyright 2026 The fdcube Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FDCUBE_LINALG_HPP
#define FDCUBE_LINALG_HPP

/**
 * @file linalg.hpp
 * @brief Gaussian elimination over a finite field.
 *
 * EchelonBasis keeps a reduced row-echelon basis of an affine system
 * c . x = rhs and accepts rows one at a time, which is how both the maxterm
 * search (independence filtering) and the online key solve consume it.
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace fdcube {

using Row = std::vector<Elem>;
using Matrix = std::vector<Row>;

/// Outcome of offering one equation to an EchelonBasis.
enum class RowStatus { independent, dependent, inconsistent };

class EchelonBasis {
  public:
    EchelonBasis(Field field, std::size_t columns) : field_(std::move(field)), columns_(columns) {}

    const Field& field() const noexcept { return field_; }
    std::size_t columns() const noexcept { return columns_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    /// Reduces (coeffs | rhs) against the basis and keeps it if independent.
    RowStatus insert(Row coeffs, Elem rhs) {
        if (coeffs.size() != columns_) throw InvalidArgument("row length does not match system width");
        reduce(coeffs, rhs);
        std::size_t pivot = columns_;
        for (std::size_t c = 0; c < columns_; ++c) {
            if (!field_.is_zero(coeffs[c])) {
                pivot = c;
                break;
            }
        }
        if (pivot == columns_) return field_.is_zero(rhs) ? RowStatus::dependent : RowStatus::inconsistent;
        const Elem inv = field_.inv(coeffs[pivot]);
        for (auto& v : coeffs) v = field_.mul(v, inv);
        rhs = field_.mul(rhs, inv);
        // keep fully reduced: clear the new pivot column from existing rows
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Elem f = rows_[r][pivot];
            if (field_.is_zero(f)) continue;
            for (std::size_t c = 0; c < columns_; ++c) rows_[r][c] = field_.sub(rows_[r][c], field_.mul(f, coeffs[c]));
            rhs_[r] = field_.sub(rhs_[r], field_.mul(f, rhs));
        }
        // insert sorted by pivot column
        std::size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < pivot) ++at;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(coeffs));
        rhs_.insert(rhs_.begin() + static_cast<std::ptrdiff_t>(at), rhs);
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), pivot);
        return RowStatus::independent;
    }

    /// Whether coeffs lies in the span of the stored rows (rhs ignored).
    bool in_span(Row coeffs) const {
        Elem rhs = field_.zero();
        reduce(coeffs, rhs);
        for (auto v : coeffs) {
            if (!field_.is_zero(v)) return false;
        }
        return true;
    }

    const Matrix& rows() const noexcept { return rows_; }
    const Row& rhs() const noexcept { return rhs_; }

  private:
    void reduce(Row& coeffs, Elem& rhs) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Elem f = coeffs[pivots_[r]];
            if (field_.is_zero(f)) continue;
            for (std::size_t c = 0; c < columns_; ++c) coeffs[c] = field_.sub(coeffs[c], field_.mul(f, rows_[r][c]));
            rhs = field_.sub(rhs, field_.mul(f, rhs_[r]));
        }
    }

    Field field_;
    std::size_t columns_;
    Matrix rows_;
    Row rhs_;
    std::vector<std::size_t> pivots_;
};

/// Rows of (coefficients, right-hand side).
struct LinearSystem {
    Field field;
    std::size_t unknowns = 0;
    Matrix coeffs;
    Row rhs;

    void add_row(Row c, Elem r) {
        coeffs.push_back(std::move(c));
        rhs.push_back(r);
    }
};

struct Solution {
    enum class Kind { unique, parametrized, inconsistent };
    Kind kind = Kind::unique;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free_variables;
    /// Free variables set to zero.
    Row particular;
    /// One vector per free variable; solutions are particular + span(nullspace).
    Matrix nullspace;
    /// Index of the first row contradicting the earlier ones.
    std::optional<std::size_t> inconsistent_row;
};

/// Reduced row-echelon solve of system.coeffs * x = system.rhs.
inline Solution gaussian_solve(const LinearSystem& system) {
    if (system.coeffs.size() != system.rhs.size()) throw InvalidArgument("coefficient and rhs row counts differ");
    const Field& F = system.field;
    EchelonBasis basis(F, system.unknowns);
    Solution out;
    for (std::size_t i = 0; i < system.coeffs.size(); ++i) {
        if (basis.insert(system.coeffs[i], system.rhs[i]) == RowStatus::inconsistent) {
            out.kind = Solution::Kind::inconsistent;
            out.inconsistent_row = i;
            break;
        }
    }
    out.rank = basis.rank();
    out.pivots = basis.pivots();
    if (out.kind == Solution::Kind::inconsistent) return out;
    std::vector<bool> is_pivot(system.unknowns, false);
    for (auto pc : out.pivots) is_pivot[pc] = true;
    for (std::size_t c = 0; c < system.unknowns; ++c) {
        if (!is_pivot[c]) out.free_variables.push_back(c);
    }
    out.particular.assign(system.unknowns, F.zero());
    for (std::size_t r = 0; r < basis.rank(); ++r) out.particular[out.pivots[r]] = basis.rhs()[r];
    for (auto fv : out.free_variables) {
        Row v(system.unknowns, F.zero());
        v[fv] = F.one();
        for (std::size_t r = 0; r < basis.rank(); ++r) v[out.pivots[r]] = F.neg(basis.rows()[r][fv]);
        out.nullspace.push_back(std::move(v));
    }
    out.kind = out.free_variables.empty() ? Solution::Kind::unique : Solution::Kind::parametrized;
    return out;
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<Matrix> inverse(const Field& F, const Matrix& a) {
    const std::size_t n = a.size();
    Matrix m(n, Row(2 * n, F.zero()));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw InvalidArgument("matrix is not square");
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n + i] = F.one();
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && F.is_zero(m[piv][col])) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        const Elem inv = F.inv(m[col][col]);
        for (auto& v : m[col]) v = F.mul(v, inv);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || F.is_zero(m[r][col])) continue;
            const Elem f = m[r][col];
            for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] = F.sub(m[r][c], F.mul(f, m[col][c]));
        }
    }
    Matrix out(n, Row(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    }
    return out;
}

}  // namespace fdcube

#endif  // FDCUBE_LINALG_HPP
