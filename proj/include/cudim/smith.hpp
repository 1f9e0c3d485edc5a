#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cudim/abelian_type.hpp"
#include "cudim/errors.hpp"
#include "cudim/integer.hpp"

namespace cudim {

// Integer relation matrix presenting the abelian group Z^rows / (column
// span), i.e. rows index generators and columns index relations.
class MatrixPresentation {
public:
    MatrixPresentation(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    explicit MatrixPresentation(const std::vector<std::vector<std::int64_t>>& rows) {
        rows_ = rows.size();
        cols_ = rows.empty() ? 0 : rows.front().size();
        for (const auto& row : rows)
            if (row.size() != cols_)
                throw domain_error("matrix rows have unequal lengths");
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows)
            for (auto v : row) data_.emplace_back(v);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> data_;
};

struct SmithResult {
    // Nontrivial invariant factors d_1 | d_2 | ... (units and zeros dropped).
    std::vector<Natural> diagonal;
    // rows - rank: the free rank of the presented group.
    std::uint64_t free_rank = 0;
};

// Exact Smith normal form by elementary row/column operations: repeatedly
// move a least nonzero entry to the pivot, clear its row and column, then
// enforce that the pivot divides the rest of the submatrix.
inline SmithResult smith_normal_form(MatrixPresentation a) {
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t steps = std::min(m, n);

    auto swap_rows = [&](std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t j = 0; j < n; ++j) std::swap(a.at(r1, j), a.at(r2, j));
    };
    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        if (c1 == c2) return;
        for (std::size_t i = 0; i < m; ++i) std::swap(a.at(i, c1), a.at(i, c2));
    };
    auto add_row_multiple = [&](std::size_t dst, std::size_t src, const Integer& factor) {
        for (std::size_t j = 0; j < n; ++j) a.at(dst, j) += factor * a.at(src, j);
    };
    auto add_col_multiple = [&](std::size_t dst, std::size_t src, const Integer& factor) {
        for (std::size_t i = 0; i < m; ++i) a.at(i, dst) += factor * a.at(i, src);
    };

    for (std::size_t k = 0; k < steps; ++k) {
        while (true) {
            // Least nonzero |entry| in the trailing submatrix becomes the pivot.
            std::size_t pr = k, pc = k;
            bool found = false;
            for (std::size_t i = k; i < m; ++i) {
                for (std::size_t j = k; j < n; ++j) {
                    if (a.at(i, j).is_zero()) continue;
                    if (!found || a.at(i, j).abs() < a.at(pr, pc).abs()) {
                        pr = i;
                        pc = j;
                        found = true;
                    }
                }
            }
            if (!found) break; // submatrix is zero
            swap_rows(k, pr);
            swap_cols(k, pc);

            bool reduced = true;
            for (std::size_t i = k + 1; i < m; ++i) {
                if (a.at(i, k).is_zero()) continue;
                add_row_multiple(i, k, -(a.at(i, k) / a.at(k, k)));
                if (!a.at(i, k).is_zero()) reduced = false;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (a.at(k, j).is_zero()) continue;
                add_col_multiple(j, k, -(a.at(k, j) / a.at(k, k)));
                if (!a.at(k, j).is_zero()) reduced = false;
            }
            if (!reduced) continue;

            // Pivot must divide every remaining entry; if not, fold the
            // offending row in and reduce again.
            bool divides_all = true;
            for (std::size_t i = k + 1; i < m && divides_all; ++i)
                for (std::size_t j = k + 1; j < n && divides_all; ++j)
                    if (!(a.at(i, j) % a.at(k, k)).is_zero()) {
                        add_row_multiple(k, i, Integer(1));
                        divides_all = false;
                    }
            if (divides_all) break;
        }
    }

    SmithResult result;
    std::uint64_t rank = 0;
    for (std::size_t k = 0; k < steps; ++k) {
        if (a.at(k, k).is_zero()) continue;
        ++rank;
        Natural d = a.at(k, k).magnitude();
        if (d != Natural(1)) result.diagonal.push_back(std::move(d));
    }
    result.free_rank = m - rank;
    return result;
}

// Finite abelian type presented by the matrix. Groups with free rank are
// outside the finite engine and routed to the catalog.
inline AbelianType type_from_matrix(const MatrixPresentation& a, const FactorBudget& budget = {}) {
    SmithResult snf = smith_normal_form(a);
    if (snf.free_rank > 0)
        throw domain_error("mixed/free module: finite engine unsupported; see catalog (free rank " +
                           std::to_string(snf.free_rank) + ")");
    std::vector<std::uint64_t> orders;
    for (const auto& d : snf.diagonal) {
        if (!d.fits_u64()) throw budget_error("invariant factor exceeds the 2^64 budget");
        orders.push_back(d.to_u64());
    }
    return type_from_orders(orders, budget);
}

} // namespace cudim
