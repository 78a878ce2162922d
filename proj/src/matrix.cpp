#include "qac/matrix.hpp"

#include <stdexcept>

namespace qac {

Matrix mat_zero(const FieldSpec& F, std::size_t rows, std::size_t cols) {
    Matrix M;
    M.field = &F;
    M.rows = rows;
    M.cols = cols;
    M.a.assign(rows * cols, fe_zero(F));
    return M;
}

Matrix mat_identity(const FieldSpec& F, std::size_t n) {
    Matrix M = mat_zero(F, n, n);
    for (std::size_t i = 0; i < n; ++i) M.at(i, i) = fe_one(F);
    return M;
}

Matrix mat_mul(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows || !(*A.field == *B.field))
        throw std::invalid_argument("mat_mul: shape or field mismatch");
    Matrix C = mat_zero(*A.field, A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t k = 0; k < A.cols; ++k) {
            const FieldElement& aik = A.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < B.cols; ++j)
                C.at(i, j) = fe_add(C.at(i, j), fe_mul(aik, B.at(k, j)));
        }
    }
    return C;
}

Matrix mat_transpose(const Matrix& A) {
    Matrix T = mat_zero(*A.field, A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

bool mat_is_zero(const Matrix& A) {
    for (const FieldElement& v : A.a)
        if (!v.is_zero()) return false;
    return true;
}

Matrix mat_rref(Matrix A) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < A.cols && row < A.rows; ++col) {
        std::size_t sel = row;
        while (sel < A.rows && A.at(sel, col).is_zero()) ++sel;
        if (sel == A.rows) continue;
        for (std::size_t j = 0; j < A.cols; ++j) std::swap(A.at(sel, j), A.at(row, j));
        FieldElement inv = fe_inv(A.at(row, col));
        for (std::size_t j = col; j < A.cols; ++j) A.at(row, j) = fe_mul(inv, A.at(row, j));
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i == row || A.at(i, col).is_zero()) continue;
            FieldElement f = A.at(i, col);
            for (std::size_t j = col; j < A.cols; ++j)
                A.at(i, j) = fe_sub(A.at(i, j), fe_mul(f, A.at(row, j)));
        }
        ++row;
    }
    return A;
}

std::size_t mat_rank(Matrix A) {
    Matrix R = mat_rref(std::move(A));
    std::size_t rank = 0;
    for (std::size_t i = 0; i < R.rows; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < R.cols; ++j)
            if (!R.at(i, j).is_zero()) {
                zero = false;
                break;
            }
        if (!zero) ++rank;
    }
    return rank;
}

Matrix mat_row_basis(const Matrix& A) {
    Matrix R = mat_rref(A);
    // RREF leaves the nonzero rows on top
    std::size_t rank = 0;
    for (std::size_t i = 0; i < R.rows; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < R.cols; ++j)
            if (!R.at(i, j).is_zero()) {
                zero = false;
                break;
            }
        if (!zero) ++rank;
    }
    Matrix B = mat_zero(*A.field, rank, A.cols);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) B.at(i, j) = R.at(i, j);
    return B;
}

}  // namespace qac
