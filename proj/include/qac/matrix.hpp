#pragma once

#include <cstddef>
#include <vector>

#include "qac/field.hpp"

namespace qac {

/// Dense row-major matrix over one field.
struct Matrix {
    const FieldSpec* field = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<FieldElement> a;

    FieldElement& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

Matrix mat_zero(const FieldSpec& F, std::size_t rows, std::size_t cols);
Matrix mat_identity(const FieldSpec& F, std::size_t n);
Matrix mat_mul(const Matrix& A, const Matrix& B);
Matrix mat_transpose(const Matrix& A);
bool mat_is_zero(const Matrix& A);

/// Reduced row echelon form.
Matrix mat_rref(Matrix A);

std::size_t mat_rank(Matrix A);

/// Nonzero rows of the RREF: a canonical basis of the row space.
Matrix mat_row_basis(const Matrix& A);

}  // namespace qac
