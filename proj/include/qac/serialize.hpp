#pragma once

#include <memory>
#include <string>

#include "qac/code.hpp"

namespace qac {

/// Code envelope {q, group, dagger, b[, matrix]}. b lists one coefficient per
/// group element in enumeration order, each as its m digits in [0, p);
/// matrix (optional) is the generator matrix in the same digit encoding.
std::string code_to_json(const AlgebraElement& b, bool dagger, bool with_matrix);

struct LoadedCode {
    std::unique_ptr<AlgebraContext> ctx;
    AlgebraElement b;
    bool dagger = false;
};

/// Parses and validates an envelope; rebuilds the algebra context from q and
/// the group factors. Throws std::invalid_argument on malformed input.
LoadedCode code_from_json(const std::string& text);

/// Orbit list with tags and partners, the (r, s) split, component dimensions,
/// and the splitting-field degree.
std::string decomposition_to_json(const AlgebraContext& ctx);

/// Plain-text rows; entries space-separated, extension digits comma-joined.
std::string matrix_text(const Matrix& M);

}  // namespace qac
