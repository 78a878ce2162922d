#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "qac/algebra.hpp"
#include "qac/matrix.hpp"

namespace qac {

/// Raised when an enumeration would exceed its stated budget. Never silently
/// approximated.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SolutionKind { t_zero, t_bar_fixed, t_paired };

/// Closed-form parameterization of the solutions of beta bar(beta) = -e
/// within one component. T0 holds the roots of X^2 = -1 scaled onto e_0
/// (count 0, 1, or 2). A bar-fixed set is base * step^j for j < q^{n_e}+1,
/// step of order q^{n_e}+1. A paired set maps step^j (j < q^{n_e}-1) to
/// step^j - (bar(step^j))^{-1}.
struct ComponentSolutionSet {
    SolutionKind kind = SolutionKind::t_zero;
    std::size_t comp_index = 0;
    u128 count = 0;
    AlgebraElement base;
    AlgebraElement step;
};

/// Context, decomposition, and solution sets bundled: everything needed to
/// count, enumerate, sample, build, and verify codes over one FG.
struct CodeSystem {
    std::unique_ptr<AlgebraContext> ctx;
    Decomposition dec;
    std::vector<ComponentSolutionSet> solutions;  // parallel to dec.components
};

CodeSystem code_system_make(const FieldSpec& field, const AbelianGroup& group);

ComponentSolutionSet component_solutions(const AlgebraContext& ctx, const Decomposition& dec,
                                         std::size_t comp_index);

/// The j-th solution, 0 <= j < set.count.
AlgebraElement solution_at(const AlgebraContext& ctx, const Decomposition& dec,
                           const ComponentSolutionSet& set, u128 j);

/// Every element of the component's solution set, found by exhausting FG ehat
/// (q^{dim FG ehat} candidates; refuses beyond cap). Test oracle.
std::vector<AlgebraElement> brute_force_component_solutions(const AlgebraContext& ctx,
                                                            const Decomposition& dec,
                                                            std::size_t comp_index, u128 cap);

/// |D|: 0 when q = 3 mod 4, else (2 if q odd else 1) * prod(q^{n_i}+1) *
/// prod(q^{n_{r+j}}-1). Needs only the orbit structure.
u128 count_selfdual(const AlgebraContext& ctx);

/// |D dagger| = prod(q^{n_i}+1) * prod(q^{n_{r+j}}-1); always positive.
u128 count_dagger(const AlgebraContext& ctx);

struct TypeICode {
    AlgebraElement b;  // b bar(b) = -1; the code {(u, ub)}, dimension n
};

struct TypeIDaggerCode {
    AlgebraElement b_dagger;  // e0 b = 0, b bar(b) = -(1 - e0); dimension n-1
};

/// 1 - e0 in closed form (e0 = (1/n) sum of all group elements).
AlgebraElement one_dagger(const AlgebraContext& ctx);

/// b from one solution index per component; choice[k] indexes the solution
/// set of component k (component 0 is T0).
AlgebraElement build_b(const CodeSystem& sys, const std::vector<u128>& choice);

/// Uniform draw from D: component k uses RNG substream (seed, k).
AlgebraElement sample_b(const CodeSystem& sys, std::uint64_t seed);

/// As build_b but with no T0 entry: choice[k-1] indexes component k.
AlgebraElement build_b_dagger(const CodeSystem& sys, const std::vector<u128>& choice);

AlgebraElement sample_b_dagger(const CodeSystem& sys, std::uint64_t seed);

/// n x 2n block matrix (I B) with B[i][rho_i(j)] = b_j; row i is the
/// coefficient vector of (x_i, x_i b).
Matrix generator_matrix(const TypeICode& code);

/// Canonical (n-1) x 2n basis of {(u (1-e0), u b_dagger)}; throws when the
/// row space does not have dimension n-1.
Matrix dagger_generator(const TypeIDaggerCode& code);

struct VerifyReport {
    bool algebraic = false;    // b bar(b) = -1, resp. b bar(b) = -(1-e0)
    bool annihilator = true;   // dagger only: e0 b = 0
    bool orthogonal = false;   // G G^T = 0
    bool rank = false;         // rank n, resp. n-1
    bool pass() const { return algebraic && annihilator && orthogonal && rank; }
};

VerifyReport verify_selfdual(const TypeICode& code);
VerifyReport verify_selforthogonal(const TypeIDaggerCode& code);

/// Exact minimum Hamming weight over the nonzero row space of G, enumerating
/// one representative per scalar class ((q^k - 1)/(q - 1) messages). Refuses
/// with BudgetError when q^k > budget. For q = 2 with at most 128 columns a
/// bit-packed Gray-code walk is used; results are identical to the generic
/// path by construction and by test.
std::uint64_t matrix_min_weight(const Matrix& G, u128 budget);

std::uint64_t minimum_weight(const TypeICode& code, u128 budget);
std::uint64_t minimum_weight(const TypeIDaggerCode& code, u128 budget);

/// All b in FG with b bar(b) = -1, by exhaustive scan of q^n candidates
/// (refuses beyond cap). Test oracle.
std::vector<AlgebraElement> brute_force_selfdual_set(const AlgebraContext& ctx, u128 cap);

/// All b with b bar(b) = -(1 - e0); e0 b = 0 follows. Test oracle.
std::vector<AlgebraElement> brute_force_dagger_set(const AlgebraContext& ctx, u128 cap);

}  // namespace qac
