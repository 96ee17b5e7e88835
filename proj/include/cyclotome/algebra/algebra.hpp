#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyclotome/algebra/group.hpp"
#include "cyclotome/linalg/sparse.hpp"

namespace cyclotome {

using AlgVec = SparseVec<Scalar>;

// Column j of each matrix is the image of basis vector j.
struct GroupAction {
    GroupTable group;
    std::vector<SparseMatrix> matrices;
};

// Basis vector i has group degree `degree[i]`; products multiply degrees.
struct GroupGrading {
    GroupTable group;
    std::vector<int> degree;
};

struct AlgebraFlags {
    std::optional<bool> smooth;
    std::optional<bool> proper;
    std::string justification;
};

struct Algebra {
    std::string name;
    Ring ring;
    std::vector<std::string> basis;
    std::vector<AlgVec> products;  // products[i * dim + j] = e_i e_j
    AlgVec unit;
    std::vector<int> grading;  // empty: everything in degree 0
    bool sign_graded = false;  // Koszul signs from grading parity
    std::optional<SparseMatrix> differential;
    std::optional<GroupGrading> sectors;
    std::optional<GroupAction> action;
    // Complete family of orthogonal idempotents that are basis vectors.
    std::vector<std::uint32_t> idempotents;
    // Filled by validation: which idempotent fixes each basis vector on the left/right.
    std::vector<int> idem_left, idem_right;
    // >= 0: graded pieces of internal degree above this are not faithful.
    int truncation = -1;
    AlgebraFlags flags;
    std::shared_ptr<const Algebra> w2_lift;

    std::size_t dim() const noexcept { return basis.size(); }
    const AlgVec& product(std::size_t i, std::size_t j) const { return products[i * dim() + j]; }
    int degree(std::size_t i) const { return grading.empty() ? 0 : grading[i]; }
    // Degree used for Koszul signs.
    int sign_degree(std::size_t i) const { return sign_graded ? degree(i) : 0; }
    bool graded() const noexcept { return !grading.empty(); }
    int max_degree() const;
    std::optional<std::uint32_t> unit_index() const;
    std::uint32_t index_of(const std::string& label) const;

    AlgVec multiply(const AlgVec& x, const AlgVec& y) const;
    AlgVec basis_vector(std::size_t i) const { return {{static_cast<std::uint32_t>(i), Scalar(1)}}; }
};

// Applies a matrix (columns = images of basis vectors) to a vector.
AlgVec apply(const Ring& ring, const SparseMatrix& m, const AlgVec& x);

// Full structural validation; fills idem_left/idem_right and, when no idempotent
// family is given and the unit is a basis vector, uses the unit as the family.
// Throws a Validation error naming the offending basis elements.
void validate_algebra(Algebra& a);

// Plain description with label-based entries, as read from JSON.
struct AlgebraSpec {
    struct Product {
        std::string left, right, result;
        Scalar coeff;
    };
    struct MapEntry {
        std::string source, target;
        Scalar coeff;
    };
    std::string name;
    Ring ring;
    std::vector<std::string> basis;
    std::vector<std::pair<std::string, Scalar>> unit;
    std::vector<Product> mult;
    std::vector<int> grading;
    bool sign_graded = false;
    std::optional<std::vector<MapEntry>> differential;
    std::optional<GroupTable> group;
    std::vector<std::string> sectors;                     // group element label per basis vector
    std::vector<std::vector<MapEntry>> action;            // per group element
    std::vector<std::string> idempotents;
    int truncation = -1;
    AlgebraFlags flags;
};

Algebra build_algebra(const AlgebraSpec& spec);

// Same structure constants over the reduction ring (coefficients must be integral there).
Algebra change_ring(const Algebra& a, const Ring& ring);

// Replaces one basis vector by the unit so that the unit becomes a basis vector.
Algebra rebase_unit(const Algebra& a);

// Structure constants in a kernel arithmetic policy.
template <class F>
struct MultTable {
    std::size_t dim = 0;
    std::vector<SparseVec<typename F::value_type>> products;
    const SparseVec<typename F::value_type>& operator()(std::size_t i, std::size_t j) const {
        return products[i * dim + j];
    }
};

template <class F>
MultTable<F> mult_table(const F& f, const Algebra& a) {
    MultTable<F> t;
    t.dim = a.dim();
    t.products.reserve(a.products.size());
    for (const auto& p : a.products) {
        SparseVec<typename F::value_type> v;
        for (const auto& e : p) {
            auto x = f.from_scalar(e.value);
            if (!F::is_zero(x)) v.push_back({e.index, std::move(x)});
        }
        t.products.push_back(std::move(v));
    }
    return t;
}

}  // namespace cyclotome
