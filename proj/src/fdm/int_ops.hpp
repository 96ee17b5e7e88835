#pragma once

// Matrix helpers over Z and Z/p^k shared by the FDM sources.

#include <string>

#include "cyclotome/linalg/error.hpp"
#include "cyclotome/linalg/module.hpp"

namespace cyclotome::int_ops {

inline Integer power(std::uint32_t p, int e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
    return r;
}

inline IntMat scaled(const Ring& base, IntMat m, const Integer& c) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= c;
    return reduce_entries(base, std::move(m));
}

inline IntMat minus(const Ring& base, IntMat x, const IntMat& y) {
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= y(i, j);
    return reduce_entries(base, std::move(x));
}

inline IntMat kron(const IntMat& x, const IntMat& y) {
    IntMat out = int_zero(x.rows() * y.rows(), x.cols() * y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x(i, j) == 0) continue;
            for (std::size_t k = 0; k < y.rows(); ++k)
                for (std::size_t l = 0; l < y.cols(); ++l) out(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
        }
    return out;
}

inline IntMat cat(const IntMat& x, const IntMat& y, std::size_t rows) {
    if (x.cols() == 0 && y.cols() == 0) return int_zero(rows, 0);
    if (x.cols() == 0) return y;
    if (y.cols() == 0) return x;
    return hstack(x, y);
}

inline bool all_zero(const Ring& base, const IntMat& m) {
    IntMat r = reduce_entries(base, m);
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (r(i, j) != 0) return false;
    return true;
}

// Columns of target lie in span(gens) + span(rel).
inline bool spans(const Ring& base, const IntMat& gens, const IntMat& rel, const IntMat& target) {
    if (target.cols() == 0) return true;
    IntMat a = cat(gens, rel, target.rows());
    if (a.cols() == 0) return all_zero(base, target);
    return column_span_contains(base, a, target);
}

// c with gens * c = target modulo rel; throws when target leaves the span.
inline IntMat express(const Ring& base, const IntMat& gens, const IntMat& rel, const IntMat& target, const std::string& what) {
    IntMat out = int_zero(gens.cols(), target.cols());
    if (target.cols() == 0) return out;
    IntMat a = cat(gens, rel, target.rows());
    if (a.cols() == 0) {
        require(all_zero(base, target), ErrorKind::Validation, what);
        return out;
    }
    auto s = solve_columns(base, a, target);
    require(s.ok, ErrorKind::Validation, what);
    for (std::size_t i = 0; i < gens.cols(); ++i)
        for (std::size_t j = 0; j < target.cols(); ++j) out(i, j) = s.x(i, j);
    return out;
}

// Zero after localizing at p (plain zero over Z/p^k).
inline bool locally_zero(const ModuleDescriptor& d, std::uint32_t p) {
    if (d.ring.kind() != RingKind::Integers) return d.is_zero();
    if (d.rank) return false;
    for (const auto& t : d.torsion)
        if (t % p == 0) return false;
    return true;
}

inline ModuleDescriptor span_quotient(const Ring& base, const IntMat& a, const IntMat& rel, std::size_t rows) {
    IntMat top = cat(a, rel, rows);
    if (top.cols() == 0) return ModuleDescriptor{base, 0, {}};
    return subquotient(base, top, rel.cols() ? rel : int_zero(rows, 0));
}


}  // namespace cyclotome::int_ops
