#include "cyclotome/linalg/smith.hpp"

#include <algorithm>
#include <utility>

#include "cyclotome/linalg/error.hpp"

namespace cyclotome {

IntMat int_zero(std::size_t rows, std::size_t cols) { return IntMat(rows, cols, Integer(0)); }

IntMat int_identity(std::size_t n) {
    IntMat m = int_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat int_multiply(const IntMat& a, const IntMat& b) {
    require(a.cols() == b.rows(), ErrorKind::Internal, "int_multiply: shape mismatch");
    IntMat out = int_zero(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

IntMat to_int_matrix(const SparseMatrix& m) {
    IntMat out = int_zero(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.col(j)) {
            require(e.value.get_den() == 1, ErrorKind::Input, "non-integral entry");
            out(e.index, j) = e.value.get_num();
        }
    return out;
}

namespace {

// Elementary operations on the working matrix and the transforms; `mod` == 0
// means exact integers.
class Reducer {
public:
    Reducer(IntMat m, bool track, Integer mod) : a(std::move(m)), track_(track), mod_(std::move(mod)) {
        if (track_) {
            u = int_identity(a.rows());
            u_inv = int_identity(a.rows());
            v = int_identity(a.cols());
        }
        if (mod_ != 0)
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) reduce(a(i, j));
    }

    void reduce(Integer& x) const {
        if (mod_ == 0) return;
        x %= mod_;
        if (x < 0) x += mod_;
    }

    // row_i += c * row_j
    void add_row(std::size_t i, std::size_t j, const Integer& c) {
        for (std::size_t t = 0; t < a.cols(); ++t)
            if (a(j, t) != 0) {
                a(i, t) += c * a(j, t);
                reduce(a(i, t));
            }
        if (!track_) return;
        for (std::size_t t = 0; t < u.cols(); ++t)
            if (u(j, t) != 0) {
                u(i, t) += c * u(j, t);
                reduce(u(i, t));
            }
        for (std::size_t t = 0; t < u_inv.rows(); ++t)
            if (u_inv(t, i) != 0) {
                u_inv(t, j) -= c * u_inv(t, i);
                reduce(u_inv(t, j));
            }
    }

    // col_i += c * col_j
    void add_col(std::size_t i, std::size_t j, const Integer& c) {
        for (std::size_t t = 0; t < a.rows(); ++t)
            if (a(t, j) != 0) {
                a(t, i) += c * a(t, j);
                reduce(a(t, i));
            }
        if (!track_) return;
        for (std::size_t t = 0; t < v.rows(); ++t)
            if (v(t, j) != 0) {
                v(t, i) += c * v(t, j);
                reduce(v(t, i));
            }
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        a.swap_rows(i, j);
        if (!track_) return;
        u.swap_rows(i, j);
        for (std::size_t t = 0; t < u_inv.rows(); ++t) std::swap(u_inv(t, i), u_inv(t, j));
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t t = 0; t < a.rows(); ++t) std::swap(a(t, i), a(t, j));
        if (!track_) return;
        for (std::size_t t = 0; t < v.rows(); ++t) std::swap(v(t, i), v(t, j));
    }

    // row_i *= w, w a unit with inverse w_inv
    void scale_row(std::size_t i, const Integer& w, const Integer& w_inv) {
        for (std::size_t t = 0; t < a.cols(); ++t) {
            a(i, t) *= w;
            reduce(a(i, t));
        }
        if (!track_) return;
        for (std::size_t t = 0; t < u.cols(); ++t) {
            u(i, t) *= w;
            reduce(u(i, t));
        }
        for (std::size_t t = 0; t < u_inv.rows(); ++t) {
            u_inv(t, i) *= w_inv;
            reduce(u_inv(t, i));
        }
    }

    IntMat a, u, u_inv, v;

private:
    bool track_;
    Integer mod_;
};

IntSmith finish(Reducer& r, std::size_t rank, bool track) {
    IntSmith out;
    out.rank = rank;
    for (std::size_t t = 0; t < rank; ++t) out.diagonal.push_back(r.a(t, t));
    out.d = std::move(r.a);
    if (track) {
        out.u = std::move(r.u);
        out.u_inverse = std::move(r.u_inv);
        out.v = std::move(r.v);
    }
    return out;
}

}  // namespace

IntSmith smith_integers(IntMat m, bool track) {
    Reducer r(std::move(m), track, 0);
    auto& a = r.a;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // smallest nonzero entry as pivot
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                Integer q = a(i, t) / a(t, t);
                r.add_row(i, t, -q);
                if (a(i, t) != 0) {
                    r.swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                Integer q = a(t, j) / a(t, t);
                r.add_col(j, t, -q);
                if (a(t, j) != 0) {
                    r.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        r.add_row(t, i, 1);
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (a(t, t) < 0) r.scale_row(t, -1, -1);
    }
    return finish(r, t, track);
}

IntSmith smith_modular(IntMat m, std::uint32_t p, int k, bool track) {
    Integer mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p, static_cast<unsigned long>(k));
    Reducer r(std::move(m), track, mod);
    auto& a = r.a;
    const std::size_t rows = a.rows(), cols = a.cols();
    auto valuation = [&](const Integer& x) {
        if (x == 0) return k;
        Integer y = x;
        int v = 0;
        while (y % p == 0) {
            y /= p;
            ++v;
        }
        return v;
    };
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        std::size_t pi = rows, pj = cols;
        int best = k;
        for (std::size_t i = t; i < rows && best > 0; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                int val = valuation(a(i, j));
                if (val < best) {
                    best = val;
                    pi = i;
                    pj = j;
                    if (best == 0) break;
                }
            }
        if (pi == rows) break;
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        Integer pv;
        mpz_ui_pow_ui(pv.get_mpz_t(), p, static_cast<unsigned long>(best));
        Integer unit = a(t, t) / pv;
        Integer unit_inv;
        mpz_invert(unit_inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
        r.scale_row(t, unit_inv, unit);
        for (std::size_t i = t + 1; i < rows; ++i)
            if (a(i, t) != 0) r.add_row(i, t, -(a(i, t) / pv));
        for (std::size_t j = t + 1; j < cols; ++j)
            if (a(t, j) != 0) r.add_col(j, t, -(a(t, j) / pv));
    }
    return finish(r, t, track);
}

namespace {

SparseMatrix to_sparse(const IntMat& m) {
    SparseMatrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0) out.col(j).push_back({static_cast<std::uint32_t>(i), Scalar(m(i, j))});
    return out;
}

}  // namespace

SmithResult smith_normal_form(const SparseMatrix& m, const Ring& ring) {
    IntSmith s;
    if (ring.kind() == RingKind::Integers) {
        s = smith_integers(to_int_matrix(m), true);
    } else if (ring.is_modular()) {
        IntMat im = int_zero(m.rows(), m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (const auto& e : m.col(j)) im(e.index, j) = ring.normalize(e.value).get_num();
        s = smith_modular(std::move(im), ring.prime(), ring.precision(), true);
    } else {
        fail(ErrorKind::UnsupportedRing, "smith_normal_form needs Z or Z/p^k, got " + ring.name());
    }
    SmithResult out{to_sparse(s.d), to_sparse(s.u), to_sparse(s.v), {}};
    for (const auto& x : s.diagonal) out.diagonal.emplace_back(x);
    return out;
}

}  // namespace cyclotome
