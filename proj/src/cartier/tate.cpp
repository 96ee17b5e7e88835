#include "cyclotome/cartier/tate.hpp"

#include "cyclotome/linalg/error.hpp"

namespace cyclotome {

namespace {

bool is_zero_mod(const Ring& R, IntMat m) {
    m = reduce_entries(R, std::move(m));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) return false;
    return true;
}

std::size_t rank_over(const Ring& R, const IntMat& m) {
    if (m.cols() == 0 || m.rows() == 0) return 0;
    // over a field the rank is the codimension of the cokernel
    return m.rows() - cokernel_descriptor(R, m).rank;
}

IntMat with_columns(const IntMat& a, const IntMat& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    return hstack(a, b);
}

ModuleDescriptor homology(const Ring& R, const IntMat& in, const IntMat& out, std::size_t n) {
    if (R.kind() == RingKind::Rationals)
        return ModuleDescriptor::vector_space(R, n - rank_over(R, out) - rank_over(R, in));
    return presented_homology(R, in, Presentation::free(n), out, Presentation::free(n));
}

}  // namespace

CyclicModule trivial_module(const Ring& ring, int n, std::size_t dim) { return {ring, n, int_identity(dim)}; }

CyclicModule regular_module(const Ring& ring, int n) {
    IntMat s = int_zero(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s(static_cast<std::size_t>((i + 1) % n), static_cast<std::size_t>(i)) = 1;
    return {ring, n, s};
}

IntMat tate_differential(const CyclicModule& v, int degree) {
    const std::size_t d = v.dim();
    IntMat power = int_identity(d);
    if (degree % 2 == 0) {
        IntMat m = v.sigma;
        for (std::size_t i = 0; i < d; ++i) m(i, i) -= 1;
        return reduce_entries(v.ring, std::move(m));
    }
    IntMat norm = int_zero(d, d);
    for (int k = 0; k < v.n; ++k) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) norm(i, j) += power(i, j);
        power = reduce_entries(v.ring, int_multiply(v.sigma, power));
    }
    return reduce_entries(v.ring, std::move(norm));
}

namespace {

void check_module(const CyclicModule& v) {
    require(v.n >= 2, ErrorKind::Input, "Tate cohomology needs n >= 2");
    require(v.sigma.rows() == v.sigma.cols(), ErrorKind::Validation, "sigma must be square");
    IntMat power = int_identity(v.dim());
    for (int k = 0; k < v.n; ++k) power = reduce_entries(v.ring, int_multiply(v.sigma, power));
    IntMat diff = power;
    for (std::size_t i = 0; i < v.dim(); ++i) diff(i, i) -= 1;
    require(is_zero_mod(v.ring, diff), ErrorKind::Validation, "sigma^n != id for n = " + std::to_string(v.n));
}

}  // namespace

TateTable tate_cyclic(const CyclicModule& v, int lo, int hi) {
    check_module(v);
    require(lo <= hi, ErrorKind::Input, "empty Tate window");
    TateTable t;
    t.lo = lo;
    t.hi = hi;
    for (int i = lo; i <= hi; ++i)
        t.groups[i] = homology(v.ring, tate_differential(v, i - 1), tate_differential(v, i), v.dim());
    for (int i = lo; i + 2 <= hi; ++i)
        if (t.groups[i] != t.groups[i + 2]) t.periodic = false;
    return t;
}

ClassRank tate_class_rank(const CyclicModule& v, int degree, const IntMat& vectors) {
    ClassRank r;
    const IntMat d = tate_differential(v, degree);
    r.cocycles = is_zero_mod(v.ring, int_multiply(d, vectors));
    const IntMat bounds = tate_differential(v, degree - 1);
    r.rank = rank_over(v.ring, with_columns(vectors, bounds)) - rank_over(v.ring, bounds);
    return r;
}

bool tate_coboundaries(const CyclicModule& v, int degree, const IntMat& x) {
    const IntMat bounds = tate_differential(v, degree - 1);
    if (v.ring.kind() == RingKind::Rationals) return rank_over(v.ring, with_columns(bounds, x)) == rank_over(v.ring, bounds);
    return column_span_contains(v.ring, bounds, x);
}

CyclicModule tensor_power_rotation(const Ring& ring, std::size_t dim, int p, std::size_t max_dim) {
    std::size_t N = 1;
    for (int i = 0; i < p; ++i) {
        require(N <= max_dim / std::max<std::size_t>(dim, 1), ErrorKind::Resource,
                "tensor power of dimension " + std::to_string(dim) + "^" + std::to_string(p) + " exceeds the bound");
        N *= dim;
    }
    IntMat s = int_zero(N, N);
    std::size_t top = N / dim;  // weight of the first digit
    for (std::size_t x = 0; x < N; ++x) {
        // digits (a1..ap) -> (ap, a1, .., a(p-1))
        const std::size_t last = x % dim;
        s(last * top + x / dim, x) = 1;
    }
    return {ring, p, s};
}

std::size_t diagonal_index(std::size_t dim, int p, std::size_t i) {
    std::size_t x = 0;
    for (int k = 0; k < p; ++k) x = x * dim + i;
    return x;
}

bool TateComparison::ok() const {
    if (degrees.empty()) return false;
    for (const auto& d : degrees)
        if (!d.iso()) return false;
    return true;
}

TateComparison tt_le_check(std::uint32_t p, std::size_t dim, int lo, int hi) {
    require(is_prime(p), ErrorKind::Input, "tt_le_check needs a prime");
    const Ring Fp = Ring::prime_field(p);
    const int P = static_cast<int>(p);
    const CyclicModule src = trivial_module(Fp, P, dim);
    const CyclicModule dst = tensor_power_rotation(Fp, dim, P);
    const TateTable ts = tate_cyclic(src, lo, hi);
    const TateTable tt = tate_cyclic(dst, lo, hi);
    IntMat diag = int_zero(dst.dim(), dim);
    for (std::size_t i = 0; i < dim; ++i) diag(diagonal_index(dim, P, i), i) = 1;

    // (e_i + e_j)^{(x)p} - e_i^{(x)p} - e_j^{(x)p}: the mixed tensors
    IntMat mixed = int_zero(dst.dim(), 0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            IntMat col = int_zero(dst.dim(), 1);
            for (std::size_t x = 0; x < dst.dim(); ++x) {
                bool only = true, has_i = false, has_j = false;
                for (std::size_t y = x, k = 0; k < static_cast<std::size_t>(P); ++k, y /= dim) {
                    const std::size_t digit = y % dim;
                    has_i |= digit == i;
                    has_j |= digit == j;
                    only &= digit == i || digit == j;
                }
                if (only && has_i && has_j) col(x, 0) = 1;
            }
            mixed = mixed.cols() ? hstack(mixed, col) : col;
        }

    TateComparison out;
    out.p = p;
    out.dim = dim;
    for (int i = lo; i <= hi; ++i) {
        TateComparisonDegree d;
        d.degree = i;
        d.source = ts.groups.at(i).rank;
        d.target = tt.groups.at(i).rank;
        d.image = tate_class_rank(dst, i, diag);
        d.additive = tate_coboundaries(dst, i, mixed);
        out.degrees.push_back(d);
    }
    return out;
}

}  // namespace cyclotome
