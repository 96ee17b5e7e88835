#include "cyclotome/linalg/complex.hpp"

#include <string>

#include "cyclotome/linalg/dense.hpp"
#include "cyclotome/linalg/error.hpp"
#include "cyclotome/linalg/kernels.hpp"

namespace cyclotome {

SparseMatrix ChainComplex::d(int n) const {
    if (n > lo && n <= hi()) return diffs[static_cast<std::size_t>(n - lo - 1)];
    return SparseMatrix(dim(n - 1), dim(n));
}

SparseMatrix ring_multiply(const Ring& ring, const SparseMatrix& a, const SparseMatrix& b) {
    require(a.cols() == b.rows(), ErrorKind::Internal, "ring_multiply: shape mismatch");
    return visit_coefficients(ring, [&](auto f) { return to_scalar_matrix(f, multiply(f, convert(f, a), convert(f, b))); });
}

bool ring_is_zero(const Ring& ring, const SparseMatrix& m) {
    return visit_coefficients(ring, [&](auto f) { return convert(f, m).is_zero(); });
}

void validate_complex(const ChainComplex& c) {
    require(c.diffs.size() + 1 == c.dims.size() || c.dims.empty(), ErrorKind::Input,
            "chain complex: need one differential per adjacent pair of degrees");
    for (int n = c.lo + 1; n <= c.hi(); ++n) {
        const auto& d = c.diffs[static_cast<std::size_t>(n - c.lo - 1)];
        require(d.rows() == c.dim(n - 1) && d.cols() == c.dim(n), ErrorKind::Input,
                "chain complex: d_" + std::to_string(n) + " has the wrong shape");
    }
    for (int n = c.lo + 2; n <= c.hi(); ++n) {
        if (!ring_is_zero(c.ring, ring_multiply(c.ring, c.d(n - 1), c.d(n))))
            fail(ErrorKind::Invariant, "d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0 (degree " +
                                           std::to_string(n) + ")");
    }
}

std::vector<HomologyGroup> homology_of_complex(const ChainComplex& c) {
    validate_complex(c);
    std::vector<HomologyGroup> out;
    if (c.dims.empty()) return out;
    if (c.ring.is_field()) {
        std::vector<std::size_t> ranks(c.dims.size() + 1, 0);  // ranks[i] = rank d_{lo+i}
        visit_field(c.ring, [&](auto f) {
            for (int n = c.lo + 1; n <= c.hi(); ++n)
                ranks[static_cast<std::size_t>(n - c.lo)] = rank_of(f, convert(f, c.d(n)));
        });
        for (int n = c.lo; n <= c.hi(); ++n) {
            auto i = static_cast<std::size_t>(n - c.lo);
            std::size_t h = c.dim(n) - ranks[i] - ranks[i + 1];
            out.push_back({n, ModuleDescriptor::vector_space(c.ring, h),
                           (n == c.lo && !c.closed_below) || (n == c.hi() && !c.closed_above)});
        }
        return out;
    }
    for (int n = c.lo; n <= c.hi(); ++n) {
        IntMat out_d = reduce_entries(c.ring, to_int_matrix(c.d(n)));
        IntMat z = c.dim(n - 1) == 0 ? int_identity(c.dim(n)) : kernel_generators(c.ring, out_d);
        IntMat b = reduce_entries(c.ring, to_int_matrix(c.d(n + 1)));
        out.push_back({n, subquotient(c.ring, z, b), (n == c.lo && !c.closed_below) || (n == c.hi() && !c.closed_above)});
    }
    return out;
}

namespace {

template <class F>
std::size_t block_rank(const F& f, const SparseMatrix& d, const std::vector<int>& row_deg,
                       const std::vector<int>& col_deg, int w) {
    std::vector<long> row_map(d.rows(), -1);
    std::size_t nrows = 0;
    for (std::size_t i = 0; i < d.rows(); ++i)
        if (row_deg[i] == w) row_map[i] = static_cast<long>(nrows++);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < d.cols(); ++j)
        if (col_deg[j] == w) cols.push_back(j);
    SparseMat<typename F::value_type> m(nrows, cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (const auto& e : d.col(cols[k])) {
            require(row_map[e.index] >= 0, ErrorKind::Invariant, "differential does not preserve internal degree");
            auto v = f.from_scalar(e.value);
            if (!F::is_zero(v)) m.col(k).push_back({static_cast<std::uint32_t>(row_map[e.index]), v});
        }
    return rank_of(f, m);
}

}  // namespace

std::map<int, std::map<int, std::size_t>> graded_homology(const ChainComplex& c) {
    require(c.graded(), ErrorKind::Input, "graded_homology: complex has no internal grading");
    validate_complex(c);
    std::map<int, std::map<int, std::size_t>> out;
    visit_field(c.ring, [&](auto f) {
        auto degs = [&](int n) -> const std::vector<int>& { return c.internal_degree[static_cast<std::size_t>(n - c.lo)]; };
        for (int n = c.lo; n <= c.hi(); ++n) {
            std::map<int, std::size_t> count;
            for (int w : degs(n)) ++count[w];
            for (auto [w, cnt] : count) {
                std::size_t r_out = n > c.lo ? block_rank(f, c.d(n), degs(n - 1), degs(n), w) : 0;
                std::size_t r_in = n < c.hi() ? block_rank(f, c.d(n + 1), degs(n), degs(n + 1), w) : 0;
                out[n][w] = cnt - r_out - r_in;
            }
        }
    });
    return out;
}

RankKernelImage rank_kernel_image(const SparseMatrix& m, const Ring& ring) {
    require(static_cast<double>(m.rows()) * static_cast<double>(m.cols()) <= 5e7, ErrorKind::Resource,
            "rank_kernel_image: matrix too large for the dense routine");
    return visit_field(ring, [&](auto f) {
        auto dense = densify(f, convert(f, m));
        RankKernelImage r;
        auto k = kernel_basis(f, dense);
        auto im = image_basis(f, dense);
        r.rank = im.rows();
        for (std::size_t i = 0; i < k.rows(); ++i) {
            std::vector<Scalar> row;
            for (std::size_t j = 0; j < k.cols(); ++j) row.push_back(f.to_scalar(k(i, j)));
            r.kernel.push_back(std::move(row));
        }
        for (std::size_t i = 0; i < im.rows(); ++i) {
            std::vector<Scalar> row;
            for (std::size_t j = 0; j < im.cols(); ++j) row.push_back(f.to_scalar(im(i, j)));
            r.image.push_back(std::move(row));
        }
        return r;
    });
}

}  // namespace cyclotome
