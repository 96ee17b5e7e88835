#include "cyclotome/linalg/sparse.hpp"

#include "cyclotome/linalg/error.hpp"

namespace cyclotome {

SparseMatrix sparse_from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries, const Ring& ring) {
    SparseMatrix m(rows, cols);
    for (auto& t : entries) {
        require(t.row < rows && t.col < cols, ErrorKind::Input, "sparse matrix entry out of range");
        m.col(t.col).push_back({static_cast<std::uint32_t>(t.row), ring.normalize(t.value)});
    }
    for (std::size_t j = 0; j < cols; ++j) {
        auto& c = m.col(j);
        std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
        std::size_t out = 0;
        for (std::size_t i = 0; i < c.size();) {
            Scalar acc = c[i].value;
            std::size_t k = i + 1;
            for (; k < c.size() && c[k].index == c[i].index; ++k) acc = ring.add(acc, c[k].value);
            if (acc != 0) c[out++] = {c[i].index, acc};
            i = k;
        }
        c.resize(out);
    }
    return m;
}

std::vector<Triplet> sparse_triplets(const SparseMatrix& m) {
    std::vector<Triplet> out;
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.col(j)) out.push_back({e.index, j, e.value});
    std::stable_sort(out.begin(), out.end(),
                     [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    return out;
}

SparseMatrix sparse_identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.col(i).push_back({static_cast<std::uint32_t>(i), Scalar(1)});
    return m;
}

Scalar sparse_at(const SparseMatrix& m, std::size_t row, std::size_t col) {
    for (const auto& e : m.col(col))
        if (e.index == row) return e.value;
    return 0;
}

}  // namespace cyclotome
