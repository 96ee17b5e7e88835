// Hochschild cohomology through normalized cochains relative to the
// idempotent family: f(a_1, ..., a_q) in e_{L(a_1)} A e_{R(a_q)}.

#include <algorithm>
#include <map>

#include "cyclotome/cyclic/homology.hpp"
#include "cyclotome/linalg/fields.hpp"

namespace cyclotome {

namespace {

// Composable tuples (a_1, ..., a_q), entries outside the idempotent family.
// For q = 0 the "tuples" are the idempotent indices themselves.
struct CochainSpace {
    int q = 0;
    std::vector<std::uint32_t> data;  // q = 0: one slot holding the idempotent position
    std::vector<std::size_t> offsets;  // start of each tuple's output block, size + 1

    std::size_t width() const { return q == 0 ? 1 : static_cast<std::size_t>(q); }
    std::size_t size() const { return data.size() / width(); }
    const std::uint32_t* tuple(std::size_t i) const { return data.data() + i * width(); }
    long find(const std::uint32_t* t) const {
        const std::size_t len = width();
        std::size_t lo = 0, hi = size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (std::lexicographical_compare(tuple(mid), tuple(mid) + len, t, t + len)) lo = mid + 1;
            else hi = mid;
        }
        if (lo < size() && std::equal(t, t + len, tuple(lo))) return static_cast<long>(lo);
        return -1;
    }
    std::size_t dim() const { return offsets.back(); }
};

class Cochains {
public:
    Cochains(const Algebra& a, std::size_t max_cell) : a_(a), max_cell_(max_cell) {
        const std::size_t n = a.dim();
        const std::size_t m = a.idempotents.size();
        in_s_.assign(n, 0);
        for (auto s : a.idempotents) in_s_[s] = 1;
        outputs_.assign(m, std::vector<std::vector<std::uint32_t>>(m));
        by_left_.assign(m, {});
        for (std::uint32_t b = 0; b < n; ++b) {
            outputs_[a.idem_left[b]][a.idem_right[b]].push_back(b);
            if (!in_s_[b]) by_left_[a.idem_left[b]].push_back(b);
        }
    }

    const CochainSpace& space(int q) {
        auto it = spaces_.find(q);
        if (it != spaces_.end()) return it->second;
        CochainSpace s;
        s.q = q;
        s.offsets.push_back(0);
        auto push = [&](const std::vector<std::uint32_t>& t, int l, int r) {
            s.data.insert(s.data.end(), t.begin(), t.end());
            s.offsets.push_back(s.offsets.back() + outputs_[l][r].size());
            if (s.offsets.back() > max_cell_)
                fail(ErrorKind::Resource, "cochain space C^" + std::to_string(q) + " exceeds the cell bound " +
                                              std::to_string(max_cell_));
        };
        if (q == 0) {
            for (std::uint32_t i = 0; i < a_.idempotents.size(); ++i) push({i}, i, i);
        } else {
            std::vector<std::uint32_t> t(q);
            auto rec = [&](auto&& self, int slot) -> void {
                if (slot == q) {
                    push(t, a_.idem_left[t[0]], a_.idem_right[t[q - 1]]);
                    return;
                }
                if (slot == 0) {
                    for (std::uint32_t c = 0; c < a_.dim(); ++c)
                        if (!in_s_[c]) {
                            t[0] = c;
                            self(self, 1);
                        }
                } else {
                    for (std::uint32_t c : by_left_[a_.idem_right[t[slot - 1]]]) {
                        t[slot] = c;
                        self(self, slot + 1);
                    }
                }
            };
            rec(rec, 0);
        }
        return spaces_.emplace(q, std::move(s)).first->second;
    }

    // delta^q : C^q -> C^{q+1}
    SparseMatrix delta(int q) {
        const CochainSpace& src = space(q);
        const CochainSpace& dst = space(q + 1);
        const Ring& ring = a_.ring;
        std::vector<Triplet> trip;
        auto col_of = [&](std::size_t tuple, std::uint32_t c) {
            const std::uint32_t* t = src.tuple(tuple);
            const auto& outs = q == 0 ? outputs_[t[0]][t[0]] : outputs_[a_.idem_left[t[0]]][a_.idem_right[t[q - 1]]];
            auto it = std::lower_bound(outs.begin(), outs.end(), c);
            return src.offsets[tuple] + static_cast<std::size_t>(it - outs.begin());
        };
        auto outputs_of = [&](std::size_t tuple) -> const std::vector<std::uint32_t>& {
            const std::uint32_t* t = src.tuple(tuple);
            return q == 0 ? outputs_[t[0]][t[0]] : outputs_[a_.idem_left[t[0]]][a_.idem_right[t[q - 1]]];
        };
        std::vector<std::uint32_t> sub(std::max(q, 1));
        for (std::size_t j = 0; j < dst.size(); ++j) {
            const std::uint32_t* t = dst.tuple(j);
            const auto& row_outs = outputs_[a_.idem_left[t[0]]][a_.idem_right[t[q]]];
            auto row_of = [&](std::uint32_t k) {
                auto it = std::lower_bound(row_outs.begin(), row_outs.end(), k);
                return dst.offsets[j] + static_cast<std::size_t>(it - row_outs.begin());
            };
            // a_1 f(a_2, ..., a_{q+1})
            {
                if (q == 0) sub[0] = static_cast<std::uint32_t>(a_.idem_right[t[0]]);
                else std::copy(t + 1, t + q + 1, sub.begin());
                const long i = src.find(sub.data());
                if (i >= 0)
                    for (std::uint32_t c : outputs_of(i))
                        for (const auto& e : a_.product(t[0], c)) trip.push_back({row_of(e.index), col_of(i, c), e.value});
            }
            // inner faces
            for (int i = 0; i < q; ++i) {
                const Scalar sign = i % 2 ? 1 : -1;  // (-1)^{i+1} for the product a_{i+1} a_{i+2}
                for (const auto& e : a_.product(t[i], t[i + 1])) {
                    if (in_s_[e.index]) continue;
                    std::copy(t, t + i, sub.begin());
                    sub[i] = e.index;
                    std::copy(t + i + 2, t + q + 1, sub.begin() + i + 1);
                    const long k = src.find(sub.data());
                    if (k < 0) fail(ErrorKind::Internal, "cochain face missing");
                    for (std::uint32_t c : row_outs) trip.push_back({row_of(c), col_of(k, c), sign * e.value});
                }
            }
            // (-1)^{q+1} f(a_1, ..., a_q) a_{q+1}
            {
                if (q == 0) sub[0] = static_cast<std::uint32_t>(a_.idem_left[t[0]]);
                else std::copy(t, t + q, sub.begin());
                const long i = src.find(sub.data());
                const Scalar sign = q % 2 ? 1 : -1;
                if (i >= 0)
                    for (std::uint32_t c : outputs_of(i))
                        for (const auto& e : a_.product(c, t[q])) trip.push_back({row_of(e.index), col_of(i, c), sign * e.value});
            }
        }
        return sparse_from_triplets(dst.dim(), src.dim(), std::move(trip), ring);
    }

private:
    const Algebra& a_;
    std::size_t max_cell_;
    std::vector<char> in_s_;
    std::vector<std::vector<std::vector<std::uint32_t>>> outputs_;
    std::vector<std::vector<std::uint32_t>> by_left_;
    std::map<int, CochainSpace> spaces_;
};

}  // namespace

HomologyTable hochschild_cohomology(const Algebra& a, int N) {
    require(!a.differential && !a.sign_graded, ErrorKind::UnsupportedRing,
            "Hochschild cohomology is implemented for ungraded (or evenly graded) algebras only");
    require(a.truncation < 0, ErrorKind::UnsupportedRing, "Hochschild cohomology of a truncated algebra is unsupported");
    const Algebra A = chain_ready(a);
    Cochains cochains(A, ChainOptions{}.max_cell);
    // homological indexing C_{-q} = C^q
    ChainComplex c;
    c.ring = A.ring;
    c.lo = -(N + 1);
    c.closed_below = false;
    c.closed_above = true;
    for (int n = c.lo; n <= 0; ++n) c.dims.push_back(cochains.space(-n).dim());
    for (int n = c.lo + 1; n <= 0; ++n) c.diffs.push_back(cochains.delta(-n));
    const auto groups = homology_of_complex(c);
    HomologyTable t;
    t.ring = A.ring;
    for (const auto& g : groups)
        if (-g.degree <= N) t.set({"HH^", -g.degree, -1, -1}, g.module);
    return t;
}

}  // namespace cyclotome
