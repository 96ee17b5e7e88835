#include "cyclotome/algebra/group.hpp"

#include <algorithm>
#include <numeric>

#include "cyclotome/linalg/error.hpp"

namespace cyclotome {

GroupTable::GroupTable(std::vector<std::string> labels, std::vector<std::vector<int>> table)
    : labels_(std::move(labels)), table_(std::move(table)) {
    const int n = static_cast<int>(labels_.size());
    require(n > 0, ErrorKind::Validation, "group: empty element list");
    require(static_cast<int>(table_.size()) == n, ErrorKind::Validation, "group: table has wrong number of rows");
    for (const auto& row : table_) {
        require(static_cast<int>(row.size()) == n, ErrorKind::Validation, "group: table row has wrong length");
        for (int x : row) require(x >= 0 && x < n, ErrorKind::Validation, "group: product out of range");
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) identity_ = e;
    }
    require(identity_ >= 0, ErrorKind::Validation, "group: no identity element");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    fail(ErrorKind::Validation, "group: associativity fails on (" + labels_[a] + ", " + labels_[b] + ", " +
                                                    labels_[c] + ")");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        int found = 0;
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == identity_) {
                inverse_[a] = b;
                ++found;
            }
        require(found == 1 && table_[inverse_[a]][a] == identity_, ErrorKind::Validation,
                "group: element " + labels_[a] + " has no unique inverse");
    }
    class_of_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        if (class_of_[a] >= 0) continue;
        std::vector<int> cls;
        for (int g = 0; g < n; ++g) cls.push_back(conj(g, a));
        std::sort(cls.begin(), cls.end());
        cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
        for (int x : cls) class_of_[x] = static_cast<int>(classes_.size());
        classes_.push_back(std::move(cls));
    }
}

int GroupTable::order(int a) const {
    int k = 1;
    for (int x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
}

int GroupTable::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    require(it != labels_.end(), ErrorKind::Input, "group: unknown element " + label);
    return static_cast<int>(it - labels_.begin());
}

bool GroupTable::abelian() const {
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

GroupTable GroupTable::cyclic(int n) {
    require(n >= 1, ErrorKind::Input, "cyclic group order must be positive");
    std::vector<std::string> labels;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        labels.push_back(i == 0 ? "e" : i == 1 ? "g" : "g^" + std::to_string(i));
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    }
    return GroupTable(std::move(labels), std::move(t));
}

GroupTable GroupTable::symmetric(int n) {
    require(n >= 1 && n <= 4, ErrorKind::Input, "symmetric group preset supports n <= 4");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const int m = static_cast<int>(perms.size());
    auto index = [&](const std::vector<int>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<std::string> labels;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i) {
        std::string s;
        for (int x : perms[i]) s += std::to_string(x + 1);
        labels.push_back(i == 0 ? "e" : s);
        for (int j = 0; j < m; ++j) {
            // (a*b)(x) = a(b(x))
            std::vector<int> c(n);
            for (int x = 0; x < n; ++x) c[x] = perms[i][perms[j][x]];
            t[i][j] = index(c);
        }
    }
    return GroupTable(std::move(labels), std::move(t));
}

GroupTable GroupTable::dihedral(int n) {
    require(n >= 1, ErrorKind::Input, "dihedral group needs n >= 1");
    // elements r^i s^j encoded as i + n*j
    const int m = 2 * n;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a) {
        int i = a % n, j = a / n;
        std::string l = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
        if (j) l += "s";
        labels.push_back(l.empty() ? "e" : l);
        for (int b = 0; b < m; ++b) {
            int k = b % n, l2 = b / n;
            // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j+l)
            int rot = ((i + (j ? -k : k)) % n + n) % n;
            t[a][b] = rot + n * ((j + l2) % 2);
        }
    }
    return GroupTable(std::move(labels), std::move(t));
}

GroupTable GroupTable::direct_product(const GroupTable& a, const GroupTable& b) {
    const int na = a.size(), nb = b.size();
    std::vector<std::string> labels;
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    for (int x = 0; x < na * nb; ++x) {
        labels.push_back("(" + a.label(x / nb) + "," + b.label(x % nb) + ")");
        for (int y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    }
    return GroupTable(std::move(labels), std::move(t));
}

GroupTable group_preset(const std::string& name) {
    if (name == "trivial") return GroupTable::trivial();
    require(name.size() >= 2, ErrorKind::Input, "unknown group preset '" + name + "'");
    int n = 0;
    try {
        n = std::stoi(name.substr(1));
    } catch (...) {
        fail(ErrorKind::Input, "unknown group preset '" + name + "'");
    }
    switch (name[0]) {
    case 'C': return GroupTable::cyclic(n);
    case 'S': return GroupTable::symmetric(n);
    case 'D': return GroupTable::dihedral(n);
    default: fail(ErrorKind::Input, "unknown group preset '" + name + "'");
    }
}

}  // namespace cyclotome
