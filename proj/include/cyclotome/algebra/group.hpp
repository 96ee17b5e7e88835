#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cyclotome {

class GroupTable {
public:
    GroupTable() : GroupTable({"e"}, {{0}}) {}
    // Validates closure, associativity, identity and inverses.
    GroupTable(std::vector<std::string> labels, std::vector<std::vector<int>> table);

    static GroupTable trivial() { return GroupTable(); }
    static GroupTable cyclic(int n);
    static GroupTable symmetric(int n);  // n <= 4
    static GroupTable dihedral(int n);   // order 2n
    static GroupTable direct_product(const GroupTable& a, const GroupTable& b);

    int size() const noexcept { return static_cast<int>(labels_.size()); }
    int identity() const noexcept { return identity_; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inverse_[a]; }
    int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
    int order(int a) const;
    const std::string& label(int a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<std::vector<int>>& table() const noexcept { return table_; }
    int index_of(const std::string& label) const;

    // Classes sorted by their smallest element; class_of maps elements to class index.
    const std::vector<std::vector<int>>& conjugacy_classes() const noexcept { return classes_; }
    int class_of(int g) const { return class_of_[g]; }
    bool abelian() const;

    friend bool operator==(const GroupTable& a, const GroupTable& b) { return a.table_ == b.table_; }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int identity_ = 0;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
};

// Named presets: "trivial", "C<n>", "S<n>", "D<n>".
GroupTable group_preset(const std::string& name);

}  // namespace cyclotome
