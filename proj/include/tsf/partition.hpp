#ifndef TSF_PARTITION_HPP
#define TSF_PARTITION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tsf {

// Weakly decreasing positive parts; the empty sequence is the empty partition.
// Ordering is by size, then lexicographic on parts: the fixed flattening order.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return size_; }
    int rows() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int operator[](int i) const { return i < rows() ? parts_[i] : 0; }
    bool contains(const Partition& mu) const;
    Partition conjugate() const;

    std::string to_string() const;  // "(2,1)"; the empty partition is "()"
    static Partition parse(const std::string& text);

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Partition& o) const { return !(*this == o); }
    bool operator<(const Partition& o) const {
        return size_ != o.size_ ? size_ < o.size_ : parts_ < o.parts_;
    }

private:
    std::vector<int> parts_;
    int size_ = 0;
};

using PartitionTuple = std::vector<Partition>;

bool is_pure(const PartitionTuple& t);
std::string tuple_to_string(const PartitionTuple& t);  // "[(3),(2,1)]"
PartitionTuple parse_tuple(const std::string& text);
int max_size(const PartitionTuple& t);

std::vector<Partition> partitions_of(int n);

// Rows of 1..n, strictly increasing along rows and down columns.
struct StandardTableau {
    Partition shape;
    std::vector<std::vector<int>> rows;
    bool operator==(const StandardTableau& o) const { return rows == o.rows; }
    bool operator<(const StandardTableau& o) const { return rows < o.rows; }
    std::string to_string() const;
};

std::vector<StandardTableau> standard_tableaux(const Partition& lambda);
// Row reading: first row 1..lambda_1, second row lambda_1+1.., and so on.
StandardTableau canonical_tableau(const Partition& lambda);

// dim S_lambda(k^n), by the hook-content formula.
std::uint64_t schur_dim(const Partition& lambda, int n);
// c^lambda_{mu nu} by enumerating LR skew tableaux of shape lambda/mu and content nu.
std::uint64_t lr_coefficient(const Partition& mu, const Partition& nu, const Partition& lambda);

// Multiplicities of sh_n(tuple); zero multiplicities are omitted.
std::map<Partition, std::uint64_t> shift_tuple(const PartitionTuple& t, int n);
// Drops the empty partition.
std::map<Partition, std::uint64_t> pure_part(const std::map<Partition, std::uint64_t>& mult);
// Degree ascending, lexicographic parts, then copy index.
PartitionTuple flatten(const std::map<Partition, std::uint64_t>& mult);

}  // namespace tsf

#endif
