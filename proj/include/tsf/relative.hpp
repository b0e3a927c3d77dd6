#ifndef TSF_RELATIVE_HPP
#define TSF_RELATIVE_HPP

#include <map>
#include <vector>

#include "tsf/lambda_space.hpp"

namespace tsf {

// Slot k holds a pin index, or kFree when the slot is unfilled.
using Pattern = std::vector<int>;
inline constexpr int kFree = -1;

int free_slots(const Pattern& p);
std::string pattern_to_string(const Pattern& p);  // "(1,*)" with 1-based pins

// Ordered independent pins plus a complement; [pins | complement] is a basis.
struct PinnedBase {
    LambdaSpace ambient;
    Matrix pins;        // ambient.dim() x n
    Matrix complement;  // ambient.dim() x d'

    // Complement defaults to standard basis vectors completing the pins.
    static PinnedBase make(const LambdaSpace& v, const Matrix& pins);
    static PinnedBase make(const LambdaSpace& v, const Matrix& pins, const Matrix& complement);
    Matrix basis() const { return pins.hstack(complement); }
};

// Residual forms on the free space, one per (tuple entry, pattern). Every
// pattern of every entry is present, including the all-filled ones whose
// residuals are the scalars of the pinned structure.
struct BlockStructure {
    FieldRef field = nullptr;
    std::size_t base_dim = 0;
    std::size_t free_dim = 0;
    PartitionTuple tuple;
    std::vector<std::map<Pattern, MultiForm>> residuals;

    bool operator==(const BlockStructure& o) const;
};

// Every pattern of the given arity over n pins, in lexicographic order with
// kFree first.
std::vector<Pattern> all_patterns(int arity, std::size_t n);

BlockStructure shift_structure(const PinnedBase& p);
// Blocks of a tensor already written in (pins, free) coordinates.
BlockStructure shift_coordinates(const LambdaSpace& v, std::size_t base_dim);
// The space on U + free with U's basis first. Throws "pinned-block-mismatch"
// when an all-filled block disagrees with U, "not-canonical" when the
// assembled tensor is not projector-fixed.
LambdaSpace unshift(const LambdaSpace& u, const BlockStructure& b);

// One installed universal block of the free space.
struct PatternBlock {
    std::size_t entry = 0;
    Pattern pattern;
    int arity = 0;            // free slots
    std::size_t blocks = 0;   // universal blocks, e^arity + e
    std::size_t offset = 0;   // first coordinate in W
    std::uint64_t weight = 1; // patterns represented by this block
};

// W = X + free space, with X's basis first (the inclusion is a prefix).
struct RelativeExtension {
    LambdaSpace base;
    LambdaSpace space;
    Matrix inclusion;
    std::size_t capacity = 0;
    bool reduced = false;  // canonical patterns only
    std::vector<PatternBlock> blocks;
    LinearEmbedding embedding() const { return {base, space, inclusion}; }
};

// True for single-row and single-column shapes, where patterns in one slot
// orbit carry proportional residuals.
bool orbit_reducible(const Partition& lambda);
// Filled slots form a prefix and the pins there are nondecreasing.
bool is_canonical_pattern(const Pattern& p);
// n! / (b! prod_a m_a!) for b free slots and pin multiplicities m_a.
std::uint64_t pattern_orbit_size(const Pattern& p);

RelativeExtension relative_universal_extension(const LambdaSpace& x, std::size_t e);
// beta: Y -> W with beta o ext = rel.inclusion; certified. CapacityError when
// dim Y - dim X exceeds the capacity.
LinearEmbedding embed_over_base(const LinearEmbedding& ext, const RelativeExtension& rel);

struct Amalgam {
    LambdaSpace space;
    LinearEmbedding y, z;
};
// W = Y + Z', Z' a complement of g(X) in Z, with no Y'-Z' cross terms.
Amalgam amalgamate(const LinearEmbedding& f, const LinearEmbedding& g);

struct BlocksDimension {
    std::uint64_t concrete = 0;   // projector-fixed tensors with zero pinned block
    std::uint64_t predicted = 0;  // from the shifted tuple, empty partition excluded
    bool ok() const { return concrete == predicted; }
};
BlocksDimension blocks_dimension_check(const PartitionTuple& tuple, std::size_t n, std::size_t free_dim);

}  // namespace tsf

#endif
