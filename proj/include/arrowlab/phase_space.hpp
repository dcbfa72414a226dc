#pragma once

#include "arrowlab/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace arrowlab {

using Cell = std::uint32_t;

/// A finite phase space of N unit-measure cells, identified 0..N-1.
/// Total measure is N (counting measure).
class PhaseSpace {
  public:
    explicit PhaseSpace(std::uint32_t cell_count);

    std::uint32_t cell_count() const { return cell_count_; }

    friend bool operator==(PhaseSpace a, PhaseSpace b) {
        return a.cell_count_ == b.cell_count_;
    }

  private:
    std::uint32_t cell_count_;
};

/// A subset of one phase space's cells; measure is exact cardinality.
/// Cells are kept sorted and deduplicated, so set operations are
/// O(|A| + |B|) merges. Immutable after construction.
class RegionSet {
  public:
    RegionSet(PhaseSpace space, std::vector<Cell> cells);

    static RegionSet empty(PhaseSpace space);
    static RegionSet full(PhaseSpace space);

    PhaseSpace space() const { return space_; }
    const std::vector<Cell>& cells() const { return cells_; }
    std::uint64_t measure() const { return cells_.size(); }
    bool contains(Cell cell) const;

    friend bool operator==(const RegionSet& a, const RegionSet& b) {
        return a.space_ == b.space_ && a.cells_ == b.cells_;
    }

  private:
    PhaseSpace space_;
    std::vector<Cell> cells_;
};

/// Phase space volume of a region (exact integer).
std::uint64_t measure(const RegionSet& region);

/// Exact set intersection. Throws std::invalid_argument("incompatible
/// spaces") when the operands live in different phase spaces.
RegionSet intersect(const RegionSet& a, const RegionSet& b);

RegionSet complement(const RegionSet& region);

/// An invertible, measure-preserving evolution map: a bijection on cells.
/// Bijectivity is checked at construction, which makes every iterate
/// measure-preserving by construction rather than by approximation.
class PermutationDynamics {
  public:
    PermutationDynamics(PhaseSpace space, std::vector<Cell> forward_map);

    static PermutationDynamics identity(PhaseSpace space);
    static PermutationDynamics cyclic_shift(PhaseSpace space,
                                            std::int64_t offset);

    PhaseSpace space() const { return space_; }
    const std::vector<Cell>& forward_map() const { return forward_; }

    /// Position of `cell` after `steps` applications of the map
    /// (inverse map for negative steps).
    Cell apply(Cell cell, std::int64_t steps) const;

    RegionSet evolve(const RegionSet& region, std::int64_t steps) const;

  private:
    PhaseSpace space_;
    std::vector<Cell> forward_;
    std::vector<Cell> inverse_;
};

/// Image of a region under the t-fold iterated map; t < 0 runs the
/// inverse flow. Measure is preserved exactly.
RegionSet evolve(const RegionSet& region, const PermutationDynamics& dynamics,
                 std::int64_t steps);

/// Uniformly distributed permutation from a deterministic, seedable
/// generator. Same seed, same permutation.
PermutationDynamics random_permutation(std::uint64_t seed, std::uint32_t n);

/// An ordered coarse-graining of the phase space: named blocks that are
/// pairwise disjoint and jointly exhaustive, so every microstate belongs
/// to exactly one macrostate.
class MacrostatePartition {
  public:
    MacrostatePartition(std::vector<std::string> labels,
                        std::vector<RegionSet> blocks);

    /// Equal-measure blocks of consecutive cells ("all macrostates have
    /// the same measure" mode); requires block_count to divide N.
    static MacrostatePartition equal_blocks(PhaseSpace space,
                                            std::size_t block_count);

    PhaseSpace space() const { return space_; }
    std::size_t size() const { return blocks_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const RegionSet& block(std::size_t index) const { return blocks_[index]; }
    const std::vector<RegionSet>& blocks() const { return blocks_; }

    /// Index of the block containing `cell` (O(1) lookup).
    std::size_t block_of_cell(Cell cell) const;

    /// Index of the block with the given label; throws if absent.
    std::size_t index_of_label(const std::string& label) const;

  private:
    PhaseSpace space_;
    std::vector<std::string> labels_;
    std::vector<RegionSet> blocks_;
    std::vector<std::uint32_t> cell_to_block_;
};

} // namespace arrowlab
