#include "arrowlab/phase_space.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace arrowlab {

PhaseSpace::PhaseSpace(std::uint32_t cell_count) : cell_count_(cell_count) {
    if (cell_count == 0) {
        throw std::invalid_argument("PhaseSpace: cell_count must be >= 1");
    }
}

RegionSet::RegionSet(PhaseSpace space, std::vector<Cell> cells)
    : space_(space), cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end()) {
        throw std::invalid_argument("RegionSet: duplicate cell identifier");
    }
    if (!cells_.empty() && cells_.back() >= space_.cell_count()) {
        throw std::invalid_argument(
            "RegionSet: cell identifier outside the phase space");
    }
}

RegionSet RegionSet::empty(PhaseSpace space) { return {space, {}}; }

RegionSet RegionSet::full(PhaseSpace space) {
    std::vector<Cell> cells(space.cell_count());
    std::iota(cells.begin(), cells.end(), Cell{0});
    return {space, std::move(cells)};
}

bool RegionSet::contains(Cell cell) const {
    return std::binary_search(cells_.begin(), cells_.end(), cell);
}

std::uint64_t measure(const RegionSet& region) { return region.measure(); }

RegionSet intersect(const RegionSet& a, const RegionSet& b) {
    if (!(a.space() == b.space())) {
        throw std::invalid_argument("incompatible spaces");
    }
    std::vector<Cell> out;
    out.reserve(std::min(a.measure(), b.measure()));
    std::set_intersection(a.cells().begin(), a.cells().end(),
                          b.cells().begin(), b.cells().end(),
                          std::back_inserter(out));
    return {a.space(), std::move(out)};
}

RegionSet complement(const RegionSet& region) {
    std::vector<Cell> out;
    out.reserve(region.space().cell_count() - region.measure());
    auto inside = region.cells().begin();
    for (Cell c = 0; c < region.space().cell_count(); ++c) {
        if (inside != region.cells().end() && *inside == c) {
            ++inside;
        } else {
            out.push_back(c);
        }
    }
    return {region.space(), std::move(out)};
}

PermutationDynamics::PermutationDynamics(PhaseSpace space,
                                         std::vector<Cell> forward_map)
    : space_(space), forward_(std::move(forward_map)) {
    const std::uint32_t n = space_.cell_count();
    if (forward_.size() != n) {
        throw std::invalid_argument(
            "PermutationDynamics: map size does not match the phase space");
    }
    inverse_.assign(n, n); // n marks "no preimage yet"
    for (Cell c = 0; c < n; ++c) {
        const Cell image = forward_[c];
        if (image >= n || inverse_[image] != n) {
            throw std::invalid_argument(
                "PermutationDynamics: map is not a bijection on cells");
        }
        inverse_[image] = c;
    }
}

PermutationDynamics PermutationDynamics::identity(PhaseSpace space) {
    std::vector<Cell> map(space.cell_count());
    std::iota(map.begin(), map.end(), Cell{0});
    return {space, std::move(map)};
}

PermutationDynamics PermutationDynamics::cyclic_shift(PhaseSpace space,
                                                      std::int64_t offset) {
    const std::int64_t n = space.cell_count();
    const std::int64_t shift = ((offset % n) + n) % n;
    std::vector<Cell> map(space.cell_count());
    for (std::int64_t c = 0; c < n; ++c) {
        map[static_cast<std::size_t>(c)] = static_cast<Cell>((c + shift) % n);
    }
    return {space, std::move(map)};
}

Cell PermutationDynamics::apply(Cell cell, std::int64_t steps) const {
    const std::vector<Cell>& map = steps >= 0 ? forward_ : inverse_;
    std::int64_t remaining = steps >= 0 ? steps : -steps;
    Cell current = cell;
    while (remaining-- > 0) {
        current = map[current];
    }
    return current;
}

RegionSet PermutationDynamics::evolve(const RegionSet& region,
                                      std::int64_t steps) const {
    if (!(region.space() == space_)) {
        throw std::invalid_argument("incompatible spaces");
    }
    std::vector<Cell> out;
    out.reserve(region.measure());
    for (Cell c : region.cells()) {
        out.push_back(apply(c, steps));
    }
    return {space_, std::move(out)};
}

RegionSet evolve(const RegionSet& region, const PermutationDynamics& dynamics,
                 std::int64_t steps) {
    return dynamics.evolve(region, steps);
}

PermutationDynamics random_permutation(std::uint64_t seed, std::uint32_t n) {
    if (n == 0) {
        throw std::invalid_argument("random_permutation: n must be >= 1");
    }
    std::vector<Cell> map(n);
    std::iota(map.begin(), map.end(), Cell{0});
    Rng rng(seed);
    for (std::uint32_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::uint32_t>(rng.below(i + 1));
        std::swap(map[i], map[j]);
    }
    return {PhaseSpace(n), std::move(map)};
}

MacrostatePartition::MacrostatePartition(std::vector<std::string> labels,
                                         std::vector<RegionSet> blocks)
    : space_(blocks.empty() ? throw std::invalid_argument(
                                  "MacrostatePartition: no blocks")
                            : blocks.front().space()),
      labels_(std::move(labels)), blocks_(std::move(blocks)) {
    if (labels_.size() != blocks_.size()) {
        throw std::invalid_argument(
            "MacrostatePartition: one label per block required");
    }
    const std::uint32_t n = space_.cell_count();
    cell_to_block_.assign(n, static_cast<std::uint32_t>(blocks_.size()));
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (!(blocks_[b].space() == space_)) {
            throw std::invalid_argument("incompatible spaces");
        }
        for (Cell c : blocks_[b].cells()) {
            if (cell_to_block_[c] != blocks_.size()) {
                throw std::invalid_argument(
                    "MacrostatePartition: blocks are not pairwise disjoint");
            }
            cell_to_block_[c] = static_cast<std::uint32_t>(b);
        }
    }
    for (Cell c = 0; c < n; ++c) {
        if (cell_to_block_[c] == blocks_.size()) {
            throw std::invalid_argument(
                "MacrostatePartition: blocks do not cover the phase space");
        }
    }
}

MacrostatePartition MacrostatePartition::equal_blocks(
    PhaseSpace space, std::size_t block_count) {
    if (block_count == 0 || space.cell_count() % block_count != 0) {
        throw std::invalid_argument(
            "MacrostatePartition: block_count must divide the cell count");
    }
    const std::uint32_t width =
        space.cell_count() / static_cast<std::uint32_t>(block_count);
    std::vector<std::string> labels;
    std::vector<RegionSet> blocks;
    for (std::size_t b = 0; b < block_count; ++b) {
        std::vector<Cell> cells(width);
        std::iota(cells.begin(), cells.end(),
                  static_cast<Cell>(b) * width);
        labels.push_back("D" + std::to_string(b + 1));
        blocks.emplace_back(space, std::move(cells));
    }
    return {std::move(labels), std::move(blocks)};
}

std::size_t MacrostatePartition::block_of_cell(Cell cell) const {
    if (cell >= space_.cell_count()) {
        throw std::invalid_argument(
            "MacrostatePartition: cell outside the phase space");
    }
    return cell_to_block_[cell];
}

std::size_t MacrostatePartition::index_of_label(
    const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            return i;
        }
    }
    throw std::invalid_argument("MacrostatePartition: unknown label \"" +
                                label + "\"");
}

} // namespace arrowlab
