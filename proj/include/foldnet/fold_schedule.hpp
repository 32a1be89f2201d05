#pragma once

#include <cstddef>
#include <vector>

namespace foldnet {

// Layer indices are 1-based; index 0 is the network input.
using LayerIndex = std::size_t;

/// Skip wiring of a folded residual chain: layer l adds the output of layer
/// l - offset(l) to its own transformation.
class FoldSchedule {
public:
    FoldSchedule() = default;

    std::size_t fold_depth() const noexcept { return fold_depth_; }
    std::size_t num_layers() const noexcept { return offsets_.size(); }

    /// Offset for 1-based layer l. Throws std::out_of_range outside 1..L.
    std::size_t offset(LayerIndex l) const;

    /// Offsets for layers 1..L, in order.
    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }

    /// Largest offset used anywhere in the schedule (1 for an empty or plain
    /// residual schedule).
    std::size_t max_offset() const noexcept;

    friend bool operator==(const FoldSchedule&, const FoldSchedule&) = default;

private:
    friend FoldSchedule build_schedule(std::size_t, std::size_t);

    FoldSchedule(std::size_t fold_depth, std::vector<std::size_t> offsets)
        : fold_depth_(fold_depth), offsets_(std::move(offsets)) {}

    std::size_t fold_depth_ = 1;
    std::vector<std::size_t> offsets_;
};

/// Layer difference i(l) for fold depth t.
///
/// t = 1 reduces to the plain residual rule (always 1). For l < t the chain is
/// still warming up and the offset is 1. Otherwise, with period p = 2(t-1):
/// r = l mod p; if 1 <= r <= t-1 the offset is 2r, else 2((r + t - 1) mod p).
///
/// The result always satisfies 1 <= i <= max(1, 2(t-1)) and l - i >= 0.
/// Throws std::invalid_argument when l < 1 or t < 1.
std::size_t skip_offset(LayerIndex l, std::size_t t);

/// Offsets for layers 1..num_layers. Throws std::invalid_argument when
/// num_layers < 1 or fold_depth < 1.
FoldSchedule build_schedule(std::size_t num_layers, std::size_t fold_depth);

}  // namespace foldnet
