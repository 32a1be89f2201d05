#include "foldnet/fold_schedule.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace foldnet {

std::size_t FoldSchedule::offset(LayerIndex l) const {
    if (l < 1 || l > offsets_.size()) {
        throw std::out_of_range("layer " + std::to_string(l) + " outside 1.." +
                                std::to_string(offsets_.size()));
    }
    return offsets_[l - 1];
}

std::size_t FoldSchedule::max_offset() const noexcept {
    if (offsets_.empty()) return 1;
    return *std::max_element(offsets_.begin(), offsets_.end());
}

std::size_t skip_offset(LayerIndex l, std::size_t t) {
    if (l < 1) throw std::invalid_argument("skip_offset: layer index must be >= 1");
    if (t < 1) throw std::invalid_argument("skip_offset: fold depth must be >= 1");

    if (t == 1 || l < t) return 1;

    const std::size_t period = 2 * (t - 1);
    const std::size_t first = l % period;
    if (first >= 1 && first <= t - 1) return 2 * first;

    const std::size_t second = (first + t - 1) % period;
    return 2 * second;
}

FoldSchedule build_schedule(std::size_t num_layers, std::size_t fold_depth) {
    if (num_layers < 1) throw std::invalid_argument("build_schedule: layer count must be >= 1");
    if (fold_depth < 1) throw std::invalid_argument("build_schedule: fold depth must be >= 1");

    std::vector<std::size_t> offsets(num_layers);
    for (LayerIndex l = 1; l <= num_layers; ++l) {
        offsets[l - 1] = skip_offset(l, fold_depth);
    }
    return FoldSchedule(fold_depth, std::move(offsets));
}

}  // namespace foldnet
