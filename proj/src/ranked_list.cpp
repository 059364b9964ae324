#include "rankrobust/ranked_list.hpp"

#include <fmt/format.h>

#include "rankrobust/error.hpp"

namespace rankrobust {

RankedList::RankedList(std::vector<ItemId> items) : items_(std::move(items)) {
    if (items_.empty()) {
        throw InvalidInput("ranked list must contain at least one item");
    }
    index_.reserve(items_.size());
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (!index_.emplace(items_[i], i + 1).second) {
            throw InvalidInput(fmt::format("duplicate item '{}' in ranked list", items_[i]));
        }
    }
}

RankedList::RankedList(std::initializer_list<ItemId> items)
    : RankedList(std::vector<ItemId>(items)) {}

std::optional<std::size_t> RankedList::rank_of(const ItemId& item) const {
    if (auto it = index_.find(item); it != index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

}  // namespace rankrobust
