#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace rankrobust {

using ItemId = std::string;

/// An ordered top-n result list. The element at index j has rank j + 1.
///
/// Construction validates the invariants: at least one item and no
/// duplicate ids. A position index is kept alongside the items so rank
/// lookups are O(1).
class RankedList {
public:
    explicit RankedList(std::vector<ItemId> items);
    RankedList(std::initializer_list<ItemId> items);

    [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
    [[nodiscard]] std::span<const ItemId> items() const noexcept { return items_; }
    [[nodiscard]] const ItemId& at_rank(std::size_t rank) const { return items_.at(rank - 1); }

    /// 1-based rank of `item`, or nullopt when absent.
    [[nodiscard]] std::optional<std::size_t> rank_of(const ItemId& item) const;
    [[nodiscard]] bool contains(const ItemId& item) const { return index_.contains(item); }

    friend bool operator==(const RankedList& a, const RankedList& b) { return a.items_ == b.items_; }

private:
    std::vector<ItemId> items_;
    std::unordered_map<ItemId, std::size_t> index_;
};

}  // namespace rankrobust
