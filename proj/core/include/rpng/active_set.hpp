#pragma once

#include <cstdint>
#include <vector>

namespace rpng {

// Indexable set of array indices with O(1) insert/erase/uniform-pick,
// used by the event-driven engines to track non-empty sites.
class ActiveSet {
public:
    explicit ActiveSet(std::size_t capacity) : pos_(capacity, -1) {}

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    std::uint32_t at(std::size_t i) const { return items_[i]; }
    bool contains(std::size_t idx) const { return pos_[idx] >= 0; }

    void grow(std::size_t capacity) {
        if (capacity > pos_.size()) pos_.resize(capacity, -1);
    }

    // Make membership of idx match `active` (swap-remove on erase).
    void sync(std::size_t idx, bool active) {
        const std::int32_t p = pos_[idx];
        if (active == (p >= 0)) return;
        if (active) {
            pos_[idx] = static_cast<std::int32_t>(items_.size());
            items_.push_back(static_cast<std::uint32_t>(idx));
        } else {
            const std::uint32_t last = items_.back();
            items_[static_cast<std::size_t>(p)] = last;
            pos_[last] = p;
            items_.pop_back();
            pos_[idx] = -1;
        }
    }

private:
    std::vector<std::uint32_t> items_;
    std::vector<std::int32_t> pos_;
};

} // namespace rpng
