#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "taut/keys.hpp"
#include "taut/rational.hpp"

namespace taut {

/// Thrown when a query exceeds the configured recursion or memo caps.
/// Signals "beyond desk scale", not a wrong answer.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Size-bounded, thread-safe map TauKappaKey -> Rational.
///
/// Lookups take a shared lock; inserts an exclusive one.  Concurrent
/// computation of the same key is allowed — both threads produce the same
/// value and the second insert is a no-op — which keeps the compute path
/// lock-free.  Exceeding the size cap raises resource_limit_error instead
/// of growing without bound.
class MemoStore {
public:
    explicit MemoStore(std::size_t max_entries = 4'000'000) : max_entries_(max_entries) {}

    std::optional<Rational> find(const TauKappaKey& key) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void insert(const TauKappaKey& key, Rational value) {
        std::unique_lock lock(mutex_);
        if (map_.size() >= max_entries_)
            throw resource_limit_error("memo store exceeded " +
                                       std::to_string(max_entries_) + " entries");
        map_.emplace(key, std::move(value));
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

    std::size_t max_entries() const { return max_entries_; }

    void clear() {
        std::unique_lock lock(mutex_);
        map_.clear();
    }

    /// Snapshot of all entries (for persistence / inspection).
    std::vector<std::pair<TauKappaKey, Rational>> snapshot() const {
        std::shared_lock lock(mutex_);
        return {map_.begin(), map_.end()};
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<TauKappaKey, Rational, TauKappaKeyHash> map_;
    std::size_t max_entries_;
};

}  // namespace taut
