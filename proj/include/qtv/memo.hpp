#pragma once

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace qtv {

// Concurrent insert-or-read memo table. All writers for a given key store
// the same value (computed from the same immutable tables at the same
// precision), so a lost race just repeats identical work: last writer wins.
template <typename K, typename V, typename Hash = std::hash<K>>
class ConcurrentMemo {
public:
    bool lookup(const K& key, V& out) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }

    void store(const K& key, V value) {
        std::unique_lock lock(mutex_);
        map_.insert_or_assign(key, std::move(value));
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

    void clear() {
        std::unique_lock lock(mutex_);
        map_.clear();
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<K, V, Hash> map_;
};

}  // namespace qtv
