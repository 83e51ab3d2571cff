#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>
#include <vector>

namespace tetris {

// Bounded single-producer hand-off for the model stream. push() blocks while
// the queue is full; pop() blocks until a model arrives or close() is called.
class ModelQueue {
public:
    explicit ModelQueue(std::size_t capacity) : capacity_(capacity ? capacity : 1) {}

    void push(std::vector<int> model)
    {
        std::unique_lock lock(mutex_);
        not_full_.wait(lock, [&] { return items_.size() < capacity_ || closed_; });
        if (closed_)
            return;
        items_.push_back(std::move(model));
        not_empty_.notify_one();
    }

    std::optional<std::vector<int>> pop()
    {
        std::unique_lock lock(mutex_);
        not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
        if (items_.empty())
            return std::nullopt;
        auto model = std::move(items_.front());
        items_.pop_front();
        not_full_.notify_one();
        return model;
    }

    // Wakes everyone; queued models can still be drained by pop().
    void close()
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
        not_empty_.notify_all();
        not_full_.notify_all();
    }

private:
    std::size_t capacity_;
    std::mutex mutex_;
    std::condition_variable not_full_;
    std::condition_variable not_empty_;
    std::deque<std::vector<int>> items_;
    bool closed_ = false;
};

} // namespace tetris
