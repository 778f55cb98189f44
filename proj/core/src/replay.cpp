#include "aastar/replay.hpp"

#include <stdexcept>
#include <unordered_set>

namespace aastar {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0)
        throw std::invalid_argument("ReplayBuffer: capacity must be positive");
    store_.reserve(capacity);
}

void ReplayBuffer::push(Transition t) {
    if (store_.size() < capacity_) {
        store_.push_back(std::move(t));
    } else {
        store_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
}

TransitionBatch ReplayBuffer::sample(int batch_size, Rng &rng) const {
    if (batch_size <= 0 || static_cast<std::size_t>(batch_size) > store_.size())
        throw std::invalid_argument("ReplayBuffer::sample: bad batch size");

    // Floyd's algorithm: batch_size distinct indices in [0, size).
    const std::size_t n = store_.size();
    std::unordered_set<std::size_t> chosen;
    std::vector<std::size_t> indices;
    indices.reserve(batch_size);
    for (std::size_t j = n - batch_size; j < n; ++j) {
        std::size_t r = rng.below(j + 1);
        if (chosen.insert(r).second)
            indices.push_back(r);
        else {
            chosen.insert(j);
            indices.push_back(j);
        }
    }

    const auto &first = store_.front();
    TransitionBatch batch;
    batch.states.resize(first.state.size(), batch_size);
    batch.actions.resize(first.action.size(), batch_size);
    batch.rewards.resize(batch_size);
    batch.next_states.resize(first.next_state.size(), batch_size);
    batch.dones.resize(batch_size);
    for (int i = 0; i < batch_size; ++i) {
        const Transition &t = store_[indices[i]];
        batch.states.col(i) = t.state;
        batch.actions.col(i) = t.action;
        batch.rewards[i] = t.reward;
        batch.next_states.col(i) = t.next_state;
        batch.dones[i] = t.done ? 1.0 : 0.0;
    }
    return batch;
}

} // namespace aastar
