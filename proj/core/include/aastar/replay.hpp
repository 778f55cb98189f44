#pragma once

#include <Eigen/Dense>
#include <vector>

#include "aastar/rng.hpp"

namespace aastar {

struct Transition {
    Eigen::VectorXd state;
    Eigen::VectorXd action;
    double reward = 0.0;
    Eigen::VectorXd next_state;
    bool done = false;
};

struct TransitionBatch {
    Eigen::MatrixXd states;      // state_dim x B
    Eigen::MatrixXd actions;     // action_dim x B
    Eigen::VectorXd rewards;     // B
    Eigen::MatrixXd next_states; // state_dim x B
    Eigen::VectorXd dones;       // B, 0/1

    int size() const { return static_cast<int>(rewards.size()); }
};

// Fixed-capacity ring buffer; oldest entries are evicted first. Batches are
// sampled uniformly without replacement.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    std::size_t size() const { return store_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition &at(std::size_t i) const { return store_[i]; }

    TransitionBatch sample(int batch_size, Rng &rng) const;

  private:
    std::size_t capacity_;
    std::size_t next_ = 0; // ring write position
    std::vector<Transition> store_;
};

} // namespace aastar
