#include "cyberops/collab/cursor.hpp"

#include <algorithm>
#include <cmath>

namespace cyberops::collab {

double sigmoid(double x, double slope) { return 1.0 / (1.0 + std::exp(-slope * x)); }

Cursor::Cursor(const CursorConfig& config)
    : config_(config), independence_(config.initial_independence) {}

void Cursor::record_reward(double reward) { rewards_.push_back(reward); }

CursorUpdate Cursor::advance(int step) {
  CursorUpdate update;
  update.step = step;
  update.before = independence_;
  update.schedule_part = sigmoid(step, config_.slope) - sigmoid(step - 1, config_.slope);

  if (step >= 2 && rewards_.size() >= 2) {
    const double gain = rewards_[rewards_.size() - 1] - rewards_[rewards_.size() - 2];
    const double sign =
        (independence_ > config_.consult_threshold) == (config_.convention ==
                                                        SignConvention::Balancing)
            ? -1.0
            : 1.0;
    update.experience_part =
        std::min(config_.change_rate * independence_, gain - config_.min_reward_gain) * sign;
  }

  independence_ += update.schedule_part + update.experience_part;
  update.after = independence_;
  return update;
}

}  // namespace cyberops::collab
