#pragma once

#include <vector>

namespace cyberops::collab {

// How a reward gain moves the independence cursor.
//   Balancing:   a gain while already independent pulls the cursor back toward
//                consulting, and vice versa (negative feedback, the default).
//   Reinforcing: a gain pushes the cursor further in its current direction
//                (positive feedback).
enum class SignConvention { Balancing, Reinforcing };

struct CursorConfig {
  double consult_threshold = 0.6;   // consult while independence < this
  double min_reward_gain = 0.3;     // reward improvement discounted before it counts
  double change_rate = 0.3;         // cap factor on the per-step experience term
  double slope = 0.0135;            // logistic slope of the baseline schedule
  double initial_independence = 0.5;
  SignConvention convention = SignConvention::Balancing;

  bool operator==(const CursorConfig&) const = default;
};

// One advance() broken into its additive parts, for tracing.
struct CursorUpdate {
  int step = 0;
  double before = 0.0;
  double schedule_part = 0.0;    // logistic baseline increment f(t) - f(t-1)
  double experience_part = 0.0;  // capped reward-driven increment, signed
  double after = 0.0;
};

double sigmoid(double x, double slope);

// Independence cursor: starts at the logistic baseline and drifts with the
// recent reward trend. Values are not clamped; consultation only needs the
// comparison against the threshold.
class Cursor {
 public:
  explicit Cursor(const CursorConfig& config);

  // Record the reward observed at the current step; advance(t) for step t
  // looks two records back to measure the trend.
  void record_reward(double reward);

  // Move the cursor for step t (t >= 1). Steps 1 and 2 have too little reward
  // history for the experience term; it joins from t >= 2 with two rewards.
  CursorUpdate advance(int step);

  double independence() const { return independence_; }
  bool should_consult() const { return independence_ < config_.consult_threshold; }
  const CursorConfig& config() const { return config_; }

 private:
  CursorConfig config_;
  double independence_;
  std::vector<double> rewards_;
};

}  // namespace cyberops::collab
