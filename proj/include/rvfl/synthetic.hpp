#pragma once

#include <cstdint>

#include "rvfl/dataset.hpp"

namespace rvfl::synthetic {

/// Learning-with-privileged-information benchmark.
///
/// A latent clean signal s ~ N(0, I) of `observed + hidden` channels decides
/// the class through argmax(s·W). The normal features are the signal plus
/// Gaussian noise: `observed_noise` on the first channels and
/// `hidden_noise` on the rest, which is large enough that those channels
/// are effectively unreadable at test time. The privileged features are the
/// clean values of the hidden channels, which a teacher could supply for
/// training rows only.
struct LupiConfig {
  Index observed = 4;
  Index hidden = 4;
  Index classes = 3;
  double observed_noise = 0.2;
  double hidden_noise = 10.0;
};

class LupiTask {
 public:
  LupiTask(const LupiConfig& config, std::uint64_t seed);

  /// Rows drawn with their own seed; all draws share the task's class map.
  Dataset sample(Index rows, std::uint64_t seed) const;

  const LupiConfig& config() const { return config_; }
  const Matrix& class_map() const { return class_map_; }

 private:
  LupiConfig config_;
  Matrix class_map_;
};

/// Two Gaussian blobs at ±`separation`/2 along a random unit direction, with
/// isotropic unit noise. Labels are class 0 / class 1 one-hot.
Dataset binary_blobs(Index rows, Index dims, double separation, std::uint64_t seed);

}  // namespace rvfl::synthetic
