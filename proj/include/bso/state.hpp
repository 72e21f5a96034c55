#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "bso/field.hpp"

namespace bso {

enum class Frame { Lab, Rotating };

// Two-level amplitudes (C0, C1) or (C0~, C1~) depending on frame.
struct StateAmplitudes {
  std::complex<double> c0;
  std::complex<double> c1;
  Frame frame = Frame::Rotating;

  double norm2() const { return std::norm(c0) + std::norm(c1); }
  double population1() const { return std::norm(c1); }
};

// Time-ordered samples of one integration run (uniform frame).
struct Trajectory {
  std::vector<double> times;
  std::vector<StateAmplitudes> states;
  FieldParams params;
  // max over stored samples of | |c0|^2 + |c1|^2 - 1 |
  double max_norm_drift = 0.0;

  std::size_t size() const { return times.size(); }
  double population1(std::size_t i) const { return states[i].population1(); }
};

}  // namespace bso
