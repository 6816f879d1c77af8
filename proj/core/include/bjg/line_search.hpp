#pragma once

#include <cmath>
#include <utility>

namespace bjg {

struct LineMinimum {
  double arg = 0.0;
  double value = 0.0;
};

/// Golden-section search for the minimum of a convex (or unimodal) function
/// on [a, b]. Stops when the bracket is narrower than `width` or after
/// `max_iter` iterations. The endpoints are evaluated as well, so a minimum
/// sitting exactly on the boundary is returned exactly.
template <class F>
LineMinimum minimize_unimodal(F&& f, double a, double b, double width, int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  if (b < a) std::swap(a, b);
  LineMinimum best{a, f(a)};
  if (const double fb = f(b); fb < best.value) best = {b, fb};
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > width; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  if (fc < best.value) best = {c, fc};
  if (fd < best.value) best = {d, fd};
  return best;
}

}  // namespace bjg
