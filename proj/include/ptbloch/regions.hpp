#pragma once

#include <algorithm>
#include <complex>

namespace ptbloch {

struct Disk {
  std::complex<double> center{0.0, 0.0};
  double radius = 0.0;

  /// Strict membership, optionally widened by a nonnegative slack.
  bool contains(std::complex<double> lambda, double slack = 0.0) const {
    return std::abs(lambda - center) < radius + slack;
  }
  double margin(std::complex<double> lambda) const {
    return radius - std::abs(lambda - center);
  }
};

/// [lo, hi); requires lo < hi.
struct HalfOpenInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x < hi; }
  double width() const { return hi - lo; }
  /// 0 inside the closure, else distance to the nearest endpoint.
  double distance(double x) const { return std::max({lo - x, x - hi, 0.0}); }
};

/// Re-range plus a symmetric bound on |Im|.
struct Rectangle {
  HalfOpenInterval re_range;
  double im_bound = 0.0;

  bool contains(std::complex<double> lambda, double slack = 0.0) const {
    return lambda.real() >= re_range.lo - slack && lambda.real() < re_range.hi + slack &&
           std::abs(lambda.imag()) < im_bound + slack;
  }
};

/// |Re| <= re_bound, |Im| < im_bound (centered at the origin).
struct CenteredRectangle {
  double re_bound = 0.0;
  double im_bound = 0.0;

  bool contains(std::complex<double> lambda, double slack = 0.0) const {
    return std::abs(lambda.real()) <= re_bound + slack &&
           std::abs(lambda.imag()) < im_bound + slack;
  }
};

}  // namespace ptbloch
