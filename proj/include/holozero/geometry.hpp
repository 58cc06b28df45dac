#ifndef HOLOZERO_GEOMETRY_HPP
#define HOLOZERO_GEOMETRY_HPP

#include <array>
#include <complex>

namespace holozero {

using cplx = std::complex<double>;

/// Directed straight segment in the complex plane.
struct Edge {
  cplx start;
  cplx end;

  Edge reversed() const { return {end, start}; }
  double length() const { return std::abs(end - start); }
  cplx point(double s) const { return start + s * (end - start); }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Closed axis-aligned rectangle [re_min, re_max] + i[im_min, im_max].
class Rectangle {
 public:
  /// Throws std::invalid_argument unless the rectangle has positive area.
  Rectangle(double re_min, double re_max, double im_min, double im_max);

  double re_min() const { return re_min_; }
  double re_max() const { return re_max_; }
  double im_min() const { return im_min_; }
  double im_max() const { return im_max_; }

  double width() const { return re_max_ - re_min_; }
  double height() const { return im_max_ - im_min_; }
  double area() const { return width() * height(); }
  double perimeter() const { return 2.0 * (width() + height()); }
  double diameter() const { return std::hypot(width(), height()); }
  cplx center() const {
    return {0.5 * (re_min_ + re_max_), 0.5 * (im_min_ + im_max_)};
  }

  /// Closed containment, optionally widened by `tol` on every side.
  bool contains(cplx z, double tol = 0.0) const {
    return z.real() >= re_min_ - tol && z.real() <= re_max_ + tol &&
           z.imag() >= im_min_ - tol && z.imag() <= im_max_ + tol;
  }

  /// Lower-left, lower-right, upper-right, upper-left.
  std::array<cplx, 4> corners() const;

  /// Bottom, right, top, left; traversed counterclockwise.
  std::array<Edge, 4> edges() const;

  friend bool operator==(const Rectangle&, const Rectangle&) = default;

 private:
  double re_min_;
  double re_max_;
  double im_min_;
  double im_max_;
};

struct SplitResult {
  Rectangle first;   // left or bottom child
  Rectangle second;  // right or top child
  Edge shared;       // inserted edge, as traversed by `first`
  bool vertical;     // true when the inserted edge has constant real part
};

/// Cuts `r` perpendicular to its longer side at `offset_fraction` of that
/// side. Squares are cut vertically. `offset_fraction` must lie in (0, 1).
SplitResult split(const Rectangle& r, double offset_fraction);

/// Counterclockwise arclength parametrization of a rectangle boundary,
/// anchored at the lower-left corner.
class BoundaryParam {
 public:
  explicit BoundaryParam(const Rectangle& r) : rect_(r) {}

  const Rectangle& rectangle() const { return rect_; }
  double length() const { return rect_.perimeter(); }

  /// t is reduced modulo length().
  cplx point(double t) const;

 private:
  Rectangle rect_;
};

}  // namespace holozero

#endif  // HOLOZERO_GEOMETRY_HPP
