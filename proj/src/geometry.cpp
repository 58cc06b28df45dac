#include "holozero/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace holozero {

Rectangle::Rectangle(double re_min, double re_max, double im_min, double im_max)
    : re_min_(re_min), re_max_(re_max), im_min_(im_min), im_max_(im_max) {
  if (!(re_min < re_max) || !(im_min < im_max) || !std::isfinite(re_min) ||
      !std::isfinite(re_max) || !std::isfinite(im_min) || !std::isfinite(im_max)) {
    throw std::invalid_argument("rectangle must have finite bounds and positive area");
  }
}

std::array<cplx, 4> Rectangle::corners() const {
  return {cplx{re_min_, im_min_}, cplx{re_max_, im_min_}, cplx{re_max_, im_max_},
          cplx{re_min_, im_max_}};
}

std::array<Edge, 4> Rectangle::edges() const {
  const auto c = corners();
  return {Edge{c[0], c[1]}, Edge{c[1], c[2]}, Edge{c[2], c[3]}, Edge{c[3], c[0]}};
}

SplitResult split(const Rectangle& r, double offset_fraction) {
  if (r.width() >= r.height()) {
    const double x = r.re_min() + offset_fraction * r.width();
    return {Rectangle(r.re_min(), x, r.im_min(), r.im_max()),
            Rectangle(x, r.re_max(), r.im_min(), r.im_max()),
            Edge{cplx{x, r.im_min()}, cplx{x, r.im_max()}}, true};
  }
  const double y = r.im_min() + offset_fraction * r.height();
  return {Rectangle(r.re_min(), r.re_max(), r.im_min(), y),
          Rectangle(r.re_min(), r.re_max(), y, r.im_max()),
          Edge{cplx{r.re_max(), y}, cplx{r.re_min(), y}}, false};
}

cplx BoundaryParam::point(double t) const {
  const double len = length();
  t = std::fmod(t, len);
  if (t < 0.0) t += len;
  const double w = rect_.width();
  const double h = rect_.height();
  if (t < w) return {rect_.re_min() + t, rect_.im_min()};
  t -= w;
  if (t < h) return {rect_.re_max(), rect_.im_min() + t};
  t -= h;
  if (t < w) return {rect_.re_max() - t, rect_.im_max()};
  t -= w;
  return {rect_.re_min(), rect_.im_max() - t};
}

}  // namespace holozero
