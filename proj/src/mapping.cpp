#include "bpp/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bpp/error.hpp"

namespace bpp {

MultiMap::MultiMap(std::vector<std::vector<std::size_t>> images, std::size_t a_size,
                   std::size_t b_size)
    : images_(std::move(images)), b_size_(b_size) {
  if (images_.size() != a_size) {
    throw InvalidArgument("mapping covers " + std::to_string(images_.size()) +
                          " points but A has " + std::to_string(a_size));
  }
  for (std::size_t a = 0; a < images_.size(); ++a) {
    const auto& img = images_[a];
    if (img.empty()) throw InvalidArgument("F(" + std::to_string(a) + ") is empty");
    for (std::size_t k = 0; k < img.size(); ++k) {
      if (img[k] >= b_size) {
        throw InvalidArgument("F(" + std::to_string(a) + ") lists B index " +
                              std::to_string(img[k]) + " but B has " + std::to_string(b_size) +
                              " points");
      }
      if (std::find(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(k), img[k]) !=
          img.begin() + static_cast<std::ptrdiff_t>(k)) {
        throw InvalidArgument("F(" + std::to_string(a) + ") lists B index " +
                              std::to_string(img[k]) + " twice");
      }
    }
  }
}

MultiMap MultiMap::singletons(std::span<const std::size_t> f, std::size_t b_size) {
  std::vector<std::vector<std::size_t>> images;
  images.reserve(f.size());
  for (std::size_t b : f) images.push_back({b});
  return MultiMap(std::move(images), f.size(), b_size);
}

bool MultiMap::contains(std::size_t a, std::size_t b) const {
  const auto& img = image(a);
  return std::find(img.begin(), img.end(), b) != img.end();
}

std::vector<Point> MultiMap::image_points(std::size_t a, const PointSet& b) const {
  std::vector<Point> out;
  out.reserve(image(a).size());
  for (std::size_t j : image(a)) out.push_back(b[j]);
  return out;
}

AlphaMap AlphaMap::constant(double c) {
  if (!std::isfinite(c) || c < 0) throw InvalidArgument("alpha must be finite and >= 0");
  AlphaMap m;
  m.constant_ = c;
  return m;
}

AlphaMap AlphaMap::table(std::vector<std::vector<double>> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw InvalidArgument("alpha table row " + std::to_string(i) + " is not square");
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v) || v < 0) {
        throw InvalidArgument("alpha table row " + std::to_string(i) +
                              " has a negative or non-finite value");
      }
    }
  }
  AlphaMap m;
  m.table_ = std::move(rows);
  return m;
}

double AlphaMap::operator()(std::size_t i, std::size_t j) const {
  if (!table_) return constant_;
  if (i >= table_->size() || j >= table_->size()) {
    throw InvalidArgument("alpha table does not cover (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
  }
  return (*table_)[i][j];
}

void AlphaMap::check_covers(std::size_t n) const {
  if (table_ && table_->size() != n) {
    throw InvalidArgument("alpha table is " + std::to_string(table_->size()) + "x" +
                          std::to_string(table_->size()) + " but A has " + std::to_string(n) +
                          " points");
  }
}

}  // namespace bpp
