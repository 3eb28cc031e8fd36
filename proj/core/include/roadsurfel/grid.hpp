#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace roadsurfel {

/// Dense row-major raster with a runtime channel count.
/// Pixel (y, x) channel c lives at data()[(y * width + x) * channels + c].
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int height, int width, int channels, T fill = T{})
      : height_(height),
        width_(width),
        channels_(channels),
        data_(static_cast<size_t>(height) * width * channels, fill) {
    assert(height >= 0 && width >= 0 && channels >= 1);
  }

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& at(int y, int x, int c = 0) {
    assert(in_bounds(y, x) && c >= 0 && c < channels_);
    return data_[index(y, x, c)];
  }
  const T& at(int y, int x, int c = 0) const {
    assert(in_bounds(y, x) && c >= 0 && c < channels_);
    return data_[index(y, x, c)];
  }

  T* pixel(int y, int x) { return data_.data() + index(y, x, 0); }
  const T* pixel(int y, int x) const { return data_.data() + index(y, x, 0); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  bool in_bounds(int y, int x) const {
    return y >= 0 && y < height_ && x >= 0 && x < width_;
  }
  bool same_shape(const Grid& other) const {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  void fill(T value) { data_.assign(data_.size(), value); }

  size_t index(int y, int x, int c) const {
    return (static_cast<size_t>(y) * width_ + x) * channels_ + c;
  }

  bool operator==(const Grid& other) const {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_ && data_ == other.data_;
  }

 private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<T> data_;
};

using ImageD = Grid<double>;
using ImageI = Grid<int32_t>;
using ImageB = Grid<uint8_t>;

}  // namespace roadsurfel
