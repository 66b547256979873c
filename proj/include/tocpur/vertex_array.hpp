#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tocpur {

/// Dense per-vertex storage addressed by 1-based vertex ids (vertex 1 is the depot).
template <typename T>
class VertexArray {
 public:
  VertexArray() = default;
  explicit VertexArray(int num_vertices, T fill = T{})
      : data_(static_cast<std::size_t>(num_vertices), fill) {}
  explicit VertexArray(std::vector<T> values) : data_(std::move(values)) {}

  using reference = typename std::vector<T>::reference;
  using const_reference = typename std::vector<T>::const_reference;

  reference operator[](int vertex) { return data_[static_cast<std::size_t>(vertex - 1)]; }
  const_reference operator[](int vertex) const { return data_[static_cast<std::size_t>(vertex - 1)]; }

  int size() const { return static_cast<int>(data_.size()); }
  bool empty() const { return data_.empty(); }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  const std::vector<T>& vector() const { return data_; }

  friend bool operator==(const VertexArray&, const VertexArray&) = default;

 private:
  std::vector<T> data_;
};

}  // namespace tocpur
