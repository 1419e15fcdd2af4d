#ifndef MRB_MULTI_INDEX_HPP
#define MRB_MULTI_INDEX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mrb {

/// base^exp for small cochain-space bookkeeping; throws on overflow.
inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > static_cast<std::size_t>(-1) / base) throw std::overflow_error("ipow overflow");
    r *= base;
  }
  return r;
}

/// Tuple (i_1, ..., i_n) of 0-based basis indices into a d-dimensional space.
/// The flat position is sum_t i_t * d^(n-t): the leftmost index is the most
/// significant digit, so flat positions enumerate tuples lexicographically.
class MultiIndex {
 public:
  MultiIndex(std::size_t dim, std::size_t arity) : dim_(dim), idx_(arity, 0) {}
  MultiIndex(std::size_t dim, std::vector<std::size_t> indices) : dim_(dim), idx_(std::move(indices)) {
    for (auto i : idx_)
      if (i >= dim_) throw std::out_of_range("MultiIndex: index out of range");
  }

  static MultiIndex from_flat(std::size_t dim, std::size_t arity, std::size_t flat) {
    MultiIndex m(dim, arity);
    for (std::size_t t = arity; t-- > 0;) {
      m.idx_[t] = flat % dim;
      flat /= dim;
    }
    return m;
  }

  std::size_t dim() const { return dim_; }
  std::size_t arity() const { return idx_.size(); }
  std::size_t operator[](std::size_t t) const { return idx_[t]; }
  const std::vector<std::size_t>& indices() const { return idx_; }

  std::size_t flat() const {
    std::size_t f = 0;
    for (auto i : idx_) f = f * dim_ + i;
    return f;
  }

  /// Advances to the lexicographic successor; returns false after the last tuple.
  bool next() {
    for (std::size_t t = idx_.size(); t-- > 0;) {
      if (++idx_[t] < dim_) return true;
      idx_[t] = 0;
    }
    return false;
  }

  /// 1-based copy for reports.
  std::vector<std::size_t> one_based() const {
    std::vector<std::size_t> out(idx_);
    for (auto& i : out) ++i;
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<std::size_t> idx_;
};

}  // namespace mrb

#endif  // MRB_MULTI_INDEX_HPP
