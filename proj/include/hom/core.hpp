#pragma once

// History spaces, subset masks and the additive group G of linear
// combinations of characteristic functions.

#include "hom/error.hpp"
#include "hom/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hom {

/// Soft limit on the number of histories; keeps 2^m subset enumeration cheap.
inline constexpr std::size_t max_histories = 24;

/// Finite ordered set of history labels.
class HistorySpace {
 public:
  explicit HistorySpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw InvalidArgument("history space must contain at least one history");
    if (labels_.size() > max_histories)
      throw CapExceeded("history space of size " + std::to_string(labels_.size()) + " exceeds limit " +
                        std::to_string(max_histories));
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
      if (!seen.insert(l).second) throw InvalidArgument("duplicate history label '" + l + "'");
  }

  /// Labels "1".."m".
  static HistorySpace numbered(std::size_t m) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back(std::to_string(i + 1));
    return HistorySpace(std::move(labels));
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::size_t index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw InvalidArgument("unknown history label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  friend bool operator==(const HistorySpace&, const HistorySpace&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Subset of a history space as a bitmask.
class SubsetMask {
 public:
  SubsetMask(std::size_t m, std::uint32_t bits) : m_(m), bits_(bits) {
    if (m > max_histories) throw CapExceeded("subset mask wider than " + std::to_string(max_histories));
    if (m < 32 && (bits >> m) != 0) throw InvalidArgument("subset mask has bits outside the history space");
  }

  static SubsetMask empty(std::size_t m) { return {m, 0}; }
  static SubsetMask full(std::size_t m) { return {m, m == 32 ? ~0u : (1u << m) - 1}; }

  static SubsetMask from_indices(std::size_t m, std::span<const std::size_t> idx) {
    std::uint32_t bits = 0;
    for (auto i : idx) {
      if (i >= m) throw InvalidArgument("history index out of range");
      bits |= 1u << i;
    }
    return {m, bits};
  }

  static SubsetMask from_labels(const HistorySpace& space, std::span<const std::string> labels) {
    std::vector<std::size_t> idx;
    for (const auto& l : labels) idx.push_back(space.index_of(l));
    return from_indices(space.size(), idx);
  }

  std::size_t universe() const { return m_; }
  std::uint32_t bits() const { return bits_; }
  bool contains(std::size_t i) const { return i < m_ && ((bits_ >> i) & 1u) != 0; }
  std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool is_empty() const { return bits_ == 0; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  /// Sorted (by history order) label list.
  std::vector<std::string> labels(const HistorySpace& space) const {
    if (space.size() != m_) throw DimensionMismatch(space.size(), m_);
    std::vector<std::string> out;
    for (auto i : indices()) out.push_back(space.label(i));
    return out;
  }

  SubsetMask complement() const { return {m_, full(m_).bits_ & ~bits_}; }

  friend SubsetMask operator|(const SubsetMask& a, const SubsetMask& b) { return {check(a, b), a.bits_ | b.bits_}; }
  friend SubsetMask operator&(const SubsetMask& a, const SubsetMask& b) { return {check(a, b), a.bits_ & b.bits_}; }
  friend SubsetMask operator-(const SubsetMask& a, const SubsetMask& b) { return {check(a, b), a.bits_ & ~b.bits_}; }
  friend SubsetMask operator^(const SubsetMask& a, const SubsetMask& b) { return {check(a, b), a.bits_ ^ b.bits_}; }
  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

  /// Every subset of an m-element space, in bitmask order.
  static std::vector<SubsetMask> all(std::size_t m) {
    std::vector<SubsetMask> out;
    const std::uint32_t n = 1u << m;
    out.reserve(n);
    for (std::uint32_t b = 0; b < n; ++b) out.emplace_back(m, b);
    return out;
  }

 private:
  static std::size_t check(const SubsetMask& a, const SubsetMask& b) {
    if (a.m_ != b.m_) throw DimensionMismatch(a.m_, b.m_);
    return a.m_;
  }

  std::size_t m_;
  std::uint32_t bits_;
};

/// Element g = sum_i lambda_i chi_{A_i} of the abelian group G, flattened
/// to one coefficient per history. The group law is componentwise addition.
template <Scalar S>
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) {}

  /// Identity e = chi_empty = 0.
  static GroupElement zero(std::size_t m) { return GroupElement(std::vector<S>(m, from_int<S>(0))); }

  /// Characteristic function of the single history i.
  static GroupElement basis(std::size_t m, std::size_t i) {
    if (i >= m) throw InvalidArgument("basis index out of range");
    auto g = zero(m);
    g.coeffs_[i] = from_int<S>(1);
    return g;
  }

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<S>& coeffs() const { return coeffs_; }
  const S& operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero(Tolerance tol = {}) const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const S& c) { return hom::is_zero(c, tol); });
  }

  GroupElement& operator+=(const GroupElement& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  GroupElement& operator-=(const GroupElement& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }

  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  friend GroupElement operator-(GroupElement a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend GroupElement operator*(const S& s, GroupElement a) {
    for (auto& c : a.coeffs_) c = s * c;
    return a;
  }
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.coeffs_ == b.coeffs_; }

  /// Pointwise product with a function on the histories (algebra action).
  GroupElement pointwise(const GroupElement& w) const {
    require_same(w);
    GroupElement out = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] * w.coeffs_[i];
    return out;
  }

  void require_same(const GroupElement& o) const {
    if (o.size() != size()) throw DimensionMismatch(size(), o.size());
  }

 private:
  std::vector<S> coeffs_;
};

/// 0/1 coefficient vector of a subset.
template <Scalar S>
GroupElement<S> characteristic_function(const SubsetMask& s) {
  std::vector<S> c;
  c.reserve(s.universe());
  for (std::size_t i = 0; i < s.universe(); ++i) c.push_back(from_int<S>(s.contains(i) ? 1 : 0));
  return GroupElement<S>(std::move(c));
}

template <Scalar S>
GroupElement<S> group_add(const GroupElement<S>& g, const GroupElement<S>& h) {
  return g + h;
}

/// Sum of the elements selected by the bits of `mask` (bit i selects args[i]).
template <Scalar S>
GroupElement<S> subset_sum(std::span<const GroupElement<S>> args, std::uint64_t mask, std::size_t m) {
  auto out = GroupElement<S>::zero(m);
  for (std::size_t i = 0; i < args.size(); ++i)
    if ((mask >> i) & 1u) out += args[i];
  return out;
}

/// All 2^k subset sums of args, indexed by bitmask.
template <Scalar S>
std::vector<GroupElement<S>> all_subset_sums(std::span<const GroupElement<S>> args, std::size_t m) {
  const std::size_t k = args.size();
  std::vector<GroupElement<S>> sums;
  sums.reserve(std::size_t{1} << k);
  sums.push_back(GroupElement<S>::zero(m));
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    sums.push_back(sums[mask & (mask - 1)] + args[low]);
  }
  return sums;
}

template <Scalar S>
std::size_t common_dimension(std::span<const GroupElement<S>> args) {
  if (args.empty()) throw InvalidArgument("empty argument list");
  const std::size_t m = args.front().size();
  for (const auto& a : args)
    if (a.size() != m) throw DimensionMismatch(m, a.size());
  return m;
}

}  // namespace hom
