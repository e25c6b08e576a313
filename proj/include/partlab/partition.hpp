#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace partlab {

// A partition: weakly decreasing positive parts with cached sum.
// Immutable after construction.
class Partition {
 public:
  Partition() = default;  // empty partition of 0

  explicit Partition(std::vector<std::int64_t> parts)
      : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1)
        throw std::invalid_argument("Partition: parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("Partition: parts must be weakly decreasing");
      n_ += parts_[i];
    }
  }

  const std::vector<std::int64_t>& parts() const { return parts_; }
  std::int64_t n() const { return n_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }

  // Textual literal, e.g. "[3,1]"; the empty partition is "[]".
  std::string str() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out << ',';
      out << parts_[i];
    }
    out << ']';
    return out.str();
  }

  static Partition parse(std::string_view text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
      throw std::invalid_argument("Partition::parse: expected [a,b,...]");
    std::string body(text.substr(1, text.size() - 2));
    std::vector<std::int64_t> parts;
    std::istringstream in(body);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) throw std::invalid_argument("Partition::parse: empty part");
      parts.push_back(std::stoll(tok));
    }
    return Partition(std::move(parts));
  }

 private:
  std::vector<std::int64_t> parts_;
  std::int64_t n_ = 0;
};

/// Transpose of the Ferrers diagram: part i of the result counts the
/// parts of p that are >= i.
inline Partition conjugate(const Partition& p) {
  std::vector<std::int64_t> out;
  if (!p.empty()) {
    out.resize(static_cast<std::size_t>(p.parts()[0]));
    for (std::int64_t part : p.parts())
      for (std::int64_t i = 0; i < part; ++i) ++out[static_cast<std::size_t>(i)];
  }
  return Partition(std::move(out));
}

struct RankVector {
  std::vector<std::int64_t> ranks;  // r_k = d_k - s_k, k = 1..durfee
  std::size_t durfee = 0;
};

/// Successive ranks r_k = d_k - s_k for k up to the Durfee size
/// (largest k with d_k >= k).
inline RankVector successive_ranks(const Partition& p) {
  if (p.empty())
    throw std::invalid_argument("successive_ranks: undefined for n = 0");
  Partition conj = conjugate(p);
  RankVector rv;
  const auto& d = p.parts();
  const auto& s = conj.parts();
  while (rv.durfee < d.size() &&
         d[rv.durfee] >= static_cast<std::int64_t>(rv.durfee) + 1)
    ++rv.durfee;
  rv.ranks.reserve(rv.durfee);
  for (std::size_t k = 0; k < rv.durfee; ++k)
    rv.ranks.push_back(d[k] - s[k]);
  return rv;
}

/// Nash-Williams: graphical iff n is even and every rank prefix sum
/// satisfies r_1 + ... + r_k <= -k. The empty partition is graphical.
inline bool nash_williams_graphical(const Partition& p) {
  if (p.empty()) return true;
  if (p.n() % 2 != 0) return false;
  RankVector rv = successive_ranks(p);
  std::int64_t prefix = 0;
  for (std::size_t k = 0; k < rv.durfee; ++k) {
    prefix += rv.ranks[k];
    if (prefix > -static_cast<std::int64_t>(k + 1)) return false;
  }
  return true;
}

/// Dominance order: every prefix sum of p >= the matching prefix sum of q.
inline bool dominates(const Partition& p, const Partition& q) {
  if (p.n() != q.n())
    throw std::invalid_argument("dominance requires equal weight");
  std::int64_t sp = 0, sq = 0;
  std::size_t m = std::max(p.size(), q.size());
  for (std::size_t i = 0; i < m; ++i) {
    sp += i < p.size() ? p.parts()[i] : 0;
    sq += i < q.size() ? q.parts()[i] : 0;
    if (sp < sq) return false;
  }
  return true;
}

namespace detail {
template <class Visitor>
void enumerate_rec(std::int64_t remaining, std::int64_t max_part,
                   std::int64_t parts_left, std::vector<std::int64_t>& stack,
                   Visitor& visit) {
  if (remaining == 0) {
    visit(stack);
    return;
  }
  if (parts_left == 0) return;
  std::int64_t hi = std::min(remaining, max_part);
  // First part descending gives reverse-lexicographic order overall.
  for (std::int64_t part = hi; part >= 1; --part) {
    // Remaining weight must fit under the new cap.
    if (remaining - part > part * (parts_left - 1)) continue;
    stack.push_back(part);
    enumerate_rec(remaining - part, part, parts_left - 1, stack, visit);
    stack.pop_back();
  }
}
}  // namespace detail

/// Visit every partition of n (optionally bounded) exactly once, in
/// reverse-lexicographic order on the part sequence. The visitor receives
/// the current part stack; copy it if you keep it.
template <class Visitor>
void enumerate_partitions(std::int64_t n, std::optional<std::int64_t> max_parts,
                          std::optional<std::int64_t> max_part,
                          Visitor&& visit) {
  if (n < 0) throw std::invalid_argument("enumerate_partitions: n >= 0");
  std::int64_t mp = max_part.value_or(n);
  std::int64_t mj = max_parts.value_or(n);
  std::vector<std::int64_t> stack;
  detail::enumerate_rec(n, mp, mj, stack, visit);
}

inline std::vector<Partition> all_partitions(
    std::int64_t n, std::optional<std::int64_t> max_parts = std::nullopt,
    std::optional<std::int64_t> max_part = std::nullopt) {
  std::vector<Partition> out;
  enumerate_partitions(n, max_parts, max_part,
                       [&](const std::vector<std::int64_t>& parts) {
                         out.emplace_back(parts);
                       });
  return out;
}

}  // namespace partlab
