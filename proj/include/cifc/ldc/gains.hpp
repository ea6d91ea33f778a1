#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cifc::ldc {

/// Integer gains n[l][i] of the linear deterministic channel: receiver l sees
/// the top n[l][i] bit levels of transmitter i. User indices are 0-based;
/// user 0 is the primary.
class LdcGains {
 public:
  /// `row_major` holds k*k entries, row = receiver. Throws InvalidArgument on
  /// negative entries, k == 0 or a size mismatch.
  LdcGains(std::size_t k, std::vector<int> row_major);

  /// n[i][i] = nd, n[l][i] = ni for l != i.
  static LdcGains symmetric(int nd, int ni, std::size_t k);

  std::size_t k() const noexcept { return k_; }
  int operator()(std::size_t receiver, std::size_t transmitter) const {
    return n_[receiver * k_ + transmitter];
  }
  /// Number of bit levels: the largest gain.
  int m() const noexcept { return m_; }

  const std::vector<int>& entries() const noexcept { return n_; }
  std::string to_string() const;

  friend bool operator==(const LdcGains&, const LdcGains&) = default;

 private:
  std::size_t k_;
  std::vector<int> n_;
  int m_ = 0;
};

}  // namespace cifc::ldc
