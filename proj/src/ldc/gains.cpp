#include "cifc/ldc/gains.hpp"

#include <algorithm>
#include <sstream>

#include "cifc/error.hpp"

namespace cifc::ldc {

LdcGains::LdcGains(std::size_t k, std::vector<int> row_major) : k_(k), n_(std::move(row_major)) {
  if (k_ == 0) throw InvalidArgument("LdcGains: k must be positive");
  if (n_.size() != k_ * k_) {
    throw InvalidArgument("LdcGains: expected " + std::to_string(k_ * k_) + " gains, got " +
                          std::to_string(n_.size()));
  }
  for (int v : n_) {
    if (v < 0) throw InvalidArgument("LdcGains: gains must be non-negative");
    if (v > 64) throw InvalidArgument("LdcGains: gains above 64 levels are not supported");
  }
  m_ = *std::max_element(n_.begin(), n_.end());
}

LdcGains LdcGains::symmetric(int nd, int ni, std::size_t k) {
  std::vector<int> n(k * k, ni);
  for (std::size_t i = 0; i < k; ++i) n[i * k + i] = nd;
  return LdcGains(k, std::move(n));
}

std::string LdcGains::to_string() const {
  std::ostringstream os;
  for (std::size_t l = 0; l < k_; ++l) {
    if (l) os << ';';
    for (std::size_t i = 0; i < k_; ++i) os << (i ? "," : "") << (*this)(l, i);
  }
  return os.str();
}

}  // namespace cifc::ldc
