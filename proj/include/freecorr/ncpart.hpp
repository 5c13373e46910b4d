#pragma once

// Non-crossing partitions and the moment/cumulant transforms built on them.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "freecorr/expansion.hpp"

namespace freecorr {

inline constexpr int kMaxNcSize = 14;

class NoncrossingPartition {
 public:
  NoncrossingPartition() = default;

  // labels[i] is the block of element i+1; relabelled in order of first appearance.
  static NoncrossingPartition from_labels(const std::vector<int>& labels);
  // Blocks use elements 1..k.
  static NoncrossingPartition from_blocks(const std::vector<std::vector<int>>& blocks);
  // Inverse of to_string: "1,3|2|4".
  static NoncrossingPartition parse(const std::string& text);

  int size() const { return k_; }
  int block_count() const { return nblocks_; }
  int label(int i) const { return labels_[i]; }
  std::vector<std::vector<int>> blocks() const;
  std::vector<int> block_sizes() const;
  std::string to_string() const;

  friend bool operator==(const NoncrossingPartition& a, const NoncrossingPartition& b) {
    return a.k_ == b.k_ && a.labels_ == b.labels_;
  }
  friend bool operator<(const NoncrossingPartition& a, const NoncrossingPartition& b) {
    if (a.k_ != b.k_) return a.k_ < b.k_;
    return a.labels_ < b.labels_;
  }

 private:
  std::array<std::uint8_t, kMaxNcSize> labels_{};
  std::uint8_t k_ = 0;
  std::uint8_t nblocks_ = 0;
};

bool is_noncrossing(const std::vector<std::vector<int>>& blocks);

// All of NC(k), sorted by label sequence. 1 <= k <= 14.
std::vector<NoncrossingPartition> enumerate_nc(int k);
// Cached enumeration, safe to call from several threads.
const std::vector<NoncrossingPartition>& nc_partitions(int k);

std::uint64_t catalan(int k);

// Partitions of NC(k) grouped by their multiset of block sizes.
struct BlockProfile {
  std::vector<int> sizes;  // nonincreasing
  std::uint64_t count = 0;
};
const std::vector<BlockProfile>& block_profiles(int k);

// Multinomial i!/(l_1! ... l_p!) with sum l = i.
std::uint64_t multinomial(const std::vector<int>& parts);

// m_k = sum over NC(k) of products of kappa_{|V|}, k = 1..K. kappa[0] is kappa_1.
std::vector<double> cumulants_to_moments(const std::vector<double>& kappa, int K);
std::vector<double> moments_to_cumulants(const std::vector<double>& moments, int K);

struct CumulantTable {
  int order = 0;                          // nu
  std::vector<std::vector<double>> rows;  // rows[i][n-1] = kappa^{(i)}_n
  int length() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
  void validate() const;
};

// phi^{(i)}(x^k) for i = 0..nu and k = 1..K. nu <= 4.
ExpansionResult infinitesimal_moments(const CumulantTable& table, int K);

enum class QuantizedDirection { to_quantized, from_quantized };

// Free cumulants of the uniform measure on [0,1], n = 1..K.
std::vector<double> uniform_cumulants(int K);
std::vector<double> quantized_r_shift(const std::vector<double>& kappa, QuantizedDirection direction);

}  // namespace freecorr
