#include "freecorr/ncpart.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "freecorr/errors.hpp"

namespace freecorr {

namespace {

void check_guard(int k) {
  if (k < 1 || k > kMaxNcSize)
    throw DomainError("non-crossing enumeration needs 1 <= k <= " + std::to_string(kMaxNcSize) + ", got " +
                      std::to_string(k));
}

using Labels = std::array<std::uint8_t, kMaxNcSize>;

// Left-to-right scan: revisiting a block is legal only once every block opened
// after it has ended.
bool labels_noncrossing(const Labels& lab, int k) {
  std::array<int, kMaxNcSize> last{};
  for (int i = 0; i < k; ++i) last[lab[i]] = i;
  std::array<int, kMaxNcSize> stack{};
  std::array<bool, kMaxNcSize> seen{};
  int top = 0;
  for (int i = 0; i < k; ++i) {
    int b = lab[i];
    while (top > 0 && last[stack[top - 1]] < i) --top;
    if (!seen[b]) {
      seen[b] = true;
      stack[top++] = b;
    } else if (top == 0 || stack[top - 1] != b) {
      return false;
    }
  }
  return true;
}

Labels relabel(const Labels& raw, int k, int* nblocks) {
  std::array<int, 256> map;
  map.fill(-1);
  Labels out{};
  int next = 0;
  for (int i = 0; i < k; ++i) {
    if (map[raw[i]] < 0) map[raw[i]] = next++;
    out[i] = static_cast<std::uint8_t>(map[raw[i]]);
  }
  *nblocks = next;
  return out;
}

// Block-of-first-element recursion: the block holding the first element of an
// arc splits the rest of the arc into independent smaller arcs.
class Generator {
 public:
  Generator(int k, std::vector<NoncrossingPartition>* out) : k_(k), out_(out) {}

  void run() { solve({{0, k_}}, 0); }

 private:
  using Arc = std::pair<int, int>;  // half-open [lo, hi)

  void solve(std::vector<Arc> pending, int next_label) {
    while (!pending.empty() && pending.back().first >= pending.back().second) pending.pop_back();
    if (pending.empty()) {
      std::vector<int> lab(labels_.begin(), labels_.begin() + k_);
      out_->push_back(NoncrossingPartition::from_labels(lab));
      return;
    }
    Arc arc = pending.back();
    pending.pop_back();
    grow(arc.first, arc.second, pending, next_label);
  }

  // The current block's last element is `last`; close it or extend it to some j.
  void grow(int last, int hi, const std::vector<Arc>& pending, int label) {
    labels_[last] = static_cast<std::uint8_t>(label);
    auto closed = pending;
    closed.push_back({last + 1, hi});
    solve(std::move(closed), label + 1);
    for (int j = last + 1; j < hi; ++j) {
      auto inner = pending;
      inner.push_back({last + 1, j});
      grow(j, hi, inner, label);
    }
  }

  int k_;
  std::vector<NoncrossingPartition>* out_;
  Labels labels_{};
};

}  // namespace

NoncrossingPartition NoncrossingPartition::from_labels(const std::vector<int>& labels) {
  int k = static_cast<int>(labels.size());
  check_guard(k);
  Labels raw{};
  for (int i = 0; i < k; ++i) {
    if (labels[i] < 0 || labels[i] > 255) throw DomainError("partition label out of range");
    raw[i] = static_cast<std::uint8_t>(labels[i]);
  }
  NoncrossingPartition p;
  int nb = 0;
  p.labels_ = relabel(raw, k, &nb);
  p.k_ = static_cast<std::uint8_t>(k);
  p.nblocks_ = static_cast<std::uint8_t>(nb);
  if (!labels_noncrossing(p.labels_, k)) throw DomainError("partition is crossing: " + p.to_string());
  return p;
}

NoncrossingPartition NoncrossingPartition::from_blocks(const std::vector<std::vector<int>>& blocks) {
  int k = 0;
  for (const auto& b : blocks) k += static_cast<int>(b.size());
  check_guard(k);
  std::vector<int> labels(k, -1);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (int e : blocks[bi]) {
      if (e < 1 || e > k || labels[e - 1] >= 0) throw DomainError("blocks do not partition 1..k");
      labels[e - 1] = static_cast<int>(bi);
    }
  }
  return from_labels(labels);
}

NoncrossingPartition NoncrossingPartition::parse(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(text);
  std::string block;
  while (std::getline(ss, block, '|')) {
    std::vector<int> b;
    std::stringstream bs(block);
    std::string item;
    while (std::getline(bs, item, ',')) {
      try {
        b.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw DomainError("cannot parse partition '" + text + "'");
      }
    }
    blocks.push_back(std::move(b));
  }
  return from_blocks(blocks);
}

std::vector<std::vector<int>> NoncrossingPartition::blocks() const {
  std::vector<std::vector<int>> out(nblocks_);
  for (int i = 0; i < k_; ++i) out[labels_[i]].push_back(i + 1);
  return out;
}

std::vector<int> NoncrossingPartition::block_sizes() const {
  std::vector<int> sizes(nblocks_, 0);
  for (int i = 0; i < k_; ++i) ++sizes[labels_[i]];
  return sizes;
}

std::string NoncrossingPartition::to_string() const {
  std::string s;
  auto bl = blocks();
  for (std::size_t b = 0; b < bl.size(); ++b) {
    if (b) s += '|';
    for (std::size_t j = 0; j < bl[b].size(); ++j) {
      if (j) s += ',';
      s += std::to_string(bl[b][j]);
    }
  }
  return s;
}

bool is_noncrossing(const std::vector<std::vector<int>>& blocks) {
  // a < b < c < d with a,c in one block and b,d in another.
  std::map<int, int> owner;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (int e : blocks[i]) owner[e] = static_cast<int>(i);
  std::vector<int> seq;
  for (auto& [e, o] : owner) seq.push_back(o);
  int n = static_cast<int>(seq.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (seq[b] == seq[a]) continue;
      for (int c = b + 1; c < n; ++c) {
        if (seq[c] != seq[a]) continue;
        for (int d = c + 1; d < n; ++d)
          if (seq[d] == seq[b]) return false;
      }
    }
  return true;
}

std::vector<NoncrossingPartition> enumerate_nc(int k) {
  check_guard(k);
  std::vector<NoncrossingPartition> out;
  out.reserve(catalan(k));
  Generator(k, &out).run();
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<NoncrossingPartition>& nc_partitions(int k) {
  check_guard(k);
  static std::array<std::once_flag, kMaxNcSize + 1> flags;
  static std::array<std::vector<NoncrossingPartition>, kMaxNcSize + 1> cache;
  std::call_once(flags[k], [k] { cache[k] = enumerate_nc(k); });
  return cache[k];
}

std::uint64_t catalan(int k) {
  if (k < 0) throw DomainError("catalan: negative index");
  std::uint64_t c = 1;
  for (int n = 0; n < k; ++n) c = c * 2 * (2 * n + 1) / (n + 2);
  return c;
}

const std::vector<BlockProfile>& block_profiles(int k) {
  check_guard(k);
  static std::array<std::once_flag, kMaxNcSize + 1> flags;
  static std::array<std::vector<BlockProfile>, kMaxNcSize + 1> cache;
  std::call_once(flags[k], [k] {
    std::map<std::vector<int>, std::uint64_t> counts;
    for (const auto& p : nc_partitions(k)) {
      auto s = p.block_sizes();
      std::sort(s.begin(), s.end(), std::greater<int>());
      ++counts[s];
    }
    for (auto& [sizes, c] : counts) cache[k].push_back({sizes, c});
  });
  return cache[k];
}

std::uint64_t multinomial(const std::vector<int>& parts) {
  // Built as a product of binomials so intermediate values stay exact.
  std::uint64_t result = 1;
  int total = 0;
  for (int p : parts) {
    if (p < 0) throw DomainError("multinomial: negative part");
    for (int j = 1; j <= p; ++j) {
      ++total;
      result = result * static_cast<std::uint64_t>(total) / static_cast<std::uint64_t>(j);
    }
  }
  return result;
}

std::vector<double> cumulants_to_moments(const std::vector<double>& kappa, int K) {
  if (K < 1) throw DomainError("cumulants_to_moments: K must be positive");
  check_guard(K);
  if (static_cast<int>(kappa.size()) < K) throw DomainError("cumulants_to_moments: need K cumulants");
  std::vector<double> m(K);
  for (int k = 1; k <= K; ++k) {
    double sum = 0;
    for (const auto& prof : block_profiles(k)) {
      double prod = static_cast<double>(prof.count);
      for (int s : prof.sizes) prod *= kappa[s - 1];
      sum += prod;
    }
    m[k - 1] = sum;
  }
  return m;
}

std::vector<double> moments_to_cumulants(const std::vector<double>& moments, int K) {
  if (K < 1) throw DomainError("moments_to_cumulants: K must be positive");
  check_guard(K);
  if (static_cast<int>(moments.size()) < K) throw DomainError("moments_to_cumulants: need K moments");
  std::vector<double> kappa(K, 0.0);
  for (int k = 1; k <= K; ++k) {
    double rest = 0;
    for (const auto& prof : block_profiles(k)) {
      if (prof.sizes.size() == 1) continue;  // the one-block partition carries kappa_k
      double prod = static_cast<double>(prof.count);
      for (int s : prof.sizes) prod *= kappa[s - 1];
      rest += prod;
    }
    kappa[k - 1] = moments[k - 1] - rest;
  }
  return kappa;
}

void CumulantTable::validate() const {
  if (order < 0) throw DomainError("cumulant table: negative order");
  if (static_cast<int>(rows.size()) != order + 1)
    throw DomainError("cumulant table: expected " + std::to_string(order + 1) + " rows");
  if (rows.front().empty()) throw DomainError("cumulant table: rows must be nonempty");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw DomainError("cumulant table: ragged rows");
}

namespace {

// Sum over compositions l_1 + ... + l_p = i of multinomial * prod kappa^{(l_j)}_{s_j}.
double composition_sum(const CumulantTable& t, const std::vector<int>& sizes, int i) {
  int p = static_cast<int>(sizes.size());
  std::vector<int> parts(p, 0);
  double total = 0;
  // Enumerate compositions with the first part taking its largest value first.
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == p - 1) {
      parts[j] = left;
      double prod = static_cast<double>(multinomial(parts));
      for (int b = 0; b < p; ++b) prod *= t.rows[parts[b]][sizes[b] - 1];
      total += prod;
      return;
    }
    for (int v = left; v >= 0; --v) {
      parts[j] = v;
      self(self, j + 1, left - v);
    }
  };
  rec(rec, 0, i);
  return total;
}

}  // namespace

ExpansionResult infinitesimal_moments(const CumulantTable& table, int K) {
  table.validate();
  if (table.order > 4) throw DomainError("infinitesimal_moments: order must be <= 4");
  if (K < 1) throw DomainError("infinitesimal_moments: K must be positive");
  check_guard(K);
  if (table.length() < K) throw DomainError("infinitesimal_moments: table shorter than K");
  ExpansionResult r;
  r.orders.assign(table.order + 1, std::vector<double>(K, 0.0));
  for (int i = 0; i <= table.order; ++i) r.scales.push_back("phi^(" + std::to_string(i) + ")");
  for (int k = 1; k <= K; ++k) {
    for (const auto& prof : block_profiles(k)) {
      for (int i = 0; i <= table.order; ++i)
        r.orders[i][k - 1] += static_cast<double>(prof.count) * composition_sum(table, prof.sizes, i);
    }
  }
  return r;
}

std::vector<double> uniform_cumulants(int K) {
  std::vector<double> m(K);
  for (int k = 1; k <= K; ++k) m[k - 1] = 1.0 / (k + 1);
  return moments_to_cumulants(m, K);
}

std::vector<double> quantized_r_shift(const std::vector<double>& kappa, QuantizedDirection direction) {
  if (kappa.empty()) return {};
  auto u = uniform_cumulants(static_cast<int>(kappa.size()));
  std::vector<double> out(kappa.size());
  double sign = direction == QuantizedDirection::to_quantized ? -1.0 : 1.0;
  for (std::size_t n = 0; n < kappa.size(); ++n) out[n] = kappa[n] + sign * u[n];
  return out;
}

}  // namespace freecorr
