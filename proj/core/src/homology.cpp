#include "dualalpha/homology.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace dualalpha {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t reduce(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

SparseMatrixFp::SparseMatrixFp(std::size_t rows, std::size_t cols, std::uint32_t prime,
                               std::vector<Triplet> triplets)
    : rows_(rows), cols_(cols), prime_(prime) {
  if (!is_prime(prime)) {
    throw std::invalid_argument("modulus " + std::to_string(prime) + " is not prime");
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  for (std::size_t i = 0; i < triplets.size();) {
    const auto [r, c, v0] = triplets[i];
    if (r >= rows || c >= cols) {
      throw std::invalid_argument("sparse entry (" + std::to_string(r) + "," + std::to_string(c) +
                                  ") out of range");
    }
    std::uint64_t sum = reduce(v0, prime);
    std::size_t j = i + 1;
    for (; j < triplets.size() && triplets[j].row == r && triplets[j].col == c; ++j) {
      sum = (sum + reduce(triplets[j].value, prime)) % prime;
    }
    if (sum != 0) entries_.push_back({r, c, static_cast<std::uint32_t>(sum)});
    i = j;
  }
}

std::uint32_t SparseMatrixFp::at(std::size_t row, std::size_t col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{col, row},
                             [](const Entry& e, const std::pair<std::size_t, std::size_t>& key) {
                               return e.col != key.first ? e.col < key.first : e.row < key.second;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return 0;
}

SparseMatrixFp SparseMatrixFp::multiply(const SparseMatrixFp& rhs) const {
  if (cols_ != rhs.rows_ || prime_ != rhs.prime_) {
    throw std::invalid_argument("sparse multiply: shape or field mismatch");
  }
  // Column j of the product is sum_k rhs(k, j) * column k of this.
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> columns(cols_);
  for (const Entry& e : entries_) columns[e.col].push_back({e.row, e.value});
  std::vector<Triplet> out;
  for (const Entry& e : rhs.entries_) {
    for (const auto& [row, value] : columns[e.row]) {
      out.push_back({row, e.col, static_cast<long long>(mul_mod(value, e.value, prime_))});
    }
  }
  return SparseMatrixFp(rows_, rhs.cols_, prime_, std::move(out));
}

std::size_t rank_fp(const SparseMatrixFp& matrix) {
  using Row = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (col, value), by col
  const std::uint32_t p = matrix.prime();
  std::vector<Row> rows(matrix.rows());
  std::vector<std::size_t> col_count(matrix.cols(), 0);
  std::vector<std::vector<std::uint32_t>> col_rows(matrix.cols());
  for (const auto& e : matrix.entries()) {  // (col, row) order keeps rows sorted
    rows[e.row].push_back({static_cast<std::uint32_t>(e.col), e.value});
    ++col_count[e.col];
    col_rows[e.col].push_back(static_cast<std::uint32_t>(e.row));
  }

  using Key = std::pair<std::size_t, std::uint32_t>;  // (row length, row)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  std::vector<char> active(rows.size(), 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    queue.push({rows[r].size(), static_cast<std::uint32_t>(r)});
  }

  std::size_t rank = 0;
  Row merged;
  while (!queue.empty()) {
    const auto [length, r] = queue.top();
    queue.pop();
    if (!active[r] || rows[r].size() != length) continue;
    active[r] = 0;
    if (length == 0) continue;

    const Row& pivot_row = rows[r];
    auto pivot = std::min_element(pivot_row.begin(), pivot_row.end(),
                                  [&](const auto& a, const auto& b) {
                                    return col_count[a.first] < col_count[b.first];
                                  });
    const std::uint32_t c = pivot->first;
    const std::uint32_t inv = inverse_mod(pivot->second, p);
    ++rank;

    for (std::uint32_t q : col_rows[c]) {
      if (!active[q]) continue;
      Row& target = rows[q];
      auto hit = std::lower_bound(target.begin(), target.end(), c,
                                  [](const auto& e, std::uint32_t col) { return e.first < col; });
      if (hit == target.end() || hit->first != c) continue;
      const std::uint32_t factor = mul_mod(hit->second, inv, p);

      // target -= factor * pivot_row
      merged.clear();
      auto a = target.begin();
      auto b = pivot_row.begin();
      while (a != target.end() || b != pivot_row.end()) {
        if (b == pivot_row.end() || (a != target.end() && a->first < b->first)) {
          merged.push_back(*a++);
          continue;
        }
        const std::uint32_t sub = mul_mod(factor, b->second, p);
        if (a == target.end() || b->first < a->first) {
          merged.push_back({b->first, p - sub});
          ++col_count[b->first];
          col_rows[b->first].push_back(q);
        } else {
          const std::uint32_t v = (a->second + p - sub) % p;
          if (v != 0) {
            merged.push_back({a->first, v});
          } else {
            --col_count[a->first];
          }
          ++a;
        }
        ++b;
      }
      target.swap(merged);
      queue.push({target.size(), q});
    }
    for (const auto& [col, value] : pivot_row) --col_count[col];
    rows[r].clear();
  }
  return rank;
}

BettiVector betti(const FilteredComplex& complex, std::uint32_t prime, int max_k) {
  if (!is_prime(prime)) {
    throw std::invalid_argument("betti: modulus " + std::to_string(prime) + " is not prime");
  }
  if (max_k < 0) return {};
  // ranks[k] = rank of d_k; d_0 = 0.
  std::vector<std::size_t> ranks(static_cast<std::size_t>(max_k) + 2, 0);
  for (int k = 1; k <= max_k + 1; ++k) {
    if (complex.size(k) == 0) continue;
    ranks[k] = rank_fp(boundary_matrix(complex, k, prime));
  }
  BettiVector out;
  for (int k = 0; k <= max_k; ++k) out.push_back(complex.size(k) - ranks[k] - ranks[k + 1]);
  return out;
}

std::vector<std::uint64_t> stirling_reference(int n) {
  if (n < 1) throw std::invalid_argument("stirling_reference: n >= 1 required");
  std::vector<std::uint64_t> coeffs{1};
  for (std::uint64_t j = 1; j < static_cast<std::uint64_t>(n); ++j) {
    coeffs.push_back(0);
    for (std::size_t i = coeffs.size() - 1; i > 0; --i) coeffs[i] += j * coeffs[i - 1];
  }
  return coeffs;
}

}  // namespace dualalpha
