#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dualalpha {

bool is_prime(std::uint64_t n);

/// A sparse matrix over the prime field F_p, stored as deduplicated
/// (row, col, value) triples with 0 < value < p, sorted by (col, row).
class SparseMatrixFp {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    std::uint32_t value;
  };
  struct Triplet {
    std::size_t row;
    std::size_t col;
    long long value;  // any integer; reduced mod p
  };

  /// Duplicate triplets are summed. Throws std::invalid_argument if `prime`
  /// is not prime or an index is out of range.
  SparseMatrixFp(std::size_t rows, std::size_t cols, std::uint32_t prime,
                 std::vector<Triplet> triplets = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return prime_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  /// Entry value, 0 when absent.
  std::uint32_t at(std::size_t row, std::size_t col) const;

  /// Product over F_p; throws std::invalid_argument on shape or field mismatch.
  SparseMatrixFp multiply(const SparseMatrixFp& rhs) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint32_t prime_;
  std::vector<Entry> entries_;
};

}  // namespace dualalpha
