#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lsg {

/// Fixed-length bit vector packed into 64-bit words.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t size);

  std::size_t size() const { return size_; }
  bool test(std::size_t j) const { return (words_[j >> 6] >> (j & 63)) & 1U; }
  void set(std::size_t j, bool value = true);
  void flip(std::size_t j) { words_[j >> 6] ^= std::uint64_t{1} << (j & 63); }

  bool any() const;
  std::size_t count() const;
  /// Lowest set index, or size() when empty.
  std::size_t find_first() const;

  BitRow& operator^=(const BitRow& other);
  /// Parity of the bitwise AND.
  bool dot(const BitRow& other) const;

  /// Ascending list of set indices.
  std::vector<std::size_t> ones() const;

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// One satisfying assignment of an equation, listed in row-support order.
using BitAssignment = std::vector<std::uint8_t>;

/// An m x n linear system Ax = b over GF(2). Indices are zero-based.
///
/// Every row must contain at least one variable; m and n are at least one.
class BinaryLinearSystem {
 public:
  BinaryLinearSystem(std::vector<BitRow> rows, BitRow rhs);

  /// Builds from row supports; each support is a list of column indices.
  static BinaryLinearSystem from_supports(std::size_t cols,
                                          const std::vector<std::vector<std::size_t>>& supports,
                                          const std::vector<int>& rhs);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const BitRow& row(std::size_t i) const { return rows_.at(i); }
  bool rhs(std::size_t i) const { return rhs_.test(i); }
  const BitRow& rhs() const { return rhs_; }

  bool satisfied_by(const BitRow& x) const;

  friend bool operator==(const BinaryLinearSystem&, const BinaryLinearSystem&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitRow> rows_;
  BitRow rhs_;
};

/// Ascending column indices j with A_ij = 1.
std::vector<std::size_t> row_support(const BinaryLinearSystem& sys, std::size_t i);

/// All assignments to the row's variables with parity b_i, in lexicographic
/// order (first support variable most significant). Size is 2^(|V_i|-1).
std::vector<BitAssignment> satisfying_assignments(const BinaryLinearSystem& sys, std::size_t i);

/// Gaussian elimination with lowest-index pivoting; free variables are 0.
std::optional<BitRow> gf2_solve(const BinaryLinearSystem& sys);

/// `.lsys` text: "m n", m lines of n chars in {0,1}, one line of m chars for b.
BinaryLinearSystem read_lsys(std::istream& in);
void write_lsys(std::ostream& out, const BinaryLinearSystem& sys);
BinaryLinearSystem load_lsys(const std::string& path);
void save_lsys(const std::string& path, const BinaryLinearSystem& sys);

}  // namespace lsg
