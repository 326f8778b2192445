#include "lsg/gf2.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lsg/error.hpp"

namespace lsg {

BitRow::BitRow(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

void BitRow::set(std::size_t j, bool value) {
  const auto mask = std::uint64_t{1} << (j & 63);
  if (value) {
    words_[j >> 6] |= mask;
  } else {
    words_[j >> 6] &= ~mask;
  }
}

bool BitRow::any() const {
  for (auto w : words_) {
    if (w != 0) return true;
  }
  return false;
}

std::size_t BitRow::count() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t BitRow::find_first() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
  }
  return size_;
}

BitRow& BitRow::operator^=(const BitRow& other) {
  if (other.size_ != size_) throw ValidationError("BitRow size mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

bool BitRow::dot(const BitRow& other) const {
  if (other.size_ != size_) throw ValidationError("BitRow size mismatch");
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
  return (std::popcount(acc) & 1) != 0;
}

std::vector<std::size_t> BitRow::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    auto w = words_[k];
    while (w != 0) {
      out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

BinaryLinearSystem::BinaryLinearSystem(std::vector<BitRow> rows, BitRow rhs)
    : rows_(std::move(rows)), rhs_(std::move(rhs)) {
  if (rows_.empty()) throw ValidationError("linear system needs at least one equation");
  cols_ = rows_.front().size();
  if (cols_ == 0) throw ValidationError("linear system needs at least one variable");
  if (rhs_.size() != rows_.size()) throw ValidationError("right-hand side length differs from row count");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != cols_) throw ValidationError("ragged coefficient matrix");
    if (!rows_[i].any()) throw ValidationError("equation " + std::to_string(i) + " has empty support");
  }
}

BinaryLinearSystem BinaryLinearSystem::from_supports(std::size_t cols,
                                                     const std::vector<std::vector<std::size_t>>& supports,
                                                     const std::vector<int>& rhs) {
  if (supports.size() != rhs.size()) throw ValidationError("support/rhs length mismatch");
  std::vector<BitRow> rows;
  rows.reserve(supports.size());
  BitRow b(supports.size());
  for (std::size_t i = 0; i < supports.size(); ++i) {
    BitRow r(cols);
    for (auto j : supports[i]) {
      if (j >= cols) throw ValidationError("support index out of range");
      r.set(j);
    }
    rows.push_back(std::move(r));
    b.set(i, (rhs[i] & 1) != 0);
  }
  return BinaryLinearSystem(std::move(rows), std::move(b));
}

bool BinaryLinearSystem::satisfied_by(const BitRow& x) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].dot(x) != rhs_.test(i)) return false;
  }
  return true;
}

std::vector<std::size_t> row_support(const BinaryLinearSystem& sys, std::size_t i) {
  if (i >= sys.rows()) throw ValidationError("row index out of range");
  return sys.row(i).ones();
}

std::vector<BitAssignment> satisfying_assignments(const BinaryLinearSystem& sys, std::size_t i) {
  const auto support = row_support(sys, i);
  const auto k = support.size();
  if (k >= 63) throw ValidationError("equation too wide to enumerate");
  const bool parity = sys.rhs(i);
  std::vector<BitAssignment> out;
  out.reserve(std::size_t{1} << (k - 1));
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << k); ++code) {
    if (((std::popcount(code) & 1) != 0) != parity) continue;
    BitAssignment a(k);
    for (std::size_t p = 0; p < k; ++p) a[p] = static_cast<std::uint8_t>((code >> (k - 1 - p)) & 1U);
    out.push_back(std::move(a));
  }
  return out;
}

std::optional<BitRow> gf2_solve(const BinaryLinearSystem& sys) {
  const auto m = sys.rows();
  const auto n = sys.cols();
  // Augmented rows: n coefficient bits followed by the rhs bit.
  std::vector<BitRow> aug;
  aug.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    BitRow r(n + 1);
    for (auto j : sys.row(i).ones()) r.set(j);
    r.set(n, sys.rhs(i));
    aug.push_back(std::move(r));
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && !aug[pivot].test(col)) ++pivot;
    if (pivot == m) continue;
    std::swap(aug[rank], aug[pivot]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i != rank && aug[i].test(col)) aug[i] ^= aug[rank];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t i = rank; i < m; ++i) {
    if (aug[i].test(n)) return std::nullopt;
  }
  BitRow x(n);
  for (std::size_t r = 0; r < rank; ++r) x.set(pivot_cols[r], aug[r].test(n));
  return x;
}

BinaryLinearSystem read_lsys(std::istream& in) {
  std::size_t m = 0;
  std::size_t n = 0;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("lsys: missing header");
  {
    std::istringstream hdr(line);
    if (!(hdr >> m >> n) || m == 0 || n == 0) throw ValidationError("lsys: bad header '" + line + "'");
    std::string extra;
    if (hdr >> extra) throw ValidationError("lsys: trailing data in header");
  }
  auto parse_bits = [](const std::string& text, std::size_t expected, const char* what) {
    if (text.size() != expected) {
      throw ValidationError(std::string("lsys: ") + what + " has length " + std::to_string(text.size()) +
                            ", expected " + std::to_string(expected));
    }
    BitRow r(expected);
    for (std::size_t j = 0; j < expected; ++j) {
      if (text[j] == '1') {
        r.set(j);
      } else if (text[j] != '0') {
        throw ValidationError(std::string("lsys: invalid character in ") + what);
      }
    }
    return r;
  };
  std::vector<BitRow> rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw ValidationError("lsys: truncated matrix");
    rows.push_back(parse_bits(line, n, "matrix row"));
  }
  if (!std::getline(in, line)) throw ValidationError("lsys: missing right-hand side");
  auto b = parse_bits(line, m, "right-hand side");
  while (std::getline(in, line)) {
    if (!line.empty()) throw ValidationError("lsys: trailing content");
  }
  return BinaryLinearSystem(std::move(rows), std::move(b));
}

void write_lsys(std::ostream& out, const BinaryLinearSystem& sys) {
  out << sys.rows() << ' ' << sys.cols() << '\n';
  for (std::size_t i = 0; i < sys.rows(); ++i) {
    std::string line(sys.cols(), '0');
    for (auto j : sys.row(i).ones()) line[j] = '1';
    out << line << '\n';
  }
  std::string b(sys.rows(), '0');
  for (std::size_t i = 0; i < sys.rows(); ++i) {
    if (sys.rhs(i)) b[i] = '1';
  }
  out << b << '\n';
}

BinaryLinearSystem load_lsys(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return read_lsys(in);
}

void save_lsys(const std::string& path, const BinaryLinearSystem& sys) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  write_lsys(out, sys);
}

}  // namespace lsg
