#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sepcrit {

using BasisIndex = std::uint64_t;

/// Largest qubit count any routine in this library accepts. Dense matrices are
/// further limited to kMaxDenseQubits.
inline constexpr int kMaxQubits = 30;

/// An N-bit label of a computational basis state. Qubit 1 is the most
/// significant bit, so the tuple (0,0,1) on three qubits is row index 1.
class IndexTuple {
 public:
  IndexTuple(int n_qubits, BasisIndex bits);

  /// Parses a string of '0' and '1' characters, e.g. "0011".
  static IndexTuple parse(std::string_view digits);

  int n_qubits() const { return n_; }
  BasisIndex index() const { return bits_; }

  /// Digit of qubit `q`, counted from 0 at the most significant position.
  int digit(int q) const { return static_cast<int>((bits_ >> (n_ - 1 - q)) & 1U); }

  /// Number of 1 digits.
  int weight() const;

  /// Tuple with zeroes and ones exchanged.
  IndexTuple complement() const;

  std::string str() const;

  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
  friend auto operator<=>(const IndexTuple&, const IndexTuple&) = default;

 private:
  int n_;
  BasisIndex bits_;
};

inline int weight(const IndexTuple& t) { return t.weight(); }
inline IndexTuple complement(const IndexTuple& t) { return t.complement(); }

/// Mask with all N bits set.
inline BasisIndex full_mask(int n_qubits) {
  return n_qubits >= 64 ? ~BasisIndex{0} : ((BasisIndex{1} << n_qubits) - 1);
}

/// Bit of basis index belonging to qubit `q` (0-based, qubit 0 is the MSB).
inline BasisIndex qubit_bit(int n_qubits, int q) { return BasisIndex{1} << (n_qubits - 1 - q); }

/// All basis indices with exactly `w` ones among `n_qubits` bits, ascending.
std::vector<BasisIndex> indices_of_weight(int n_qubits, int w);

/// A split of the qubits into two nonempty groups. Stored canonically as the
/// mask of the side containing qubit 1, using the basis-index bit layout.
class Bipartition {
 public:
  Bipartition(int n_qubits, BasisIndex side_mask);

  /// Builds from 0-based qubit positions of one side.
  static Bipartition from_qubits(int n_qubits, const std::vector<int>& side);

  /// Parses labels like "A|BC" or "AB|CD" (letters name qubits in order).
  static Bipartition parse(std::string_view label);

  int n_qubits() const { return n_; }
  BasisIndex side_a() const { return side_a_; }
  BasisIndex side_b() const { return full_mask(n_) ^ side_a_; }
  int size_a() const;

  std::vector<int> qubits_a() const;
  std::vector<int> qubits_b() const;

  /// Label such as "AB|C"; the side holding qubit A is written first.
  std::string label() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
  friend auto operator<=>(const Bipartition&, const Bipartition&) = default;

 private:
  int n_;
  BasisIndex side_a_;
};

/// Every bipartition of N qubits, 2^(N-1) - 1 in total, ordered by mask.
std::vector<Bipartition> all_bipartitions(int n_qubits);

}  // namespace sepcrit
