#include "sepcrit/index_tuple.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace sepcrit {

namespace {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range: " + std::to_string(n_qubits));
  }
}

}  // namespace

IndexTuple::IndexTuple(int n_qubits, BasisIndex bits) : n_(n_qubits), bits_(bits) {
  check_qubit_count(n_qubits);
  if ((bits & ~full_mask(n_qubits)) != 0) {
    throw std::invalid_argument("index tuple has bits beyond its length");
  }
}

IndexTuple IndexTuple::parse(std::string_view digits) {
  BasisIndex bits = 0;
  for (char c : digits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("index tuple digits must be 0 or 1");
    }
    bits = (bits << 1) | static_cast<BasisIndex>(c - '0');
  }
  return IndexTuple(static_cast<int>(digits.size()), bits);
}

int IndexTuple::weight() const { return std::popcount(bits_); }

IndexTuple IndexTuple::complement() const { return IndexTuple(n_, bits_ ^ full_mask(n_)); }

std::string IndexTuple::str() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int q = 0; q < n_; ++q) {
    if (digit(q) != 0) {
      s[static_cast<std::size_t>(q)] = '1';
    }
  }
  return s;
}

std::vector<BasisIndex> indices_of_weight(int n_qubits, int w) {
  check_qubit_count(n_qubits);
  std::vector<BasisIndex> out;
  if (w < 0 || w > n_qubits) {
    return out;
  }
  const BasisIndex dim = BasisIndex{1} << n_qubits;
  for (BasisIndex i = 0; i < dim; ++i) {
    if (std::popcount(i) == w) {
      out.push_back(i);
    }
  }
  return out;
}

Bipartition::Bipartition(int n_qubits, BasisIndex side_mask) : n_(n_qubits) {
  check_qubit_count(n_qubits);
  const BasisIndex full = full_mask(n_qubits);
  if (n_qubits < 2 || (side_mask & ~full) != 0 || side_mask == 0 || side_mask == full) {
    throw std::invalid_argument("bipartition sides must be nonempty proper subsets");
  }
  const BasisIndex first = qubit_bit(n_qubits, 0);
  side_a_ = (side_mask & first) != 0 ? side_mask : (side_mask ^ full);
}

Bipartition Bipartition::from_qubits(int n_qubits, const std::vector<int>& side) {
  check_qubit_count(n_qubits);
  BasisIndex mask = 0;
  for (int q : side) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument("qubit position out of range");
    }
    mask |= qubit_bit(n_qubits, q);
  }
  return Bipartition(n_qubits, mask);
}

Bipartition Bipartition::parse(std::string_view label) {
  const auto bar = label.find('|');
  if (bar == std::string_view::npos) {
    throw std::invalid_argument("bipartition label needs a '|'");
  }
  BasisIndex seen = 0;
  int n = 0;
  std::vector<int> left;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i == bar) {
      continue;
    }
    const char c = label[i];
    if (c < 'A' || c > 'Z') {
      throw std::invalid_argument("bipartition labels use letters A-Z");
    }
    const int q = c - 'A';
    if ((seen >> q) & 1U) {
      throw std::invalid_argument("qubit repeated in bipartition label");
    }
    seen |= BasisIndex{1} << q;
    n = std::max(n, q + 1);
    if (i < bar) {
      left.push_back(q);
    }
  }
  if (std::popcount(seen) != n) {
    throw std::invalid_argument("bipartition label skips a qubit");
  }
  return from_qubits(n, left);
}

int Bipartition::size_a() const { return std::popcount(side_a_); }

std::vector<int> Bipartition::qubits_a() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q) {
    if (side_a_ & qubit_bit(n_, q)) {
      out.push_back(q);
    }
  }
  return out;
}

std::vector<int> Bipartition::qubits_b() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q) {
    if (!(side_a_ & qubit_bit(n_, q))) {
      out.push_back(q);
    }
  }
  return out;
}

std::string Bipartition::label() const {
  std::string s;
  for (int q : qubits_a()) {
    s.push_back(static_cast<char>('A' + q));
  }
  s.push_back('|');
  for (int q : qubits_b()) {
    s.push_back(static_cast<char>('A' + q));
  }
  return s;
}

std::vector<Bipartition> all_bipartitions(int n_qubits) {
  check_qubit_count(n_qubits);
  std::vector<Bipartition> out;
  const BasisIndex first = qubit_bit(n_qubits, 0);
  const BasisIndex full = full_mask(n_qubits);
  for (BasisIndex m = first; m < full; ++m) {
    if (m & first) {
      out.emplace_back(n_qubits, m);
    }
  }
  return out;
}

}  // namespace sepcrit
