#include "qmdc/code.hpp"

#include <sstream>
#include <stdexcept>

namespace qmdc {

GeneratorMatrix::GeneratorMatrix(std::vector<F9Vec> rows)
    : n_(static_cast<int>(rows.size())), rows_(std::move(rows)) {
  if (n_ == 0) throw std::invalid_argument("GeneratorMatrix: no rows");
  for (const auto& r : rows_)
    if (static_cast<int>(r.size()) != n_)
      throw std::invalid_argument("GeneratorMatrix: matrix must be square");
}

GeneratorMatrix graph_code(const Graph& g, F3 edge_weight) {
  if (edge_weight == F3(0))
    throw std::invalid_argument("graph_code: edge weight must be nonzero");
  const int n = g.order();
  std::vector<F9Vec> rows(n, F9Vec(n));
  for (int i = 0; i < n; ++i) {
    if (g.adjacent(i, i)) throw std::invalid_argument("graph_code: graph has a loop");
    for (int j = 0; j < n; ++j) {
      if (i == j)
        rows[i][j] = F9::omega();
      else if (g.adjacent(i, j))
        rows[i][j] = F9(edge_weight, F3(0));
    }
  }
  return GeneratorMatrix(std::move(rows));
}

int f3_rank(const GeneratorMatrix& gen) {
  const int n = gen.length();
  const int cols = 2 * n;
  // Expand to the GF(3) coordinate matrix and run plain Gaussian elimination.
  std::vector<std::vector<uint8_t>> m(n, std::vector<uint8_t>(cols));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m[i][2 * j] = static_cast<uint8_t>(gen.at(i, j).c0().value());
      m[i][2 * j + 1] = static_cast<uint8_t>(gen.at(i, j).c1().value());
    }
  }
  int rank = 0;
  for (int col = 0; col < cols && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (m[r][col]) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    if (m[rank][col] == 2)
      for (int c = col; c < cols; ++c) m[rank][c] = static_cast<uint8_t>((m[rank][c] * 2) % 3);
    for (int r = 0; r < n; ++r) {
      if (r == rank || !m[r][col]) continue;
      int f = 3 - m[r][col];
      for (int c = col; c < cols; ++c)
        m[r][c] = static_cast<uint8_t>((m[r][c] + f * m[rank][c]) % 3);
    }
    ++rank;
  }
  return rank;
}

AdditiveCode::AdditiveCode(GeneratorMatrix gen)
    : gen_(std::move(gen)), n_(gen_.length()), k3_(f3_rank(gen_)) {}

F9Vec AdditiveCode::codeword(const F3Vec& coeffs) const {
  if (static_cast<int>(coeffs.size()) != n_)
    throw std::invalid_argument("codeword: coefficient count must equal length");
  F9Vec word(n_);
  for (int i = 0; i < n_; ++i) {
    if (coeffs[i] == F3(0)) continue;
    for (int j = 0; j < n_; ++j) word[j] = word[j] + coeffs[i] * gen_.at(i, j);
  }
  return word;
}

SelfDualReport is_self_dual(const AdditiveCode& code) {
  const int n = code.length();
  SelfDualReport rep;
  rep.rank = code.k3();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (trace_hermitian_vec(code.generator().row(i), code.generator().row(j)) != F3(0))
        rep.violating_pairs.emplace_back(i, j);
  rep.self_dual = rep.violating_pairs.empty() && rep.rank == n;
  return rep;
}

std::string CodeParams::qutrit_label() const {
  std::ostringstream os;
  os << "[[" << n << ", " << n - k3;
  if (d)
    os << ", " << *d;
  else
    os << ", ?";
  os << "]]_3";
  return os.str();
}

std::vector<long long> weight_enumerator(const AdditiveCode& code, int cap) {
  const int n = code.length();
  if (n > cap) throw std::length_error("weight_enumerator: length exceeds cap");

  // Odometer over all 3^n coefficient vectors with incremental updates: when
  // digit i steps, one generator row is added to the running word (a 2 -> 0
  // wrap is also a single add, since -2 = 1 mod 3).
  std::vector<long long> hist(n + 1, 0);
  std::vector<int> digit(n, 0);
  F9Vec acc(n);
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;

  auto add_row = [&](int i) {
    const F9Vec& r = code.generator().row(i);
    for (int j = 0; j < n; ++j) acc[j] = acc[j] + r[j];
  };

  for (long long step = 0;; ++step) {
    ++hist[weight(acc)];
    if (step + 1 == total) break;
    int i = 0;
    while (digit[i] == 2) {
      digit[i] = 0;
      add_row(i);
      ++i;
    }
    ++digit[i];
    add_row(i);
  }

  // Rank-deficient generators hit each codeword 3^(n-k3) times.
  long long mult = 1;
  for (int i = 0; i < n - code.k3(); ++i) mult *= 3;
  for (auto& h : hist) h /= mult;
  return hist;
}

}  // namespace qmdc
