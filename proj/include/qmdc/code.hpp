#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmdc/field.hpp"
#include "qmdc/graph.hpp"

namespace qmdc {

// Square generator matrix over GF(9).  Rows span the code additively, i.e.
// codewords are GF(3)-linear combinations of the rows.
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(std::vector<F9Vec> rows);

  int length() const { return n_; }
  const F9Vec& row(int i) const { return rows_[i]; }
  F9 at(int i, int j) const { return rows_[i][j]; }

  friend bool operator==(const GeneratorMatrix&, const GeneratorMatrix&) = default;

 private:
  int n_;
  std::vector<F9Vec> rows_;
};

// Generator matrix Gamma + w*I of a graph: edge entries carry edge_weight
// (from GF(3)*), diagonal entries are w.  The graph must be loop free.
GeneratorMatrix graph_code(const Graph& g, F3 edge_weight = F3(1));

// Rank of the generator over GF(3), treating each GF(9) entry as the
// coordinate pair (c0, c1).
int f3_rank(const GeneratorMatrix& gen);

// Additive code spanned by a generator matrix.  The GF(3)-dimension k3 is
// computed once at construction.
class AdditiveCode {
 public:
  explicit AdditiveCode(GeneratorMatrix gen);

  int length() const { return n_; }
  int k3() const { return k3_; }
  const GeneratorMatrix& generator() const { return gen_; }

  // Codeword for a coefficient vector of length n.
  F9Vec codeword(const F3Vec& coeffs) const;

 private:
  GeneratorMatrix gen_;
  int n_;
  int k3_;
};

// Outcome of the self-duality check: all pairwise trace-Hermitian inner
// products of generator rows must vanish and the GF(3)-rank must equal the
// length.  violating_pairs lists every (i, j) with a nonzero product.
struct SelfDualReport {
  bool self_dual = false;
  int rank = 0;
  std::vector<std::pair<int, int>> violating_pairs;
};

SelfDualReport is_self_dual(const AdditiveCode& code);

struct CodeParams {
  int n = 0;
  int k3 = 0;
  bool self_dual = false;
  std::optional<int> d;

  // Standard label for a self-dual qutrit stabilizer code, e.g.
  // "[[51, 0, 16]]_3"; the distance slot shows "?" when unknown.
  std::string qutrit_label() const;
};

// Weight distribution A_0..A_n by full enumeration; distinct codewords are
// counted once even if the generator is rank deficient.  Lengths above cap
// are refused (throws std::length_error).
std::vector<long long> weight_enumerator(const AdditiveCode& code, int cap = 14);

}  // namespace qmdc
