#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tamestrata/strata.hpp"

namespace ts {

// Matrix of an element of A = End_F(V) in the E_0-regular basis
// {theta_b pi_0^a} (one block per copy of E_0). Entry (w, v) is a truncated
// F-series stored as t-power -> code of its k_F coefficient. The matrix is
// known for block valuations < prec.
struct ElemMatrix {
  int N = 0;
  std::vector<std::map<int, std::uint32_t>> e;
  int prec = 0;

  std::map<int, std::uint32_t>& at(int w, int v) { return e[w * N + v]; }
  const std::map<int, std::uint32_t>& at(int w, int v) const { return e[w * N + v]; }
};

// F_p-subspace of A / P^M, i.e. an o_F-lattice between P^M and A.
struct Lattice {
  std::vector<std::vector<std::uint8_t>> rows;  // echelon form
  std::vector<int> pivots;
  int dim() const { return static_cast<int>(rows.size()); }
};

struct LogIndex {
  long long value = 0;  // index = p^value
  std::string provenance;  // "closed-form" or "oracle"
};

class MatrixModel {
public:
  OrderDesc order;
  int M = 0;    // lattices are taken modulo P^M
  int N = 0, e0 = 1, f0 = 1, m0 = 1;
  int bF = 1;   // [k_F : F_p]
  int p = 2;

  ElemMatrix matrix_of(const TameSeries& x) const;
  ElemMatrix multiply(const ElemMatrix& a, const ElemMatrix& b) const;
  bool equal(const ElemMatrix& a, const ElemMatrix& b) const;
  // Minimum block valuation; ZeroToPrecision when nothing nonzero is known.
  long long valuation(const ElemMatrix& a) const;
  int block_val(int w, int v, int l) const { return e0 * l + level_[w] - level_[v]; }

  int ambient_dim() const { return static_cast<int>(slots_.size()) * bF; }
  Lattice radical_power(int k) const;
  Lattice sum(const Lattice& a, const Lattice& b) const;
  Lattice intersect(const Lattice& a, const Lattice& b) const;
  bool contains(const Lattice& big, const Lattice& small) const;
  bool same(const Lattice& a, const Lattice& b) const;
  // N_k(beta) = {x in A : beta x - x beta in P^k}, modulo P^M.
  Lattice n_k(const ElemMatrix& beta, int k) const;
  // B_beta + P^m with B_beta the commutant of beta in A.
  Lattice commutant_plus(const ElemMatrix& beta, int m) const;
  // min ord_t Tr(c x) over x in the lattice (P^M contributes its own bound).
  long long min_trace_ord(const ElemMatrix& c, const Lattice& L) const;

  // Public for the builder.
  struct Slot {
    int w, v, l;
  };
  std::vector<int> level_;               // a-position of each basis vector
  std::vector<Slot> slots_;              // val in [0, M)
  std::vector<std::uint32_t> gammaF_;    // F_p-basis of k_F
  std::map<std::uint32_t, std::vector<int>> kF_coords_;
  std::map<std::uint32_t, std::vector<std::uint32_t>> kE0_coords_;  // over k_F, basis theta_b
  std::vector<std::uint32_t> theta_;

private:
  std::vector<std::uint8_t> unit_vector(int slot, int digit) const;

  struct Memo {
    std::mutex mu;
    std::map<std::string, Lattice> commutants;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

// prec is in t-steps: M = prec * e_A. Throws TooLarge (N > 8 or prec > 24).
MatrixModel model_build(const OrderDesc& A, int prec);
// A t-step precision large enough for strata of level up to n.
int oracle_prec_for(const OrderDesc& A, long long n);

K0 oracle_k0(const MatrixModel& model, const TameSeries& beta);

struct HJLattices {
  Lattice h;
  Lattice j;
};
HJLattices oracle_hj(const MatrixModel& model, const DefiningSeq& seq);

// Throws NotNested.
LogIndex oracle_index(const MatrixModel& model, const Lattice& big, const Lattice& small);

// B_i + P^m for chain position i of a sequence (i > s means A itself).
Lattice oracle_level_lattice(const MatrixModel& model, const DefiningSeq& seq, int i, int m);

}  // namespace ts
