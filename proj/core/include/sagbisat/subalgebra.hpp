#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "sagbisat/groebner.hpp"
#include "sagbisat/ring.hpp"

namespace sagbisat {

/// K[g_1, ..., g_r] inside the ring of its generators, ordered by that ring.
struct SubalgebraPresentation {
  RingPtr ring;
  std::vector<Polynomial> generators;
  std::optional<Grading> grading;

  /// Drops zero and constant inputs, makes the rest monic, removes exact
  /// duplicates and sorts. Throws NotHomogeneous if a grading is given and
  /// some generator is not homogeneous for it.
  static SubalgebraPresentation make(const std::vector<Polynomial>& gens, std::optional<Grading> w = std::nullopt);

  const TermOrdering& ordering() const { return ring->ordering(); }
  std::size_t size() const { return generators.size(); }
};

/// Ascending by (W-degree when graded, leading term, number of terms).
void sort_generators(std::vector<Polynomial>& gens, const std::optional<Grading>& w);

/// K[x1, ..., xr] with DegRevLex, the home of relations and witnesses.
/// x_i stands for the i-th generator (1-based names).
RingPtr relation_ring(const Field& field, std::size_t r);

enum class Verdict { In, Out };

struct MembershipCertificate {
  Verdict verdict = Verdict::Out;
  /// h with f = h(g_1, ..., g_r); set iff verdict is In.
  std::optional<Polynomial> witness;
};

/// Gröbner basis of <x_i - g_i> under an ordering eliminating the original
/// variables, reusable for many queries against the same presentation.
/// With a degree bound (graded presentations only) the basis is truncated
/// and only homogeneous queries of first-row degree <= bound are answered.
class MembershipOracle {
 public:
  explicit MembershipOracle(const SubalgebraPresentation& s, std::optional<long> degree_bound = std::nullopt);
  MembershipCertificate test(const Polynomial& f) const;
  const RingPtr& xring() const { return xring_; }

 private:
  SubalgebraPresentation s_;
  RingPtr big_;
  RingPtr xring_;
  IdealBasis basis_;
  std::optional<long> bound_;
};

MembershipCertificate member(const Polynomial& f, const SubalgebraPresentation& s);

/// Generators of Rel_g(g_1, ..., g_r) = <g, x_i - g_i> ∩ K[x], taken from the
/// reduced elimination basis. Polynomials live in relation_ring(r).
std::vector<Polynomial> rel_mod_g(const SubalgebraPresentation& s, const Polynomial& g);

/// S-remainders with respect to a fixed list of monic polynomials. Caches the
/// representation of leading terms and the powers of the generators.
class SubalgebraReducer {
 public:
  explicit SubalgebraReducer(std::vector<Polynomial> gens);

  /// alpha with t = prod LT(g_i)^alpha_i (lexicographically smallest).
  std::optional<std::vector<int>> represent(std::span<const int> t);
  /// prod g_i^alpha_i.
  Polynomial product(const std::vector<int>& alpha);
  /// One S_LT-reduction step, or nullopt if LT(h) is not in the LT-algebra.
  std::optional<Polynomial> step(const Polynomial& h);
  /// Full S-remainder: no support term lies in the LT-algebra.
  Polynomial remainder(const Polynomial& h);

  const std::vector<Polynomial>& generators() const { return gens_; }

 private:
  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const;
  };
  std::vector<Polynomial> gens_;
  std::vector<Term> lts_;
  std::vector<std::vector<Polynomial>> powers_;
  std::unordered_map<std::vector<int>, std::optional<std::vector<int>>, VecHash> cache_;
};

std::optional<Polynomial> slt_reduction_step(const Polynomial& h, const std::vector<Polynomial>& gens);
Polynomial s_remainder(const Polynomial& h, const std::vector<Polynomial>& gens);

/// Repeated S-remainder of each generator by the others followed by
/// saturation by g, until nothing changes. g itself is kept as it is.
/// Throws GNotInS.
SubalgebraPresentation sat_interreduce(const SubalgebraPresentation& s, const Polynomial& g);

struct Enlargement {
  SubalgebraPresentation algebra;
  /// New generators h, with g^k h in the input algebra for k = exponents[i].
  std::vector<Polynomial> added;
  std::vector<unsigned> exponents;
};

/// E_g(S): the generators plus sat(H_j(g_1, ..., g_r), g) for the relations
/// H_j of rel_mod_g, keeping only those not already in S. Throws GNotInS.
Enlargement enlarge(const SubalgebraPresentation& s, const Polynomial& g);
SubalgebraPresentation enlarge_E(const SubalgebraPresentation& s, const Polynomial& g);

}  // namespace sagbisat
