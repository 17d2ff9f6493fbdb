#pragma once

#include <optional>
#include <vector>

#include "sagbisat/ring.hpp"

namespace sagbisat {

/// Gröbner basis of an ideal with respect to the ordering of `ring`.
struct IdealBasis {
  RingPtr ring;
  std::vector<Polynomial> generators;
  bool reduced = false;
};

/// Reduced Gröbner basis of <gens> under the ordering of their ring.
IdealBasis buchberger(const std::vector<Polynomial>& gens);
/// Same, after moving the generators to a copy of their ring ordered by `ord`.
IdealBasis buchberger(const std::vector<Polynomial>& gens, const TermOrdering& ord);

/// Fully reduced remainder of f modulo a Gröbner basis.
Polynomial normal_form(const Polynomial& f, const IdealBasis& basis);
/// Fully reduced remainder of f modulo an arbitrary list (division algorithm).
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors);

/// Block ordering: total degree then DegRevLex on `eliminate`, then `kept`
/// (DegRevLex when omitted) on the remaining variables.
TermOrdering make_elimination_ordering(std::size_t nvars, const std::vector<std::size_t>& eliminate,
                                       std::optional<TermOrdering> kept = std::nullopt);

/// True if every term involving a variable outside `keep` is larger than
/// every term supported on `keep`, as certified by the leading rows.
bool is_elimination_ordering(const TermOrdering& ord, const std::vector<std::size_t>& keep);

/// Basis elements supported on `keep`; throws OrderingNotEliminating.
std::vector<Polynomial> elimination_ideal(const IdealBasis& basis, const std::vector<std::size_t>& keep);

/// Buchberger restricted to S-pairs and results of first-row W-degree <= d.
/// Generators must be W-homogeneous (NotHomogeneous otherwise).
IdealBasis truncated_buchberger(const std::vector<Polynomial>& gens, const Grading& w, long d);

}  // namespace sagbisat
