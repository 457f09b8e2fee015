#pragma once
// The bicategorical side at desk scale: the representable Tambara profunctor
// attached to a boundary pair, its strength, the comonoid structure on
// bidirectional boundaries, and the correspondence between optics and
// extensional Tambara transformations over a finite universe of cells.
//
// Cell membership is decided by the concretization invariant (constant on
// classes by construction and injective on classes, which the test suites
// re-verify against the union-find tables), so cells stay cheap even when the
// residual of an intermediate representative is large.

#include "concrete.hpp"

namespace optikit {

// A canonical, comparable key for the class of a representative.
using ClassKey = std::vector<std::vector<int>>;

inline ClassKey class_key(const Action& act, const Rep& p, const Sig& sig) {
  ConcreteOptic co = concretize(act, p, sig);
  ClassKey key;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, IsoC>) {
          key = {b.fwd.tab, b.bwd.tab};
        } else if constexpr (std::is_same_v<T, LensC>) {
          key = {b.get.tab, b.put.tab};
        } else if constexpr (std::is_same_v<T, PrismC>) {
          key = {b.matching.tab, b.review.tab};
        } else if constexpr (std::is_same_v<T, AffineC>) {
          key = {b.step.tab};
        } else {
          throw DomainMismatch("class_key: invariant not validated for kind");
        }
      },
      co.body);
  return key;
}

// The profunctor X, Y |-> Optic((X, Y), (A, A')) carried by representatives.
struct TambaraProf {
  Action act;
  int a = 1, ap = 1;  // the boundary

  ClassKey key(const Rep& p, int x, int y) const {
    return class_key(act, p, Sig{x, y, a, ap});
  }

  // dimap(f, g) : P(X, Y) -> P(X', Y') for f : X' -> X, g : Y -> Y'.
  Rep dimap(const Fn& f, const Fn& g, const Rep& p) const {
    return Rep{p.m, KHom{f.dom, p.l.cod, compose(p.l.fn, f)},
               KHom{p.r.fn.dom, g.cod, compose(g, p.r.fn)}};
  }

  // zeta_M : P(X, Y) -> P(M.X, M.Y).
  Rep zeta(const Residual& m, const Rep& p, int x, int y) const {
    Residual mn = act.residual_tensor(m, p.m);
    Fn med = act.residual_tensor_mediator(m, p.m, a);    // (M@N).A -> M.(N.A)
    Fn medp = act.residual_tensor_mediator(m, p.m, ap);
    Fn l = compose(invert_bijection(med), act.act_left(m, p.l).fn);
    Fn r = compose(act.act_left(m, p.r).fn, medp);
    (void)x;
    (void)y;
    return Rep{mn, KHom{l.dom, l.cod, std::move(l)}, KHom{r.dom, r.cod, std::move(r)}};
  }
};

// All representatives of a cell with residuals within `rbound`, enumerated
// directly (the tests cross-check that these cover every class of the cell).
inline std::vector<Rep> enumerate_cell_reps(const Action& act, int x, int y,
                                            int a, int ap, int rbound,
                                            uint64_t cap = uint64_t(1) << 22) {
  std::vector<Rep> out;
  for (const Residual& m : act.enumerate_residuals(rbound)) {
    int car = act.act_obj(m, a), carp = act.act_obj(m, ap);
    uint64_t ln = fn_count(x, car), rn = fn_count(carp, y);
    if (checked_mul(ln, rn) > cap) throw CapExceeded("cell too large");
    for (uint64_t li = 0; li < ln; ++li)
      for (uint64_t ri = 0; ri < rn; ++ri)
        out.push_back(Rep{m, KHom{x, car, decode_fn(x, car, li)},
                          KHom{carp, y, decode_fn(carp, y, ri)}});
  }
  return out;
}

// ---- optics as extensional Tambara transformations -----------------------

// The transformation induced by p : (S, S') -> (A, A') between the
// profunctors at boundaries (A, A') and (S, S'): precomposition with p.
struct ProfTransformation {
  Action act;
  Rep p;           // (S, S') -> (A, A')
  int s = 1, sp = 1, a = 1, ap = 1;

  // The component at boundary (B, B') is
  //   t : Optic((A, A'), (B, B')) -> Optic((S, S'), (B, B')),  q |-> p ; q.
  Rep apply(const Rep& q, int b, int bp) const {
    return compose_optics(act, p, q, b, bp);
  }
};

inline Rep profunctor_to_optic(const ProfTransformation& t) {
  Rep idq = identity_optic(t.act, t.a);
  return t.apply(idq, t.a, t.ap);
}

// ---- comonoid structure on bidirectional boundaries ----------------------

// Counit: composition with the connector optic (S, S) -> (I, I); on a
// representative x = <f | g> of (X, Y) -> (S, S) this is the plain morphism
// g . f : X -> Y.
inline Fn comonoid_counit(const Action& act, const Rep& x) {
  if (act.kleisli()) throw DomainMismatch("comonoid: pure instances only");
  (void)act;
  return compose(x.r.fn, x.l.fn);
}

// Comultiplication: a representative <f | g> of (X, Y) -> (S, S) becomes the
// chain <f | id | g> from X to Y with boundary S.
inline ChainRep comonoid_comult(const Action& act, const Rep& x, int s) {
  if (act.kleisli()) throw DomainMismatch("comonoid: pure instances only");
  int car = x.l.cod;
  (void)act;
  (void)s;
  return ChainRep{x.m, x.m, x.l.fn, id_fn(car), x.r.fn};
}

// Does p : (S, S) -> (A, A) commute with the counit and comultiplication on
// the test cell x = <f | g> : (X, Y) -> (S, S)?  The two squares are decided
// respectively by plain morphism equality and by the chain concretization
// invariant at boundary A.
inline bool comonoid_squares(const Action& act, const Rep& p, const Rep& x,
                             int a, int xsz) {
  Rep tx = compose_optics(act, x, p, a, a);
  // counit square
  if (!(comonoid_counit(act, tx) == comonoid_counit(act, x))) return false;
  // comultiplication square: applying p to both junctions of Delta(x) turns
  // the identity middle into (M . l_p) . (M . r_p) conjugated by the tensor
  // mediator, while Delta(t(x)) keeps an identity middle.
  Fn med = act.residual_tensor_mediator(x.m, p.m, a);  // (M@N).A -> M.(N.A)
  Fn mid = compose(invert_bijection(med),
                   compose(act.act_left(x.m, p.l).fn,
                           compose(act.act_left(x.m, p.r).fn, med)));
  ChainRep lhs{tx.m, tx.m, tx.l.fn, mid, tx.r.fn};
  ChainRep rhs{tx.m, tx.m, tx.l.fn, id_fn(tx.l.cod), tx.r.fn};
  return chain_concretize(act, lhs, xsz, a) == chain_concretize(act, rhs, xsz, a);
}

// p is a comonoid homomorphism iff the squares commute for every test cell;
// the identity cell alone is already equivalent to lawfulness, and the
// remaining cells provide independent corroboration.
inline bool is_comonoid_homomorphism(const Action& act, const Rep& p, int s,
                                     int a, int cell_rbound = 1,
                                     int cell_x = 2, int cell_y = 2) {
  if (!comonoid_squares(act, p, identity_optic(act, s), a, s)) return false;
  for (const Rep& x : enumerate_cell_reps(act, cell_x, cell_y, s, s, cell_rbound))
    if (!comonoid_squares(act, p, x, a, cell_x)) return false;
  return true;
}

}  // namespace optikit
