#pragma once
// Existential (coend) encoding of optics over finite sets.
//
// A representative of an optic (S, S') -> (A, A') is a residual M with
//   l : S -> M . A     r : M . A' -> S'      (homs in the action's category)
// and two representatives are identified by the sliding relation
//   <(phi . A) l | r>  ~  <l | r (phi . A')>        phi : M -> N residual.
//
// OpticTable materializes the quotient for all residuals within a bound as a
// union-find over every representative; representative ids are computed
// arithmetically (residual block offset + l index * #r + r index) so the
// structure scales to tens of millions of representatives.  Edges come from
// the generating residual morphisms only; composites are recovered by
// transitivity through intermediates that stay within the bound.

#include <functional>
#include <unordered_map>

#include "action.hpp"

namespace optikit {

struct Sig {
  int s = 1, sp = 1, a = 1, ap = 1;
  friend bool operator==(const Sig&, const Sig&) = default;
};

struct Rep {
  Residual m;
  KHom l;  // S -> T(M . A)
  KHom r;  // M . A' -> T(S')
  friend bool operator==(const Rep&, const Rep&) = default;
};

inline int default_bound(const Sig& sig) {
  return std::max({sig.s, sig.sp, 2}) + 1;
}

inline Fn invert_bijection(const Fn& f) {
  if (f.dom != f.cod) throw DomainMismatch("invert: not an endo-span");
  Fn g{f.cod, f.dom, std::vector<int>(static_cast<size_t>(f.cod), -1)};
  for (int x = 0; x < f.dom; ++x) {
    if (g.tab[static_cast<size_t>(f(x))] != -1)
      throw DomainMismatch("invert: not injective");
    g.tab[static_cast<size_t>(f(x))] = x;
  }
  return g;
}

// ---- basic constructions -------------------------------------------------

inline Rep identity_optic(const Action& act, int s) {
  Residual u = act.unit();
  if (act.act_obj(u, s) != s) throw OptikitError("unit residual not strict");
  return Rep{u, act.kid(s), act.kid(s)};
}

// iota(f, g) = <f | g> at the unit residual (pure legs).
inline Rep iota(const Action& act, const Fn& f, const Fn& g) {
  return Rep{act.unit(), act.kpure(f), act.kpure(g)};
}

inline Rep iota_k(const Action& act, const KHom& f, const KHom& g) {
  return Rep{act.unit(), f, g};
}

// p then q: p : (S,S') -> (A,A'), q : (A,A') -> (B,B').
// bsz/bpsz are the boundary sizes B, B' of q.
inline Rep compose_optics(const Action& act, const Rep& p, const Rep& q,
                          int bsz, int bpsz) {
  Residual nm = act.residual_tensor(p.m, q.m);
  Fn med = act.residual_tensor_mediator(p.m, q.m, bsz);
  Fn medp = act.residual_tensor_mediator(p.m, q.m, bpsz);
  KHom l = act.kcomp(act.kpure(invert_bijection(med)),
                     act.kcomp(act.act_left(p.m, q.l), p.l));
  KHom r = act.kcomp(p.r, act.kcomp(act.act_left(p.m, q.r), act.kpure(medp)));
  return Rep{nm, l, r};
}

// ---- image restriction ---------------------------------------------------

// Restrict the residual to the part actually hit by l, relabelling
// canonically (ascending).  Returns an equivalent representative.
inline Rep reduce_rep(const Action& act, const Rep& rep, int asz, int apsz) {
  if (act.kind == ActionKind::Trivial || act.kind == ActionKind::Grate)
    return rep;
  const Residual m = rep.m;
  std::vector<char> used_a(static_cast<size_t>(std::max(1, m.a)), 0);
  std::vector<char> used_b(static_cast<size_t>(std::max(1, m.b)), 0);
  auto mark_carrier = [&](int v) {
    switch (act.kind) {
      case ActionKind::Product:
      case ActionKind::Achromatic:
      case ActionKind::Writer:
      case ActionKind::State:
        used_a[static_cast<size_t>(v / asz)] = 1;
        break;
      case ActionKind::Coproduct:
        if (v < m.a) used_a[static_cast<size_t>(v)] = 1;
        break;
      case ActionKind::Affine:
        if (v < m.a)
          used_a[static_cast<size_t>(v)] = 1;
        else
          used_b[static_cast<size_t>((v - m.a) / asz)] = 1;
        break;
      default:
        break;
    }
  };
  for (int s = 0; s < rep.l.dom; ++s) {
    int tv = rep.l.fn(s);
    switch (act.kind) {
      case ActionKind::Writer:
        mark_carrier(tv / act.w.size);
        break;
      case ActionKind::State:
        for (int q0 = 0; q0 < act.q; ++q0)
          mark_carrier(act.state_run(tv, q0, rep.l.cod) / act.q);
        break;
      default:
        mark_carrier(tv);
        break;
    }
  }
  if (act.kind == ActionKind::Achromatic)
    used_a[static_cast<size_t>(m.a) - 1] = 1;  // keep the basepoint

  std::vector<int> keep_a, keep_b;
  for (int i = 0; i < m.a; ++i)
    if (used_a[static_cast<size_t>(i)]) keep_a.push_back(i);
  for (int i = 0; i < m.b; ++i)
    if (used_b[static_cast<size_t>(i)]) keep_b.push_back(i);
  Residual m0{static_cast<int>(keep_a.size()), static_cast<int>(keep_b.size())};
  if (act.kind != ActionKind::Affine) m0.b = 0;
  if (m0 == m) return rep;
  if (act.kind == ActionKind::Affine && m0.a == 0 && m0.b == 0 &&
      !act.affine_allow_empty)
    return rep;  // (0,0) is not an admissible residual by default
  if (act.kind != ActionKind::Affine && act.kind != ActionKind::Coproduct &&
      m0.a == 0)
    return rep;  // only coproduct/affine admit genuinely empty residuals

  std::vector<int> pos_a(static_cast<size_t>(std::max(1, m.a)), 0);
  std::vector<int> pos_b(static_cast<size_t>(std::max(1, m.b)), 0);
  for (size_t i = 0; i < keep_a.size(); ++i) pos_a[static_cast<size_t>(keep_a[i])] = static_cast<int>(i);
  for (size_t i = 0; i < keep_b.size(); ++i) pos_b[static_cast<size_t>(keep_b[i])] = static_cast<int>(i);

  // rel : M . A -> M0 . A (collapsing unused rows arbitrarily to 0) and
  // emb : M0 . A' -> M . A'.
  auto rel_emb = [&](int x) {
    int dom_c = act.act_obj(m, x), cod_c = act.act_obj(m0, x);
    Fn rel{dom_c, std::max(1, cod_c), std::vector<int>(static_cast<size_t>(dom_c), 0)};
    rel.cod = cod_c == 0 ? 1 : cod_c;  // dom rows are unused when cod empty
    Fn emb{cod_c, dom_c, std::vector<int>(static_cast<size_t>(cod_c), 0)};
    auto fill = [&](int old_ix, int new_ix) {
      rel.tab[static_cast<size_t>(old_ix)] = new_ix;
      emb.tab[static_cast<size_t>(new_ix)] = old_ix;
    };
    switch (act.kind) {
      case ActionKind::Product:
      case ActionKind::Achromatic:
      case ActionKind::Writer:
      case ActionKind::State:
        for (int i : keep_a)
          for (int v = 0; v < x; ++v)
            fill(pair_ix(i, v, x), pair_ix(pos_a[static_cast<size_t>(i)], v, x));
        break;
      case ActionKind::Coproduct:
        for (int i : keep_a) fill(i, pos_a[static_cast<size_t>(i)]);
        for (int v = 0; v < x; ++v) fill(m.a + v, m0.a + v);
        break;
      case ActionKind::Affine:
        for (int i : keep_a) fill(i, pos_a[static_cast<size_t>(i)]);
        for (int j : keep_b)
          for (int v = 0; v < x; ++v)
            fill(m.a + pair_ix(j, v, x),
                 m0.a + pair_ix(pos_b[static_cast<size_t>(j)], v, x));
        break;
      default:
        break;
    }
    rel.cod = std::max(1, cod_c);
    return std::pair<Fn, Fn>{rel, emb};
  };
  auto [relA, embA] = rel_emb(asz);
  auto [relAp, embAp] = rel_emb(apsz);
  (void)embA;
  (void)relAp;
  KHom l{rep.l.dom, act.act_obj(m0, asz), compose(act.t_map(relA), rep.l.fn)};
  KHom r{act.act_obj(m0, apsz), rep.r.cod, compose(rep.r.fn, embAp)};
  return Rep{m0, l, r};
}

// ---- the bounded quotient table -----------------------------------------

struct OpticClass {
  uint64_t canon_id = 0;
  uint64_t size = 0;
};

struct OpticTable {
  Action act;
  Sig sig;
  int bound = 0;
  std::vector<Residual> residuals;
  std::vector<int> car_a, car_ap;        // carriers per residual
  std::vector<uint64_t> lcnt, rcnt, base;
  uint64_t total = 0;
  std::vector<uint32_t> parent;
  std::vector<uint32_t> rank_;
  std::vector<OpticClass> classes;
  std::unordered_map<uint32_t, uint32_t> root_class;
  uint64_t id_cap = uint64_t(1) << 25;

  uint32_t find(uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(uint32_t x, uint32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
  }

  uint64_t l_index(const KHom& l, int ridx) const {
    uint64_t ta = static_cast<uint64_t>(act.t_obj(car_a[static_cast<size_t>(ridx)]));
    uint64_t ix = 0;
    for (int s = 0; s < sig.s; ++s)
      ix = ix * ta + static_cast<uint64_t>(l.fn(s));
    return ix;
  }
  uint64_t r_index(const KHom& r, int ridx) const {
    uint64_t tsp = static_cast<uint64_t>(act.t_obj(sig.sp));
    uint64_t ix = 0;
    for (int x = 0; x < car_ap[static_cast<size_t>(ridx)]; ++x)
      ix = ix * tsp + static_cast<uint64_t>(r.fn(x));
    return ix;
  }
  KHom decode_l(uint64_t ix, int ridx) const {
    int car = car_a[static_cast<size_t>(ridx)];
    int ta = act.t_obj(car);
    Fn f{sig.s, ta, std::vector<int>(static_cast<size_t>(sig.s))};
    for (int s = sig.s - 1; s >= 0; --s) {
      f.tab[static_cast<size_t>(s)] = static_cast<int>(ix % ta);
      ix /= static_cast<uint64_t>(ta);
    }
    return KHom{sig.s, car, std::move(f)};
  }
  KHom decode_r(uint64_t ix, int ridx) const {
    int car = car_ap[static_cast<size_t>(ridx)];
    int tsp = act.t_obj(sig.sp);
    Fn f{car, tsp, std::vector<int>(static_cast<size_t>(car))};
    for (int x = car - 1; x >= 0; --x) {
      f.tab[static_cast<size_t>(x)] = static_cast<int>(ix % tsp);
      ix /= static_cast<uint64_t>(tsp);
    }
    return KHom{car, sig.sp, std::move(f)};
  }

  int residual_index(const Residual& m) const {
    for (size_t i = 0; i < residuals.size(); ++i)
      if (residuals[i] == m) return static_cast<int>(i);
    return -1;
  }

  uint64_t rep_id(const Rep& rep) const {
    int ri = residual_index(rep.m);
    if (ri < 0) throw DomainMismatch("rep_id: residual outside bound");
    return base[static_cast<size_t>(ri)] +
           l_index(rep.l, ri) * rcnt[static_cast<size_t>(ri)] +
           r_index(rep.r, ri);
  }

  Rep decode(uint64_t id) const {
    size_t ri = 0;
    while (ri + 1 < base.size() && base[ri + 1] <= id) ++ri;
    uint64_t off = id - base[ri];
    return Rep{residuals[ri],
               decode_l(off / rcnt[ri], static_cast<int>(ri)),
               decode_r(off % rcnt[ri], static_cast<int>(ri))};
  }

  void build() {
    residuals = act.enumerate_residuals(bound);
    car_a.clear();
    car_ap.clear();
    lcnt.clear();
    rcnt.clear();
    base.clear();
    total = 0;
    for (const Residual& m : residuals) {
      int ca = act.act_obj(m, sig.a), cap_ = act.act_obj(m, sig.ap);
      car_a.push_back(ca);
      car_ap.push_back(cap_);
      uint64_t lc = checked_pow(static_cast<uint64_t>(act.t_obj(ca)),
                                static_cast<uint64_t>(sig.s));
      uint64_t rc = checked_pow(static_cast<uint64_t>(act.t_obj(sig.sp)),
                                static_cast<uint64_t>(cap_));
      lcnt.push_back(lc);
      rcnt.push_back(rc);
      base.push_back(total);
      total += checked_mul(lc, rc);
      if (total > id_cap) throw CapExceeded("optic table exceeds id cap");
    }
    parent.resize(static_cast<size_t>(total));
    rank_.assign(static_cast<size_t>(total), 0);
    for (uint64_t i = 0; i < total; ++i) parent[static_cast<size_t>(i)] = static_cast<uint32_t>(i);

    for (const ResHom& phi : act.generator_homs(bound)) {
      int i = residual_index(phi.dom), j = residual_index(phi.cod);
      if (i < 0 || j < 0) continue;
      Fn actA = act.act_morphism(phi, sig.a);
      Fn actAp = act.act_morphism(phi, sig.ap);
      Fn tA = act.t_map(actA);
      // l-slide map: l index over M -> l index over N.
      std::vector<uint64_t> lmap(static_cast<size_t>(lcnt[static_cast<size_t>(i)]));
      for (uint64_t li = 0; li < lcnt[static_cast<size_t>(i)]; ++li) {
        KHom l = decode_l(li, i);
        for (int s = 0; s < sig.s; ++s)
          l.fn.tab[static_cast<size_t>(s)] = tA(l.fn.tab[static_cast<size_t>(s)]);
        l.cod = car_a[static_cast<size_t>(j)];
        l.fn.cod = act.t_obj(l.cod);
        lmap[static_cast<size_t>(li)] = l_index(l, j);
      }
      // r-slide map: r index over N -> r index over M.
      std::vector<uint64_t> rmap(static_cast<size_t>(rcnt[static_cast<size_t>(j)]));
      for (uint64_t rj = 0; rj < rcnt[static_cast<size_t>(j)]; ++rj) {
        KHom r = decode_r(rj, j);
        KHom rp{car_ap[static_cast<size_t>(i)], sig.sp,
                compose(r.fn, actAp)};
        rmap[static_cast<size_t>(rj)] = r_index(rp, i);
      }
      uint64_t bi = base[static_cast<size_t>(i)], bj = base[static_cast<size_t>(j)];
      uint64_t rci = rcnt[static_cast<size_t>(i)], rcj = rcnt[static_cast<size_t>(j)];
      for (uint64_t li = 0; li < lcnt[static_cast<size_t>(i)]; ++li) {
        uint64_t lj = lmap[static_cast<size_t>(li)];
        for (uint64_t rj = 0; rj < rcj; ++rj)
          unite(static_cast<uint32_t>(bj + lj * rcj + rj),
                static_cast<uint32_t>(bi + li * rci + rmap[static_cast<size_t>(rj)]));
      }
    }

    // Collect classes; canonical representative = least id in the class.
    std::unordered_map<uint32_t, uint64_t> root_min;
    std::unordered_map<uint32_t, uint64_t> root_size;
    for (uint64_t id = 0; id < total; ++id) {
      uint32_t r = find(static_cast<uint32_t>(id));
      auto [it, fresh] = root_min.try_emplace(r, id);
      if (!fresh && id < it->second) it->second = id;
      ++root_size[r];
    }
    std::vector<std::pair<uint64_t, uint32_t>> order;
    order.reserve(root_min.size());
    for (auto& [root, mn] : root_min) order.push_back({mn, root});
    std::sort(order.begin(), order.end());
    classes.clear();
    root_class.clear();
    for (auto& [mn, root] : order) {
      root_class[root] = static_cast<uint32_t>(classes.size());
      classes.push_back(OpticClass{mn, root_size[root]});
    }
  }

  size_t class_count() const { return classes.size(); }

  int class_of(const Rep& rep) {
    Rep rr = reduce_rep(act, rep, sig.a, sig.ap);
    uint64_t id = rep_id(rr);
    return static_cast<int>(root_class.at(find(static_cast<uint32_t>(id))));
  }

  Rep canon(int cls) const {
    return decode(classes[static_cast<size_t>(cls)].canon_id);
  }
};

inline OpticTable build_quotient(const Action& act, const Sig& sig, int bound,
                                 uint64_t id_cap = uint64_t(1) << 25) {
  OpticTable t;
  t.act = act;
  t.sig = sig;
  t.bound = bound;
  t.id_cap = id_cap;
  t.build();
  return t;
}

// Class count must agree at bound and bound + 1.
inline void bound_stability_audit(const Action& act, const Sig& sig, int bound,
                                  uint64_t id_cap = uint64_t(1) << 25) {
  size_t c0 = build_quotient(act, sig, bound, id_cap).class_count();
  size_t c1 = build_quotient(act, sig, bound + 1, id_cap).class_count();
  if (c0 != c1)
    throw AuditFailure("bound stability audit failed: " + std::to_string(c0) +
                       " classes at bound " + std::to_string(bound) + " vs " +
                       std::to_string(c1) + " at bound " + std::to_string(bound + 1));
}

// ---- costates / states ---------------------------------------------------

// (S, S') -> (I, I): the class is determined by r ; l.
inline KHom costate_to_morphism(const Action& act, const Rep& p) {
  return act.kcomp(p.r, p.l);
}

inline Rep morphism_to_costate(const Action& act, const KHom& f) {
  // <connector | f>: l = id at residual "S itself" (product-style actions).
  if (act.kind != ActionKind::Product)
    throw DomainMismatch("morphism_to_costate: product action only");
  return Rep{Residual{f.dom, 0}, act.kid(f.dom), f};
}

inline uint64_t state_count(const Action& act, int a, int ap, int bound,
                            uint64_t id_cap = uint64_t(1) << 25) {
  return build_quotient(act, Sig{1, 1, a, ap}, bound, id_cap).class_count();
}

// ---- product-action tensor and duals -------------------------------------

// Parallel tensor (product action): (S x T, S' x T') -> (A x B, A' x B').
inline Rep tensor_optics(const Action& act, const Rep& p, const Sig& ps,
                         const Rep& q, const Sig& qs) {
  if (act.kind != ActionKind::Product)
    throw DomainMismatch("tensor_optics: product action only");
  int m = p.m.a, n = q.m.a;
  // l-leg: S x T -> (M x A) x (N x B) -> (M x N) x (A x B).
  Fn shuffle_l =
      tensor_fn(tensor_fn(id_fn(m), swap_fn(ps.a, n)), id_fn(qs.a));
  Fn l = compose(shuffle_l, tensor_fn(p.l.fn, q.l.fn));
  // r-leg: (M x N) x (A' x B') -> (M x A') x (N x B') -> S' x T'.
  Fn unshuffle_r = invert_bijection(
      tensor_fn(tensor_fn(id_fn(m), swap_fn(ps.ap, n)), id_fn(qs.ap)));
  Fn r = compose(tensor_fn(p.r.fn, q.r.fn), unshuffle_r);
  Residual mn{m * n, 0};
  return Rep{mn, KHom{ps.s * qs.s, mn.a * ps.a * qs.a, l},
             KHom{mn.a * ps.ap * qs.ap, ps.sp * qs.sp, r}};
}

// Switched tensor: (S x T, T' x S') -> (A x B, B' x A').
inline Rep switched_tensor_optics(const Action& act, const Rep& p, const Sig& ps,
                                  const Rep& q, const Sig& qs) {
  if (act.kind != ActionKind::Product)
    throw DomainMismatch("switched tensor: product action only");
  int m = p.m.a, n = q.m.a;
  Fn shuffle_l =
      tensor_fn(tensor_fn(id_fn(m), swap_fn(ps.a, n)), id_fn(qs.a));
  Fn l = compose(shuffle_l, tensor_fn(p.l.fn, q.l.fn));
  // r-leg: (M x N) x (B' x A') -> (N x B') x (M x A') -> T' x S'.
  int bp = qs.ap, apz = ps.ap;
  Fn shuffle{m * n * bp * apz, n * bp * m * apz, {}};
  shuffle.tab.resize(static_cast<size_t>(shuffle.dom));
  for (int mi = 0; mi < m; ++mi)
    for (int ni = 0; ni < n; ++ni)
      for (int bi = 0; bi < bp; ++bi)
        for (int ai = 0; ai < apz; ++ai) {
          int src = ((mi * n + ni) * bp + bi) * apz + ai;
          int dst = ((ni * bp + bi) * m + mi) * apz + ai;
          shuffle.tab[static_cast<size_t>(src)] = dst;
        }
  Fn r = compose(tensor_fn(q.r.fn, p.r.fn), shuffle);
  Residual mn{m * n, 0};
  return Rep{mn, KHom{ps.s * qs.s, mn.a * ps.a * qs.a, l},
             KHom{mn.a * bp * apz, qs.sp * ps.sp, r}};
}

// Counit at (S, S'): the connector on S (x) S', a costate (S x S', S x S') -> (I, I).
inline Rep counit_optic(const Action& act, int s, int sp) {
  int c = s * sp;
  return Rep{Residual{c, 0}, act.kid(c), act.kid(c)};
}

// ---- change of base ------------------------------------------------------

struct MonoidalFunctor {
  std::function<int(int)> obj;
  std::function<Fn(const Fn&)> mor;
  std::function<Fn(int, int)> phi;  // F(X) x F(Y) -> F(X x Y), bijective
  Fn phi_unit;                      // 1 -> F(1), bijective
};

inline MonoidalFunctor diagonal_functor() {
  MonoidalFunctor f;
  f.obj = [](int n) { return n * n; };
  f.mor = [](const Fn& g) { return tensor_fn(g, g); };
  f.phi = [](int x, int y) {
    // (X x X) x (Y x Y) -> (X x Y) x (X x Y)
    Fn p{x * x * y * y, x * y * x * y, {}};
    p.tab.resize(static_cast<size_t>(p.dom));
    for (int x1 = 0; x1 < x; ++x1)
      for (int x2 = 0; x2 < x; ++x2)
        for (int y1 = 0; y1 < y; ++y1)
          for (int y2 = 0; y2 < y; ++y2) {
            int src = ((x1 * x + x2) * y + y1) * y + y2;
            int dst = ((x1 * y + y1) * x + x2) * y + y2;
            p.tab[static_cast<size_t>(src)] = dst;
          }
    return p;
  };
  f.phi_unit = id_fn(1);
  return f;
}

// Optic(F): <phi^{-1} (F l) | (F r) phi> over the product action.
inline Rep map_optic(const Action& act, const MonoidalFunctor& f, const Rep& p,
                     const Sig& sig) {
  if (act.kind != ActionKind::Product)
    throw DomainMismatch("map_optic: product action only");
  Fn fl = f.mor(p.l.fn);
  Fn fr = f.mor(p.r.fn);
  Fn phiA = f.phi(p.m.a, sig.a);
  Fn phiAp = f.phi(p.m.a, sig.ap);
  Fn l = compose(invert_bijection(phiA), fl);
  Fn r = compose(fr, phiAp);
  Residual fm{f.obj(p.m.a), 0};
  return Rep{fm, KHom{f.obj(sig.s), fm.a * f.obj(sig.a), l},
             KHom{fm.a * f.obj(sig.ap), f.obj(sig.sp), r}};
}

}  // namespace optikit
