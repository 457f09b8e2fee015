#pragma once
// Concrete encodings of each optic flavour, the concretize/abstractify
// round-trip with the existential representatives, the conversion lattice,
// and the concrete law checkers.
//
// Exponential-valued components use the canonical hom encoding from
// finset.hpp (h |-> sum h(a) |B|^a), so a "function-valued" field is just an
// int-valued table.

#include <variant>

#include "laws.hpp"

namespace optikit {

struct IsoC {
  Fn fwd, bwd;  // S -> A, A' -> S'
};
struct LensC {
  Fn get, put;  // S -> A, S x A' -> S'
};
struct PrismC {
  Fn matching, review;  // S -> S' + A, A' -> S'
};
struct AffineC {
  Fn step;  // S -> S' + Hom(A', S') x A
};
struct FunListEntry {
  int n = 0;
  std::vector<int> as;  // n elements of A
  Fn k;                 // A'^n -> S', domain indexed big-endian over tuples
};
struct TraversalC {
  int cap = 4;
  std::vector<FunListEntry> unzip;  // per s
};
struct SetterC {
  Fn over;  // Hom(A, A') -> Hom(S, S')
};
struct GrateC {
  Fn grate;  // Hom(Hom(S, A), A') -> S'
};
struct AchromaticC {
  Fn opt;     // S -> Hom(A', S') + 1   (last index = "iso-like" slot empty)
  Fn get;     // S -> A
  Fn create;  // A' -> S'
};
struct LinearC {
  Fn unzip;  // S -> Hom(A', S') x A
};
struct WriterC {
  Fn get, put;  // S -> A x W,  S x A' -> S' x W
};
struct StatefulC {
  int q = 2;
  Fn mget, mput;  // S -> (A x Q)^Q,  S x Q x A' -> (S' x Q)^Q
};

using ConcreteBody =
    std::variant<IsoC, LensC, PrismC, AffineC, TraversalC, SetterC, GrateC,
                 AchromaticC, LinearC, WriterC, StatefulC>;

struct ConcreteOptic {
  Sig sig;
  ConcreteBody body;
};

inline int tuple_ix(const std::vector<int>& t, int base) {
  int ix = 0;
  for (int v : t) ix = ix * base + v;
  return ix;
}

// ---- concretize ----------------------------------------------------------

inline ConcreteOptic concretize(const Action& act, const Rep& p, const Sig& sig) {
  ConcreteOptic out{sig, IsoC{}};
  int a = sig.a, ap = sig.ap, sp = sig.sp;
  switch (act.kind) {
    case ActionKind::Trivial:
      out.body = IsoC{p.l.fn, p.r.fn};
      return out;
    case ActionKind::Product: {
      Fn get = compose(proj2(p.m.a, a), p.l.fn);
      Fn put =
          compose(p.r.fn, tensor_fn(compose(proj1(p.m.a, a), p.l.fn), id_fn(ap)));
      out.body = LensC{std::move(get), std::move(put)};
      return out;
    }
    case ActionKind::Coproduct: {
      Fn review = compose(p.r.fn, inr_fn(p.m.a, ap));
      Fn rin = compose(p.r.fn, inl_fn(p.m.a, ap));  // M -> S'
      Fn matching = compose(coprod_fn(rin, id_fn(a)), p.l.fn);
      out.body = PrismC{std::move(matching), std::move(review)};
      return out;
    }
    case ActionKind::Affine: {
      int h = static_cast<int>(hom_size(ap, sp));
      Fn step{sig.s, sp + h * a, {}};
      for (int s = 0; s < sig.s; ++s) {
        int v = p.l.fn(s);
        if (v < p.m.a) {
          step.tab.push_back(p.r.fn(v));
        } else {
          int qix = (v - p.m.a) / a, av = (v - p.m.a) % a;
          uint64_t henc = 0, w = 1;
          for (int x = 0; x < ap; ++x) {
            henc += static_cast<uint64_t>(
                        p.r.fn(p.m.a + pair_ix(qix, x, ap))) *
                    w;
            w *= static_cast<uint64_t>(sp);
          }
          step.tab.push_back(sp + pair_ix(static_cast<int>(henc), av, a));
        }
      }
      out.body = AffineC{std::move(step)};
      return out;
    }
    case ActionKind::Achromatic: {
      int h = static_cast<int>(hom_size(ap, sp));
      Fn opt{sig.s, h + 1, {}}, get{sig.s, a, {}}, create{ap, sp, {}};
      for (int x = 0; x < ap; ++x)
        create.tab.push_back(p.r.fn(pair_ix(p.m.a - 1, x, ap)));
      for (int s = 0; s < sig.s; ++s) {
        int v = p.l.fn(s);
        int mi = v / a;
        get.tab.push_back(v % a);
        if (mi == p.m.a - 1) {
          opt.tab.push_back(h);  // basepoint: no override function
        } else {
          uint64_t henc = 0, w = 1;
          for (int x = 0; x < ap; ++x) {
            henc += static_cast<uint64_t>(p.r.fn(pair_ix(mi, x, ap))) * w;
            w *= static_cast<uint64_t>(sp);
          }
          opt.tab.push_back(static_cast<int>(henc));
        }
      }
      out.body = AchromaticC{std::move(opt), std::move(get), std::move(create)};
      return out;
    }
    case ActionKind::Writer: {
      Fn get{sig.s, a * act.w.size, {}}, put{sig.s * ap, sp * act.w.size, {}};
      std::vector<int> ms(static_cast<size_t>(sig.s));
      for (int s = 0; s < sig.s; ++s) {
        int v = p.l.fn(s);
        int ma = v / act.w.size, wv = v % act.w.size;
        ms[static_cast<size_t>(s)] = ma / a;
        get.tab.push_back(pair_ix(ma % a, wv, act.w.size));
      }
      for (int s = 0; s < sig.s; ++s)
        for (int x = 0; x < ap; ++x)
          put.tab.push_back(p.r.fn(pair_ix(ms[static_cast<size_t>(s)], x, ap)));
      out.body = WriterC{std::move(get), std::move(put)};
      return out;
    }
    case ActionKind::State: {
      int q = act.q;
      Fn mget{sig.s, act.t_obj(a), {}};
      Fn mput{sig.s * q * ap, act.t_obj(sp), {}};
      for (int s = 0; s < sig.s; ++s) {
        int e = p.l.fn(s);
        uint64_t enc = 0, base = static_cast<uint64_t>(a) * q, w = 1;
        for (int q0 = 0; q0 < q; ++q0) {
          int maq = act.state_run(e, q0, p.l.cod);
          int ma = maq / q, q1 = maq % q;
          enc += static_cast<uint64_t>(pair_ix(ma % a, q1, q)) * w;
          w = checked_mul(w, base);
        }
        mget.tab.push_back(static_cast<int>(enc));
      }
      for (int s = 0; s < sig.s; ++s) {
        int e = p.l.fn(s);
        for (int q0 = 0; q0 < q; ++q0) {
          int mi = act.state_run(e, q0, p.l.cod) / q / a;
          for (int x = 0; x < ap; ++x)
            mput.tab.push_back(p.r.fn(pair_ix(mi, x, ap)));
        }
      }
      out.body = StatefulC{q, std::move(mget), std::move(mput)};
      return out;
    }
    case ActionKind::Grate: {
      int k0 = static_cast<int>(hom_size(sig.s, a));
      // u : M -> Hom(S, A), u(m) = (s |-> l(s)(m))
      std::vector<int> u(static_cast<size_t>(p.m.a));
      for (int m = 0; m < p.m.a; ++m) {
        uint64_t enc = 0, w = 1;
        for (int s = 0; s < sig.s; ++s) {
          enc += static_cast<uint64_t>(
                     hom_apply(static_cast<uint64_t>(p.l.fn(s)), m, a)) *
                 w;
          w = checked_mul(w, static_cast<uint64_t>(a));
        }
        u[static_cast<size_t>(m)] = static_cast<int>(enc);
      }
      uint64_t dom = hom_size(k0, ap);
      if (dom > (1u << 22)) throw CapExceeded("grate concrete domain too large");
      Fn grate{static_cast<int>(dom), sp, {}};
      for (uint64_t bigh = 0; bigh < dom; ++bigh) {
        uint64_t enc = 0, w = 1;
        for (int m = 0; m < p.m.a; ++m) {
          enc += static_cast<uint64_t>(
                     hom_apply(bigh, u[static_cast<size_t>(m)], ap)) *
                 w;
          w = checked_mul(w, static_cast<uint64_t>(ap));
        }
        grate.tab.push_back(p.r.fn(static_cast<int>(enc)));
      }
      out.body = GrateC{std::move(grate)};
      return out;
    }
  }
  throw OptikitError("unreachable");
}

// ---- abstractify ---------------------------------------------------------

inline Rep abstractify(const Action& act, const ConcreteOptic& co) {
  const Sig& sig = co.sig;
  int a = sig.a, ap = sig.ap, sp = sig.sp, s = sig.s;
  if (auto* iso = std::get_if<IsoC>(&co.body))
    return iota(act, iso->fwd, iso->bwd);
  if (auto* ln = std::get_if<LensC>(&co.body)) {
    Fn l = pair_fn(id_fn(s), ln->get);  // S -> S x A
    return Rep{Residual{s, 0}, KHom{s, s * a, std::move(l)},
               KHom{s * ap, sp, ln->put}};
  }
  if (auto* pr = std::get_if<PrismC>(&co.body)) {
    Fn r = copair_fn(id_fn(sp), pr->review);
    return Rep{Residual{sp, 0}, KHom{s, sp + a, pr->matching},
               KHom{sp + ap, sp, std::move(r)}};
  }
  if (auto* af = std::get_if<AffineC>(&co.body)) {
    int h = static_cast<int>(hom_size(ap, sp));
    Residual m{sp, h};
    Fn r{sp + h * ap, sp, {}};
    for (int p = 0; p < sp; ++p) r.tab.push_back(p);
    for (int hv = 0; hv < h; ++hv)
      for (int x = 0; x < ap; ++x)
        r.tab.push_back(hom_apply(static_cast<uint64_t>(hv), x, sp));
    return Rep{m, KHom{s, sp + h * a, af->step}, KHom{r.dom, sp, std::move(r)}};
  }
  if (auto* ac = std::get_if<AchromaticC>(&co.body)) {
    int h = static_cast<int>(hom_size(ap, sp));
    Residual m{h + 1, 0};  // basepoint = index h (last)
    Fn l{s, (h + 1) * a, {}};
    for (int x = 0; x < s; ++x)
      l.tab.push_back(pair_ix(ac->opt(x), ac->get(x), a));
    Fn r{(h + 1) * ap, sp, {}};
    for (int hv = 0; hv <= h; ++hv)
      for (int x = 0; x < ap; ++x)
        r.tab.push_back(hv == h ? ac->create(x)
                                : hom_apply(static_cast<uint64_t>(hv), x, sp));
    return Rep{m, KHom{s, l.cod, std::move(l)}, KHom{r.dom, sp, std::move(r)}};
  }
  if (auto* ln = std::get_if<LinearC>(&co.body)) {
    // equivalent lens
    Fn l{s, s * a, {}};
    Fn put{s * ap, sp, {}};
    for (int x = 0; x < s; ++x)
      l.tab.push_back(pair_ix(x, ln->unzip(x) % a, a));
    for (int x = 0; x < s; ++x) {
      int k = ln->unzip(x) / a;
      for (int y = 0; y < ap; ++y)
        put.tab.push_back(hom_apply(static_cast<uint64_t>(k), y, sp));
    }
    return Rep{Residual{s, 0}, KHom{s, s * a, std::move(l)},
               KHom{s * ap, sp, std::move(put)}};
  }
  if (auto* wr = std::get_if<WriterC>(&co.body)) {
    Fn l{s, s * a * act.w.size, {}};
    for (int x = 0; x < s; ++x) {
      int aw = wr->get(x);
      l.tab.push_back(pair_ix(pair_ix(x, aw / act.w.size, a), aw % act.w.size,
                              act.w.size));
    }
    return Rep{Residual{s, 0}, KHom{s, s * a, std::move(l)},
               KHom{s * ap, sp, wr->put}};
  }
  if (auto* st = std::get_if<StatefulC>(&co.body)) {
    int q = st->q;
    Residual m{s * q, 0};
    int car = m.a * a;
    Fn l{s, act.t_obj(car), {}};
    for (int x = 0; x < s; ++x) {
      uint64_t enc = 0, base = static_cast<uint64_t>(car) * q, w = 1;
      for (int q0 = 0; q0 < q; ++q0) {
        int aq = act.state_run(st->mget(x), q0, a);
        int av = aq / q, q1 = aq % q;
        enc += static_cast<uint64_t>(
                   pair_ix(pair_ix(pair_ix(x, q0, q), av, a), q1, q)) *
               w;
        w = checked_mul(w, base);
      }
      l.tab.push_back(static_cast<int>(enc));
    }
    Fn r{m.a * ap, act.t_obj(sp), {}};
    for (int x = 0; x < s; ++x)
      for (int q0 = 0; q0 < q; ++q0)
        for (int y = 0; y < ap; ++y)
          r.tab.push_back(st->mput(pair_ix(pair_ix(x, q0, q), y, ap)));
    return Rep{m, KHom{s, car, std::move(l)}, KHom{m.a * ap, sp, std::move(r)}};
  }
  if (auto* gr = std::get_if<GrateC>(&co.body)) {
    int k0 = static_cast<int>(hom_size(s, a));
    Fn l{s, static_cast<int>(hom_size(k0, a)), {}};
    for (int x = 0; x < s; ++x) {
      uint64_t enc = 0, w = 1;
      for (int k = 0; k < k0; ++k) {
        enc += static_cast<uint64_t>(hom_apply(static_cast<uint64_t>(k), x, a)) * w;
        w = checked_mul(w, static_cast<uint64_t>(a));
      }
      l.tab.push_back(static_cast<int>(enc));
    }
    return Rep{Residual{k0, 0}, KHom{s, l.cod, std::move(l)},
               KHom{gr->grate.dom, sp, gr->grate}};
  }
  throw DomainMismatch("abstractify: flavour has no existential form");
}

// ---- conversion lattice --------------------------------------------------

enum class Flavour { Iso, Lens, Prism, Affine, Traversal, Setter, Grate };

inline Flavour flavour_of(const ConcreteOptic& co) {
  if (std::holds_alternative<IsoC>(co.body)) return Flavour::Iso;
  if (std::holds_alternative<LensC>(co.body) ||
      std::holds_alternative<LinearC>(co.body))
    return Flavour::Lens;
  if (std::holds_alternative<PrismC>(co.body)) return Flavour::Prism;
  if (std::holds_alternative<AffineC>(co.body)) return Flavour::Affine;
  if (std::holds_alternative<TraversalC>(co.body)) return Flavour::Traversal;
  if (std::holds_alternative<SetterC>(co.body)) return Flavour::Setter;
  if (std::holds_alternative<GrateC>(co.body)) return Flavour::Grate;
  throw DomainMismatch("flavour_of: not a lattice member");
}

inline int lattice_rank(Flavour f) {
  switch (f) {
    case Flavour::Iso: return 0;
    case Flavour::Lens:
    case Flavour::Prism:
    case Flavour::Grate: return 1;
    case Flavour::Affine: return 2;
    case Flavour::Traversal: return 3;
    case Flavour::Setter: return 4;
  }
  return -1;
}

inline Flavour lattice_join(Flavour x, Flavour y) {
  if (x == y) return x;
  if (x == Flavour::Iso) return y;
  if (y == Flavour::Iso) return x;
  if (x == Flavour::Grate || y == Flavour::Grate)
    throw DomainMismatch("lattice: grate is incomparable with that flavour");
  return lattice_rank(x) > lattice_rank(y)
             ? x
             : (lattice_rank(y) > lattice_rank(x)
                    ? y
                    : Flavour::Affine);  // lens vs prism
}

inline ConcreteOptic convert(const ConcreteOptic& co, Flavour to, int cap = 4);

namespace detail {

inline LensC as_lens(const ConcreteOptic& co) {
  const Sig& g = co.sig;
  if (auto* ln = std::get_if<LensC>(&co.body)) return *ln;
  if (auto* lin = std::get_if<LinearC>(&co.body)) {
    Fn get{g.s, g.a, {}}, put{g.s * g.ap, g.sp, {}};
    for (int s = 0; s < g.s; ++s) get.tab.push_back(lin->unzip(s) % g.a);
    for (int s = 0; s < g.s; ++s)
      for (int y = 0; y < g.ap; ++y)
        put.tab.push_back(
            hom_apply(static_cast<uint64_t>(lin->unzip(s) / g.a), y, g.sp));
    return LensC{std::move(get), std::move(put)};
  }
  if (auto* iso = std::get_if<IsoC>(&co.body)) {
    Fn put{g.s * g.ap, g.sp, {}};
    for (int s = 0; s < g.s; ++s)
      for (int y = 0; y < g.ap; ++y) put.tab.push_back(iso->bwd(y));
    return LensC{iso->fwd, std::move(put)};
  }
  throw DomainMismatch("convert: cannot view as lens");
}

inline AffineC as_affine(const ConcreteOptic& co) {
  const Sig& g = co.sig;
  int h = static_cast<int>(hom_size(g.ap, g.sp));
  Fn step{g.s, g.sp + h * g.a, {}};
  if (auto* pr = std::get_if<PrismC>(&co.body)) {
    uint64_t rv = 0, w = 1;
    for (int y = 0; y < g.ap; ++y) {
      rv += static_cast<uint64_t>(pr->review(y)) * w;
      w *= static_cast<uint64_t>(g.sp);
    }
    for (int s = 0; s < g.s; ++s) {
      int v = pr->matching(s);
      step.tab.push_back(v < g.sp
                             ? v
                             : g.sp + pair_ix(static_cast<int>(rv), v - g.sp, g.a));
    }
    return AffineC{std::move(step)};
  }
  if (std::holds_alternative<AffineC>(co.body))
    return std::get<AffineC>(co.body);
  LensC ln = as_lens(co);
  for (int s = 0; s < g.s; ++s) {
    uint64_t henc = 0, w = 1;
    for (int y = 0; y < g.ap; ++y) {
      henc += static_cast<uint64_t>(ln.put(pair_ix(s, y, g.ap))) * w;
      w *= static_cast<uint64_t>(g.sp);
    }
    step.tab.push_back(g.sp + pair_ix(static_cast<int>(henc), ln.get(s), g.a));
  }
  return AffineC{std::move(step)};
}

inline TraversalC as_traversal(const ConcreteOptic& co, int cap) {
  const Sig& g = co.sig;
  if (std::holds_alternative<TraversalC>(co.body))
    return std::get<TraversalC>(co.body);
  AffineC af = as_affine(co);
  TraversalC tr{cap, {}};
  for (int s = 0; s < g.s; ++s) {
    int v = af.step(s);
    FunListEntry e;
    if (v < g.sp) {
      e.n = 0;
      e.k = constant_fn(1, g.sp, v);
    } else {
      int h = (v - g.sp) / g.a;
      e.n = 1;
      e.as = {(v - g.sp) % g.a};
      e.k = Fn{g.ap, g.sp, {}};
      for (int y = 0; y < g.ap; ++y)
        e.k.tab.push_back(hom_apply(static_cast<uint64_t>(h), y, g.sp));
    }
    tr.unzip.push_back(std::move(e));
  }
  return tr;
}

inline SetterC as_setter(const ConcreteOptic& co, int cap) {
  const Sig& g = co.sig;
  if (std::holds_alternative<SetterC>(co.body))
    return std::get<SetterC>(co.body);
  TraversalC tr = as_traversal(co, cap);
  int ha = static_cast<int>(hom_size(g.a, g.ap));
  Fn over{ha, static_cast<int>(hom_size(g.s, g.sp)), {}};
  for (int f = 0; f < ha; ++f) {
    uint64_t enc = 0, w = 1;
    for (int s = 0; s < g.s; ++s) {
      const FunListEntry& e = tr.unzip[static_cast<size_t>(s)];
      std::vector<int> mapped;
      for (int av : e.as)
        mapped.push_back(hom_apply(static_cast<uint64_t>(f), av, g.ap));
      int sv = e.k(tuple_ix(mapped, g.ap));
      enc += static_cast<uint64_t>(sv) * w;
      w = checked_mul(w, static_cast<uint64_t>(g.sp));
    }
    over.tab.push_back(static_cast<int>(enc));
  }
  return SetterC{std::move(over)};
}

inline GrateC as_grate(const ConcreteOptic& co) {
  const Sig& g = co.sig;
  if (std::holds_alternative<GrateC>(co.body))
    return std::get<GrateC>(co.body);
  const IsoC& iso = std::get<IsoC>(co.body);  // only iso lifts to grate here
  int k0 = static_cast<int>(hom_size(g.s, g.a));
  uint64_t fenc = hom_encode(iso.fwd);
  uint64_t dom = hom_size(k0, g.ap);
  Fn grate{static_cast<int>(dom), g.sp, {}};
  for (uint64_t bh = 0; bh < dom; ++bh)
    grate.tab.push_back(iso.bwd(hom_apply(bh, static_cast<int>(fenc), g.ap)));
  return GrateC{std::move(grate)};
}

}  // namespace detail

inline ConcreteOptic convert(const ConcreteOptic& co, Flavour to, int cap) {
  Flavour from = flavour_of(co);
  if (lattice_join(from, to) != to)
    throw DomainMismatch("convert: target is not above source in the lattice");
  ConcreteOptic out{co.sig, co.body};
  switch (to) {
    case Flavour::Iso:
      return out;
    case Flavour::Lens:
      out.body = detail::as_lens(co);
      return out;
    case Flavour::Prism: {
      if (from == Flavour::Prism) return out;
      const IsoC& iso = std::get<IsoC>(co.body);
      Fn matching{co.sig.s, co.sig.sp + co.sig.a, {}};
      for (int s = 0; s < co.sig.s; ++s)
        matching.tab.push_back(co.sig.sp + iso.fwd(s));
      out.body = PrismC{std::move(matching), iso.bwd};
      return out;
    }
    case Flavour::Affine:
      out.body = detail::as_affine(co);
      return out;
    case Flavour::Traversal:
      out.body = detail::as_traversal(co, cap);
      return out;
    case Flavour::Setter:
      out.body = detail::as_setter(co, cap);
      return out;
    case Flavour::Grate:
      out.body = detail::as_grate(co);
      return out;
  }
  throw OptikitError("unreachable");
}

// ---- composition ---------------------------------------------------------

// p : (S,S') -> (A,A') then q : (A,A') -> (B,B').
inline ConcreteOptic compose_concrete(const ConcreteOptic& p,
                                      const ConcreteOptic& q, int cap = 4) {
  Sig sig{p.sig.s, p.sig.sp, q.sig.a, q.sig.ap};
  Flavour join = lattice_join(flavour_of(p), flavour_of(q));
  if (join == Flavour::Traversal || join == Flavour::Setter) {
    TraversalC tp = detail::as_traversal(p, cap);
    TraversalC tq = detail::as_traversal(q, cap);
    TraversalC tr{cap, {}};
    for (int s = 0; s < p.sig.s; ++s) {
      const FunListEntry& ep = tp.unzip[static_cast<size_t>(s)];
      FunListEntry e;
      std::vector<FunListEntry> inner;
      for (int av : ep.as) {
        inner.push_back(tq.unzip[static_cast<size_t>(av)]);
        e.n += inner.back().n;
        e.as.insert(e.as.end(), inner.back().as.begin(), inner.back().as.end());
      }
      if (e.n > cap) throw CapExceeded("traversal composite exceeds length cap");
      uint64_t dom = checked_pow(static_cast<uint64_t>(sig.ap),
                                 static_cast<uint64_t>(e.n));
      e.k = Fn{static_cast<int>(dom), sig.sp, {}};
      for (uint64_t t = 0; t < dom; ++t) {
        // split tuple t (big-endian) among the inner continuations
        std::vector<int> digits(static_cast<size_t>(e.n));
        uint64_t tt = t;
        for (int i = e.n - 1; i >= 0; --i) {
          digits[static_cast<size_t>(i)] = static_cast<int>(tt % sig.ap);
          tt /= static_cast<uint64_t>(sig.ap);
        }
        std::vector<int> newas;
        size_t off = 0;
        for (const FunListEntry& ei : inner) {
          std::vector<int> part(digits.begin() + static_cast<long>(off),
                                digits.begin() + static_cast<long>(off + ei.n));
          off += static_cast<size_t>(ei.n);
          newas.push_back(ei.k(tuple_ix(part, sig.ap)));
        }
        e.k.tab.push_back(ep.k(tuple_ix(newas, p.sig.ap)));
      }
      tr.unzip.push_back(std::move(e));
    }
    if (join == Flavour::Setter) {
      ConcreteOptic tmp{sig, tr};
      return ConcreteOptic{sig, detail::as_setter(tmp, cap)};
    }
    return ConcreteOptic{sig, std::move(tr)};
  }
  if (join == Flavour::Grate) {
    GrateC gp = detail::as_grate(p.sig == sig && flavour_of(p) == Flavour::Grate
                                     ? p
                                     : convert(p, Flavour::Grate, cap));
    GrateC gq = detail::as_grate(convert(q, Flavour::Grate, cap));
    int k0 = static_cast<int>(hom_size(p.sig.s, p.sig.a));   // Hom(S, A)
    int k1 = static_cast<int>(hom_size(p.sig.s, q.sig.a));   // Hom(S, B)
    int k2 = static_cast<int>(hom_size(q.sig.a, q.sig.a));   // unused
    (void)k2;
    uint64_t dom = hom_size(k1, q.sig.ap);
    if (dom > (1u << 22)) throw CapExceeded("grate composite too large");
    Fn grate{static_cast<int>(dom), sig.sp, {}};
    for (uint64_t bh = 0; bh < dom; ++bh) {
      // g_p(k : S -> A  |->  g_q(h : A -> B |-> H(h . k)))
      uint64_t enc_outer = 0, w_outer = 1;
      for (int k = 0; k < k0; ++k) {
        uint64_t enc_inner = 0, w_inner = 1;
        int hq = static_cast<int>(hom_size(q.sig.s, q.sig.a));
        for (int h = 0; h < hq; ++h) {
          uint64_t hk = 0, w = 1;
          for (int s = 0; s < p.sig.s; ++s) {
            int av = hom_apply(static_cast<uint64_t>(k), s, p.sig.a);
            hk += static_cast<uint64_t>(
                      hom_apply(static_cast<uint64_t>(h), av, q.sig.a)) *
                  w;
            w = checked_mul(w, static_cast<uint64_t>(q.sig.a));
          }
          enc_inner += static_cast<uint64_t>(
                           hom_apply(bh, static_cast<int>(hk), q.sig.ap)) *
                       w_inner;
          w_inner = checked_mul(w_inner, static_cast<uint64_t>(q.sig.ap));
        }
        enc_outer += static_cast<uint64_t>(gq.grate(static_cast<int>(enc_inner))) *
                     w_outer;
        w_outer = checked_mul(w_outer, static_cast<uint64_t>(p.sig.ap));
      }
      grate.tab.push_back(gp.grate(static_cast<int>(enc_outer)));
    }
    return ConcreteOptic{sig, GrateC{std::move(grate)}};
  }
  // iso/lens/prism/affine: go through the existential form at the join
  Action act = join == Flavour::Iso     ? trivial_action()
               : join == Flavour::Lens  ? product_action()
               : join == Flavour::Prism ? coproduct_action()
                                        : affine_action();
  Rep rp = abstractify(act, convert(p, join, cap));
  Rep rq = abstractify(act, convert(q, join, cap));
  Rep rc = compose_optics(act, rp, rq, q.sig.a, q.sig.ap);
  return concretize(act, rc, sig);
}

// Stateful lens composition, with state save/restore around the inner get.
// inner : (T,T') -> (S,S'), outer : (S,S') -> (A,A'); composite (T,T') -> (A,A').
inline StatefulC compose_stateful(const StatefulC& inner, const Sig& gi,
                                  const StatefulC& outer, const Sig& go) {
  int q = inner.q;
  if (q != outer.q) throw DomainMismatch("compose_stateful: state sizes differ");
  StatefulC out{q, {}, {}};
  out.mget = Fn{gi.s, 0, {}};
  uint64_t base = static_cast<uint64_t>(go.a) * q;
  out.mget.cod = static_cast<int>(checked_pow(base, static_cast<uint64_t>(q)));
  for (int t = 0; t < gi.s; ++t) {
    uint64_t enc = 0, w = 1;
    for (int q0 = 0; q0 < q; ++q0) {
      int sq = hom_apply(static_cast<uint64_t>(inner.mget(t)), q0, gi.a * q);
      int s = sq / q, q1 = sq % q;
      int aq = hom_apply(static_cast<uint64_t>(outer.mget(s)), q1, go.a * q);
      enc += static_cast<uint64_t>(aq) * w;
      w = checked_mul(w, base);
    }
    out.mget.tab.push_back(static_cast<int>(enc));
  }
  uint64_t pbase = static_cast<uint64_t>(gi.sp) * q;
  out.mput = Fn{gi.s * q * go.ap,
                static_cast<int>(checked_pow(pbase, static_cast<uint64_t>(q))), {}};
  for (int t = 0; t < gi.s; ++t)
    for (int qa = 0; qa < q; ++qa)  // the explicit state argument
      for (int av = 0; av < go.ap; ++av) {
        uint64_t enc = 0, w = 1;
        for (int start = 0; start < q; ++start) {  // the ambient entry state
          // s <- mget_i t (from `start`), q' = state afterwards, restore start
          int sq = hom_apply(static_cast<uint64_t>(inner.mget(t)), start, gi.a * q);
          int s = sq / q, qprime = sq % q;
          // s' <- mput_o s q' a  (run from `start` after the restore)
          int spq = hom_apply(
              static_cast<uint64_t>(outer.mput(pair_ix(pair_ix(s, qprime, q), av, go.ap))),
              start, go.sp * q);
          int sp = spq / q, q2 = spq % q;
          // mput_i t qa s'  (run from q2)
          int tq = hom_apply(
              static_cast<uint64_t>(inner.mput(pair_ix(pair_ix(t, qa, q), sp, gi.ap))),
              q2, gi.sp * q);
          enc += static_cast<uint64_t>(tq) * w;
          w = checked_mul(w, pbase);
        }
        out.mput.tab.push_back(static_cast<int>(enc));
      }
  return out;
}

// ---- concrete laws -------------------------------------------------------

struct LawReport {
  std::vector<std::pair<std::string, bool>> laws;
  bool all() const {
    for (auto& [n, ok] : laws)
      if (!ok) return false;
    return true;
  }
  void add(std::string n, bool ok) { laws.push_back({std::move(n), ok}); }
};

// Laws are stated for matching signatures S = S', A = A'.
inline LawReport concrete_laws(const ConcreteOptic& co) {
  const Sig& g = co.sig;
  LawReport rep;
  if (auto* iso = std::get_if<IsoC>(&co.body)) {
    rep.add("BwdFwd", compose(iso->bwd, iso->fwd) == id_fn(g.s));
    rep.add("FwdBwd", compose(iso->fwd, iso->bwd) == id_fn(g.a));
    return rep;
  }
  if (auto* ln = std::get_if<LensC>(&co.body)) {
    bool getput = true, putget = true, putput = true;
    for (int s = 0; s < g.s; ++s) {
      getput &= ln->put(pair_ix(s, ln->get(s), g.ap)) == s;
      for (int x = 0; x < g.ap; ++x) {
        int s1 = ln->put(pair_ix(s, x, g.ap));
        putget &= ln->get(s1) == x;
        for (int y = 0; y < g.ap; ++y)
          putput &= ln->put(pair_ix(s1, y, g.ap)) == ln->put(pair_ix(s, y, g.ap));
      }
    }
    rep.add("GetPut", getput);
    rep.add("PutGet", putget);
    rep.add("PutPut", putput);
    return rep;
  }
  if (auto* pr = std::get_if<PrismC>(&co.body)) {
    bool mr = true, rm = true, third = true;
    for (int x = 0; x < g.ap; ++x)
      mr &= pr->matching(pr->review(x)) == g.sp + x;
    for (int s = 0; s < g.s; ++s) {
      int v = pr->matching(s);
      rm &= (v < g.sp ? v : pr->review(v - g.sp)) == s;
      if (v < g.sp) third &= pr->matching(v) == v;
    }
    rep.add("MatchingReview", mr);
    rep.add("ReviewMatching", rm);
    rep.add("MatchingMatching", third);
    return rep;
  }
  if (auto* af = std::get_if<AffineC>(&co.body)) {
    // coalgebra laws for the right adjoint (Z, Z^A) of the affine action
    bool counit = true, comult = true;
    for (int s = 0; s < g.s; ++s) {
      int v = af->step(s);
      if (v < g.sp) {
        counit &= v == s;
        // miss branch of comultiplication: stepping the miss result misses
        // again at the same point
        comult &= af->step(v) == v;
      } else {
        int h = (v - g.sp) / g.a, av = (v - g.sp) % g.a;
        counit &= hom_apply(static_cast<uint64_t>(h), av, g.sp) == s;
        // comultiplication: for every replacement a', stepping the updated
        // source hits with the same continuation and the new focus
        for (int x = 0; x < g.a; ++x) {
          int s1 = hom_apply(static_cast<uint64_t>(h), x, g.sp);
          comult &= af->step(s1) == g.sp + pair_ix(h, x, g.a);
        }
      }
    }
    rep.add("StepCounit", counit);
    rep.add("StepComultiplication", comult);
    return rep;
  }
  if (auto* tr = std::get_if<TraversalC>(&co.body)) {
    bool counit = true, comult = true;
    for (int s = 0; s < g.s; ++s) {
      const FunListEntry& e = tr->unzip[static_cast<size_t>(s)];
      counit &= e.k(tuple_ix(e.as, g.a)) == s;
      uint64_t tuples = checked_pow(static_cast<uint64_t>(g.a),
                                    static_cast<uint64_t>(e.n));
      for (uint64_t t = 0; t < tuples; ++t) {
        std::vector<int> digits(static_cast<size_t>(e.n));
        uint64_t tt = t;
        for (int i = e.n - 1; i >= 0; --i) {
          digits[static_cast<size_t>(i)] = static_cast<int>(tt % g.a);
          tt /= static_cast<uint64_t>(g.a);
        }
        const FunListEntry& e2 =
            tr->unzip[static_cast<size_t>(e.k(static_cast<int>(t)))];
        comult &= e2.n == e.n && e2.as == digits && e2.k == e.k;
      }
    }
    rep.add("UnzipCounit", counit);
    rep.add("UnzipComultiplication", comult);
    return rep;
  }
  if (auto* st = std::get_if<SetterC>(&co.body)) {
    uint64_t ident = 0, w = 1;
    for (int x = 0; x < g.a; ++x) {
      ident += static_cast<uint64_t>(x) * w;
      w *= static_cast<uint64_t>(g.a);
    }
    uint64_t sid = 0;
    w = 1;
    for (int x = 0; x < g.s; ++x) {
      sid += static_cast<uint64_t>(x) * w;
      w *= static_cast<uint64_t>(g.s);
    }
    rep.add("OverIdentity",
            st->over(static_cast<int>(ident)) == static_cast<int>(sid));
    bool comp = true;
    int ha = static_cast<int>(hom_size(g.a, g.a));
    for (int f = 0; f < ha; ++f)
      for (int gg = 0; gg < ha; ++gg) {
        // f after g on A; over(f.g) == over(f) . over(g)
        uint64_t fg = 0, ww = 1;
        for (int x = 0; x < g.a; ++x) {
          fg += static_cast<uint64_t>(hom_apply(
                    static_cast<uint64_t>(f),
                    hom_apply(static_cast<uint64_t>(gg), x, g.a), g.a)) *
                ww;
          ww *= static_cast<uint64_t>(g.a);
        }
        uint64_t lhs = static_cast<uint64_t>(st->over(static_cast<int>(fg)));
        uint64_t rhs = 0;
        ww = 1;
        for (int x = 0; x < g.s; ++x) {
          rhs += static_cast<uint64_t>(hom_apply(
                     static_cast<uint64_t>(st->over(f)),
                     hom_apply(static_cast<uint64_t>(st->over(gg)), x, g.s), g.s)) *
                 ww;
          ww *= static_cast<uint64_t>(g.s);
        }
        comp &= lhs == rhs;
      }
    rep.add("OverComposition", comp);
    return rep;
  }
  if (auto* lin = std::get_if<LinearC>(&co.body)) {
    bool rezip = true, zipzip = true;
    for (int s = 0; s < g.s; ++s) {
      int k = lin->unzip(s) / g.a, av = lin->unzip(s) % g.a;
      rezip &= hom_apply(static_cast<uint64_t>(k), av, g.sp) == s;
      for (int x = 0; x < g.a; ++x)
        zipzip &= lin->unzip(hom_apply(static_cast<uint64_t>(k), x, g.sp)) ==
                  pair_ix(k, x, g.a);
    }
    rep.add("Rezip", rezip);
    rep.add("ZipZip", zipzip);
    return rep;
  }
  if (auto* st = std::get_if<StatefulC>(&co.body)) {
    int q = st->q;
    bool getput = true, putget = true, putput = true;
    for (int s = 0; s < g.s; ++s)
      for (int q0 = 0; q0 < q; ++q0) {
        // do q <- getState; a <- mget s; mput s q a   ==  return s
        int aq = hom_apply(static_cast<uint64_t>(st->mget(s)), q0, g.a * q);
        int a = aq / q, q1 = aq % q;
        int sq = hom_apply(
            static_cast<uint64_t>(st->mput(pair_ix(pair_ix(s, q0, q), a, g.ap))),
            q1, g.sp * q);
        getput &= sq == pair_ix(s, q0, q);
      }
    for (int s = 0; s < g.s; ++s)
      for (int qa = 0; qa < q; ++qa)
        for (int a = 0; a < g.ap; ++a)
          for (int q0 = 0; q0 < q; ++q0) {
            // do s' <- mput s qa a; mget s'   ==  return a
            int sq = hom_apply(
                static_cast<uint64_t>(st->mput(pair_ix(pair_ix(s, qa, q), a, g.ap))),
                q0, g.sp * q);
            int s1 = sq / q, q1 = sq % q;
            int aq = hom_apply(static_cast<uint64_t>(st->mget(s1)), q1, g.a * q);
            putget &= aq == pair_ix(a, q0, q);
          }
    for (int s = 0; s < g.s; ++s)
      for (int q1 = 0; q1 < q; ++q1)
        for (int q2 = 0; q2 < q; ++q2)
          for (int a1 = 0; a1 < g.ap; ++a1)
            for (int a2 = 0; a2 < g.ap; ++a2)
              for (int q0 = 0; q0 < q; ++q0) {
                int sq = hom_apply(
                    static_cast<uint64_t>(
                        st->mput(pair_ix(pair_ix(s, q1, q), a1, g.ap))),
                    q2, g.sp * q);
                int s1 = sq / q, qp = sq % q;
                int lhs = hom_apply(
                    static_cast<uint64_t>(
                        st->mput(pair_ix(pair_ix(s1, qp, q), a2, g.ap))),
                    q0, g.sp * q);
                int rhs = hom_apply(
                    static_cast<uint64_t>(
                        st->mput(pair_ix(pair_ix(s, q1, q), a2, g.ap))),
                    q0, g.sp * q);
                putput &= lhs == rhs;
              }
    rep.add("MGetMPut", getput);
    rep.add("MPutMGet", putget);
    rep.add("MPutMPut", putput);
    return rep;
  }
  throw DomainMismatch("concrete_laws: flavour has no law set");
}

// ---- helpers used by the test suites ------------------------------------

// The traversal focusing every coordinate of S = A^n.
inline TraversalC coordinate_traversal(int a, int n, int cap = 4) {
  if (n > cap) throw CapExceeded("coordinate traversal exceeds cap");
  int s = static_cast<int>(checked_pow(static_cast<uint64_t>(a),
                                       static_cast<uint64_t>(n)));
  TraversalC tr{cap, {}};
  for (int v = 0; v < s; ++v) {
    FunListEntry e;
    e.n = n;
    e.as.resize(static_cast<size_t>(n));
    int vv = v;
    for (int i = n - 1; i >= 0; --i) {
      e.as[static_cast<size_t>(i)] = vv % a;
      vv /= a;
    }
    e.k = id_fn(s);
    tr.unzip.push_back(std::move(e));
  }
  return tr;
}

// Constant complement of a lawful lens: C = Get^{-1}(0), with the mutually
// inverse pair S <-> C x A rebuilt from Put.
struct Complement {
  int c = 0;
  Fn fwd;  // S -> C x A
  Fn bwd;  // C x A -> S
};

inline Complement lens_complement(const LensC& ln, const Sig& g) {
  std::vector<int> cs;
  std::vector<int> pos(static_cast<size_t>(g.s), -1);
  for (int s = 0; s < g.s; ++s)
    if (ln.get(s) == 0) {
      pos[static_cast<size_t>(s)] = static_cast<int>(cs.size());
      cs.push_back(s);
    }
  Complement out;
  out.c = static_cast<int>(cs.size());
  out.fwd = Fn{g.s, out.c * g.a, {}};
  for (int s = 0; s < g.s; ++s) {
    int c = ln.put(pair_ix(s, 0, g.ap));
    out.fwd.tab.push_back(pair_ix(pos[static_cast<size_t>(c)], ln.get(s), g.a));
  }
  out.bwd = Fn{out.c * g.a, g.s, {}};
  for (int c = 0; c < out.c; ++c)
    for (int x = 0; x < g.a; ++x)
      out.bwd.tab.push_back(ln.put(pair_ix(cs[static_cast<size_t>(c)], x, g.ap)));
  return out;
}

}  // namespace optikit
