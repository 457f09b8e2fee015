#pragma once
// Monoidal actions on finite sets, one instance per optic flavour.
//
// A residual object is one finite set (two for the affine instance, where a
// residual is a pair (P, Q) acting by A |-> P + Q x A).  The achromatic
// instance stores the *pointed* carrier itself: size >= 1, basepoint = last
// element; residual morphisms fix the basepoint and never collapse anything
// into it.  The grate instance is contravariant: a residual morphism M -> N
// is carried by an underlying table N -> M and acts by precomposition on
// A |-> A^M.
//
// Writer/state instances act on the Kleisli category of T_W X = X x W and
// T_Q X = (X x Q)^Q; residual morphisms stay pure and act inside T.

#include <algorithm>

#include "finset.hpp"

namespace optikit {

enum class ActionKind {
  Product,     // lenses
  Coproduct,   // prisms
  Trivial,     // isos (adapters)
  Affine,      // affine traversals
  Achromatic,  // achromatic lenses
  Writer,      // Kleisli lenses for a writer monad
  State,       // stateful lenses
  Grate        // grates (closed / exponential action)
};

struct Residual {
  int a = 1;  // carrier size (P for affine)
  int b = 0;  // Q for affine, unused otherwise
  friend bool operator==(const Residual&, const Residual&) = default;
  friend auto operator<=>(const Residual&, const Residual&) = default;
};

// Residual morphism dom -> cod.  f is the underlying table (for grate it runs
// cod.a -> dom.a); g is the Q-component for the affine instance.
struct ResHom {
  Residual dom, cod;
  Fn f;
  Fn g;
};

// A morphism in the hom category: X -> T(Y), tabulated on carriers.
struct KHom {
  int dom = 0;
  int cod = 0;
  Fn fn;  // fn.dom == dom, fn.cod == T(cod)
  friend bool operator==(const KHom&, const KHom&) = default;
};

struct Monoid {
  int size = 1;
  int unit = 0;
  std::vector<int> tab;  // size x size, row-major

  int mul(int x, int y) const { return tab[static_cast<size_t>(x * size + y)]; }
  bool valid() const {
    if (static_cast<int>(tab.size()) != size * size) return false;
    for (int x = 0; x < size; ++x) {
      if (mul(unit, x) != x || mul(x, unit) != x) return false;
      for (int y = 0; y < size; ++y) {
        if (mul(x, y) < 0 || mul(x, y) >= size) return false;
        for (int z = 0; z < size; ++z)
          if (mul(mul(x, y), z) != mul(x, mul(y, z))) return false;
      }
    }
    return true;
  }
};

inline Monoid z2_monoid() { return Monoid{2, 0, {0, 1, 1, 0}}; }

struct Action {
  ActionKind kind = ActionKind::Product;
  Monoid w;          // Writer
  int q = 2;         // State
  int carrier_cap = 1 << 22;
  bool affine_allow_empty = false;  // admit the (0,0) affine residual

  bool kleisli() const {
    return kind == ActionKind::Writer || kind == ActionKind::State;
  }

  // ---- the monad of the hom category ------------------------------------

  int t_obj(int x) const {
    switch (kind) {
      case ActionKind::Writer:
        return x * w.size;
      case ActionKind::State: {
        uint64_t n = checked_pow(static_cast<uint64_t>(x) * q, q);
        if (n > static_cast<uint64_t>(carrier_cap))
          throw CapExceeded("state monad carrier too large");
        return static_cast<int>(n);
      }
      default:
        return x;
    }
  }

  // State-monad element access: elt encodes Q -> Y x Q.
  int state_run(int elt, int q0, int ysize) const {
    return hom_apply(static_cast<uint64_t>(elt), q0, ysize * q);
  }

  Fn eta(int x) const {
    switch (kind) {
      case ActionKind::Writer: {
        Fn f{x, t_obj(x), {}};
        for (int i = 0; i < x; ++i) f.tab.push_back(pair_ix(i, w.unit, w.size));
        return f;
      }
      case ActionKind::State: {
        Fn f{x, t_obj(x), {}};
        for (int i = 0; i < x; ++i) {
          uint64_t enc = 0, base = static_cast<uint64_t>(x) * q, wgt = 1;
          for (int s = 0; s < q; ++s) {
            enc += static_cast<uint64_t>(pair_ix(i, s, q)) * wgt;
            wgt = checked_mul(wgt, base);
          }
          f.tab.push_back(static_cast<int>(enc));
        }
        return f;
      }
      default:
        return id_fn(x);
    }
  }

  // T(v) for pure v : X -> Y.
  Fn t_map(const Fn& v) const {
    switch (kind) {
      case ActionKind::Writer: {
        Fn f{v.dom * w.size, v.cod * w.size, {}};
        for (int x = 0; x < v.dom; ++x)
          for (int ww = 0; ww < w.size; ++ww)
            f.tab.push_back(pair_ix(v(x), ww, w.size));
        return f;
      }
      case ActionKind::State: {
        int tx = t_obj(v.dom), ty = t_obj(v.cod);
        Fn f{tx, ty, {}};
        f.tab.reserve(static_cast<size_t>(tx));
        for (int e = 0; e < tx; ++e) {
          uint64_t enc = 0, base = static_cast<uint64_t>(v.cod) * q, wgt = 1;
          for (int s = 0; s < q; ++s) {
            int xy = state_run(e, s, v.dom);
            int x = xy / q, qq = xy % q;
            enc += static_cast<uint64_t>(pair_ix(v(x), qq, q)) * wgt;
            wgt = checked_mul(wgt, base);
          }
          f.tab.push_back(static_cast<int>(enc));
        }
        return f;
      }
      default:
        return v;
    }
  }

  KHom kid(int x) const { return KHom{x, x, eta(x)}; }

  KHom kpure(const Fn& v) const {
    return KHom{v.dom, v.cod, compose(eta(v.cod), v)};
  }

  // Kleisli composite g after f.
  KHom kcomp(const KHom& g, const KHom& f) const {
    if (f.cod != g.dom) throw DomainMismatch("kcomp: cod(f) != dom(g)");
    switch (kind) {
      case ActionKind::Writer: {
        Fn h{f.dom, g.fn.cod, {}};
        for (int x = 0; x < f.dom; ++x) {
          int yw = f.fn(x);
          int y = yw / w.size, w1 = yw % w.size;
          int zw = g.fn(y);
          int z = zw / w.size, w2 = zw % w.size;
          h.tab.push_back(pair_ix(z, w.mul(w1, w2), w.size));
        }
        return KHom{f.dom, g.cod, std::move(h)};
      }
      case ActionKind::State: {
        Fn h{f.dom, g.fn.cod, {}};
        uint64_t base = static_cast<uint64_t>(g.cod) * q;
        for (int x = 0; x < f.dom; ++x) {
          uint64_t enc = 0, wgt = 1;
          for (int s = 0; s < q; ++s) {
            int yq = state_run(f.fn(x), s, f.cod);
            int zq = state_run(g.fn(yq / q), yq % q, g.cod);
            enc += static_cast<uint64_t>(zq) * wgt;
            wgt = checked_mul(wgt, base);
          }
          h.tab.push_back(static_cast<int>(enc));
        }
        return KHom{f.dom, g.cod, std::move(h)};
      }
      default:
        return KHom{f.dom, g.cod, compose(g.fn, f.fn)};
    }
  }

  // ---- the action itself -------------------------------------------------

  Residual unit() const {
    switch (kind) {
      case ActionKind::Coproduct:
        return Residual{0, 0};
      case ActionKind::Affine:
        return Residual{0, 1};
      default:
        return Residual{1, 0};
    }
  }

  int act_obj(const Residual& m, int a) const {
    uint64_t n = 0;
    switch (kind) {
      case ActionKind::Product:
      case ActionKind::Achromatic:
      case ActionKind::Writer:
      case ActionKind::State:
        n = static_cast<uint64_t>(m.a) * a;
        break;
      case ActionKind::Coproduct:
        n = static_cast<uint64_t>(m.a) + a;
        break;
      case ActionKind::Trivial:
        n = static_cast<uint64_t>(a);
        break;
      case ActionKind::Affine:
        n = static_cast<uint64_t>(m.a) + static_cast<uint64_t>(m.b) * a;
        break;
      case ActionKind::Grate:
        n = checked_pow(a, m.a);
        break;
    }
    if (n > static_cast<uint64_t>(carrier_cap))
      throw CapExceeded("act_obj carrier too large");
    return static_cast<int>(n);
  }

  // Pure carrier map act_obj(dom, a) -> act_obj(cod, a) induced by phi.
  Fn act_morphism(const ResHom& phi, int a) const {
    switch (kind) {
      case ActionKind::Product:
      case ActionKind::Achromatic:
      case ActionKind::Writer:
      case ActionKind::State:
        return tensor_fn(phi.f, id_fn(a));
      case ActionKind::Coproduct:
        return coprod_fn(phi.f, id_fn(a));
      case ActionKind::Trivial:
        return id_fn(a);
      case ActionKind::Affine:
        return coprod_fn(phi.f, tensor_fn(phi.g, id_fn(a)));
      case ActionKind::Grate: {
        // phi.f : cod.a -> dom.a underlying; precompose on exponentials.
        int dm = act_obj(phi.dom, a), cm = act_obj(phi.cod, a);
        Fn h{dm, cm, {}};
        h.tab.reserve(static_cast<size_t>(dm));
        for (int e = 0; e < dm; ++e) {
          uint64_t enc = 0, wgt = 1;
          for (int n = 0; n < phi.cod.a; ++n) {
            enc += static_cast<uint64_t>(
                       hom_apply(static_cast<uint64_t>(e), phi.f(n), a)) *
                   wgt;
            wgt = checked_mul(wgt, static_cast<uint64_t>(a));
          }
          h.tab.push_back(static_cast<int>(enc));
        }
        return h;
      }
    }
    throw OptikitError("unreachable");
  }

  // M . h for a hom h : X -> T(Y), giving M.X -> T(M.Y).
  KHom act_left(const Residual& m, const KHom& h) const {
    int dm = act_obj(m, h.dom), cm = act_obj(m, h.cod);
    switch (kind) {
      case ActionKind::Product:
      case ActionKind::Achromatic:
      case ActionKind::Writer:
      case ActionKind::State: {
        Fn out{dm, t_obj(cm), {}};
        out.tab.reserve(static_cast<size_t>(dm));
        for (int i = 0; i < m.a; ++i) {
          Fn inj{h.cod, cm, {}};
          for (int y = 0; y < h.cod; ++y) inj.tab.push_back(pair_ix(i, y, h.cod));
          Fn tinj = t_map(inj);
          for (int x = 0; x < h.dom; ++x) out.tab.push_back(tinj(h.fn(x)));
        }
        return KHom{dm, cm, std::move(out)};
      }
      case ActionKind::Coproduct: {
        Fn out{dm, cm, {}};
        for (int i = 0; i < m.a; ++i) out.tab.push_back(i);
        for (int x = 0; x < h.dom; ++x) out.tab.push_back(m.a + h.fn(x));
        return KHom{dm, cm, std::move(out)};
      }
      case ActionKind::Trivial:
        return h;
      case ActionKind::Affine: {
        Fn out{dm, cm, {}};
        for (int p = 0; p < m.a; ++p) out.tab.push_back(p);
        for (int qq = 0; qq < m.b; ++qq)
          for (int x = 0; x < h.dom; ++x)
            out.tab.push_back(m.a + pair_ix(qq, h.fn(x), h.cod));
        return KHom{dm, cm, std::move(out)};
      }
      case ActionKind::Grate: {
        Fn out{dm, cm, {}};
        out.tab.reserve(static_cast<size_t>(dm));
        for (int e = 0; e < dm; ++e) {
          uint64_t enc = 0, wgt = 1;
          for (int i = 0; i < m.a; ++i) {
            enc += static_cast<uint64_t>(
                       h.fn(hom_apply(static_cast<uint64_t>(e), i, h.dom))) *
                   wgt;
            wgt = checked_mul(wgt, static_cast<uint64_t>(h.cod));
          }
          out.tab.push_back(static_cast<int>(enc));
        }
        return KHom{dm, cm, std::move(out)};
      }
    }
    throw OptikitError("unreachable");
  }

  // M (x) N, characterized by (M (x) N) . A == M . (N . A).  With the
  // canonical index encodings the mediating iso is the identity for every
  // instance except affine; residual_tensor_mediator returns it explicitly.
  Residual residual_tensor(const Residual& m, const Residual& n) const {
    switch (kind) {
      case ActionKind::Product:
      case ActionKind::Writer:
      case ActionKind::State:
      case ActionKind::Achromatic:
      case ActionKind::Grate:
        return Residual{m.a * n.a, 0};
      case ActionKind::Coproduct:
        return Residual{m.a + n.a, 0};
      case ActionKind::Trivial:
        return unit();
      case ActionKind::Affine:
        return Residual{m.a + m.b * n.a, m.b * n.b};
    }
    throw OptikitError("unreachable");
  }

  // Iso (M (x) N) . A -> M . (N . A) on carriers.
  Fn residual_tensor_mediator(const Residual& m, const Residual& n, int a) const {
    if (kind != ActionKind::Affine) {
      int c = act_obj(residual_tensor(m, n), a);
      if (c != act_obj(m, act_obj(n, a)))
        throw OptikitError("tensor mediator: carrier mismatch");
      return id_fn(c);
    }
    // (P + Q x P', Q x Q') . A  ->  P + Q x (P' + Q' x A)
    int inner = act_obj(n, a);
    Fn out{act_obj(residual_tensor(m, n), a), act_obj(m, inner), {}};
    for (int p = 0; p < m.a; ++p) out.tab.push_back(p);
    for (int qq = 0; qq < m.b; ++qq)
      for (int pp = 0; pp < n.a; ++pp)
        out.tab.push_back(m.a + pair_ix(qq, pp, inner));
    for (int qq = 0; qq < m.b; ++qq)
      for (int q2 = 0; q2 < n.b; ++q2)
        for (int x = 0; x < a; ++x)
          out.tab.push_back(m.a + pair_ix(qq, n.a + pair_ix(q2, x, a), inner));
    return out;
  }

  // ---- residual enumeration ---------------------------------------------

  std::vector<Residual> enumerate_residuals(int bound) const {
    std::vector<Residual> out;
    switch (kind) {
      case ActionKind::Trivial:
        out.push_back(unit());
        break;
      case ActionKind::Coproduct:
        for (int s = 0; s <= bound; ++s) out.push_back(Residual{s, 0});
        break;
      case ActionKind::Affine:
        for (int t = 0; t <= 2 * bound; ++t)
          for (int p = 0; p <= std::min(t, bound); ++p) {
            int qq = t - p;
            if (qq > bound) continue;
            if (p == 0 && qq == 0 && !affine_allow_empty) continue;
            out.push_back(Residual{p, qq});
          }
        break;
      default:
        for (int s = 1; s <= bound; ++s) out.push_back(Residual{s, 0});
        break;
    }
    return out;
  }

  bool within_bound(const Residual& m, int bound) const {
    switch (kind) {
      case ActionKind::Trivial:
        return true;
      case ActionKind::Coproduct:
        return m.a <= bound;
      case ActionKind::Affine:
        return m.a <= bound && m.b <= bound;
      default:
        return m.a >= 1 && m.a <= bound;
    }
  }

  // All residual morphisms dom -> cod (small configurations only).
  std::vector<ResHom> enumerate_residual_homs(const Residual& dom,
                                              const Residual& cod) const {
    std::vector<ResHom> out;
    switch (kind) {
      case ActionKind::Trivial:
        out.push_back(ResHom{dom, cod, id_fn(1), {}});
        break;
      case ActionKind::Affine:
        for (const Fn& f : enumerate_functions(dom.a, cod.a))
          for (const Fn& g : enumerate_functions(dom.b, cod.b))
            out.push_back(ResHom{dom, cod, f, g});
        break;
      case ActionKind::Achromatic:
        for (const Fn& f0 : enumerate_functions(dom.a - 1, cod.a - 1)) {
          Fn f{dom.a, cod.a, f0.tab};
          f.tab.push_back(cod.a - 1);
          out.push_back(ResHom{dom, cod, std::move(f), {}});
        }
        break;
      case ActionKind::Grate:
        for (const Fn& u : enumerate_functions(cod.a, dom.a))
          out.push_back(ResHom{dom, cod, u, {}});
        break;
      default:
        for (const Fn& f : enumerate_functions(dom.a, cod.a))
          out.push_back(ResHom{dom, cod, f, {}});
        break;
    }
    return out;
  }

  ResHom res_hom_id(const Residual& m) const {
    switch (kind) {
      case ActionKind::Affine:
        return ResHom{m, m, id_fn(m.a), id_fn(m.b)};
      default:
        return ResHom{m, m, id_fn(m.a), {}};
    }
  }

  ResHom res_hom_comp(const ResHom& second, const ResHom& first) const {
    if (!(first.cod == second.dom)) throw DomainMismatch("res_hom_comp");
    switch (kind) {
      case ActionKind::Affine:
        return ResHom{first.dom, second.cod, compose(second.f, first.f),
                      compose(second.g, first.g)};
      case ActionKind::Grate:
        return ResHom{first.dom, second.cod, compose(first.f, second.f), {}};
      default:
        return ResHom{first.dom, second.cod, compose(second.f, first.f), {}};
    }
  }

  // A generating set for all residual morphisms between residuals within the
  // bound: adjacent transpositions, one collapse and one inclusion per size
  // (componentwise for affine; basepoint-fixing for achromatic).  Every
  // morphism factors through these with intermediate residuals within the
  // bound, so quotients built from generator edges are unchanged.
  std::vector<ResHom> generator_homs(int bound) const {
    std::vector<ResHom> out;
    auto plain = [&](int lo, auto mk) {
      for (int s = lo; s <= bound; ++s) {
        for (int i = 0; i + 1 < s; ++i) {  // transposition (i, i+1)
          Fn f = id_fn(s);
          std::swap(f.tab[static_cast<size_t>(i)], f.tab[static_cast<size_t>(i) + 1]);
          mk(s, s, std::move(f));
        }
        if (s >= 2 && s - 1 >= lo) {  // collapse 0,1 |-> 0
          Fn f{s, s - 1, {0}};
          for (int i = 1; i < s; ++i) f.tab.push_back(std::max(0, i - 1));
          mk(s, s - 1, std::move(f));
        }
        if (s + 1 <= bound) {  // inclusion
          Fn f{s, s + 1, {}};
          for (int i = 0; i < s; ++i) f.tab.push_back(i);
          mk(s, s + 1, std::move(f));
        }
      }
    };
    switch (kind) {
      case ActionKind::Trivial:
        break;
      case ActionKind::Coproduct:
        plain(0, [&](int d, int c, Fn f) {
          out.push_back(ResHom{Residual{d, 0}, Residual{c, 0}, std::move(f), {}});
        });
        break;
      case ActionKind::Affine: {
        std::vector<std::pair<int, std::pair<int, Fn>>> elems;  // (dom,(cod,f))
        plain(0, [&](int d, int c, Fn f) {
          elems.push_back({d, {c, std::move(f)}});
        });
        auto residuals = enumerate_residuals(bound);
        for (const auto& [d, cf] : elems) {
          for (const Residual& r : residuals) {
            if (r.a == d) {
              Residual cod{cf.first, r.b};
              if (within_bound(cod, bound) &&
                  (cod.a + cod.b > 0 || affine_allow_empty))
                out.push_back(ResHom{r, cod, cf.second, id_fn(r.b)});
            }
            if (r.b == d) {
              Residual cod{r.a, cf.first};
              if (within_bound(cod, bound) &&
                  (cod.a + cod.b > 0 || affine_allow_empty))
                out.push_back(ResHom{r, cod, id_fn(r.a), cf.second});
            }
          }
        }
        break;
      }
      case ActionKind::Achromatic:
        // act on the non-basepoint part only; basepoint stays last.
        plain(0, [&](int d, int c, Fn f0) {
          int s = d + 1, t = c + 1;
          if (s > bound || t > bound) return;
          Fn f{s, t, f0.tab};
          f.tab.push_back(t - 1);
          out.push_back(ResHom{Residual{s, 0}, Residual{t, 0}, std::move(f), {}});
        });
        break;
      case ActionKind::Grate:
        plain(1, [&](int d, int c, Fn f) {
          // underlying u : d -> c is a morphism c -> d in the residual category
          out.push_back(ResHom{Residual{c, 0}, Residual{d, 0}, std::move(f), {}});
        });
        break;
      default:
        plain(1, [&](int d, int c, Fn f) {
          out.push_back(ResHom{Residual{d, 0}, Residual{c, 0}, std::move(f), {}});
        });
        break;
    }
    return out;
  }
};

inline Action product_action() { return Action{ActionKind::Product}; }
inline Action coproduct_action() { return Action{ActionKind::Coproduct}; }
inline Action trivial_action() { return Action{ActionKind::Trivial}; }
inline Action affine_action() { return Action{ActionKind::Affine}; }
inline Action achromatic_action() { return Action{ActionKind::Achromatic}; }
inline Action grate_action() { return Action{ActionKind::Grate}; }
inline Action writer_action(Monoid m = z2_monoid()) {
  Action a{ActionKind::Writer};
  a.w = std::move(m);
  if (!a.w.valid()) throw DomainMismatch("writer: invalid monoid table");
  return a;
}
inline Action state_action(int q = 2) {
  Action a{ActionKind::State};
  a.q = q;
  return a;
}

}  // namespace optikit
