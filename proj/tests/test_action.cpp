#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optikit/action.hpp>

using namespace optikit;

namespace {

std::vector<Action> all_actions() {
  return {product_action(), coproduct_action(), trivial_action(),
          affine_action(),  achromatic_action(), grate_action(),
          writer_action(),  state_action(2)};
}

int residual_bound(const Action& act) {
  return act.kind == ActionKind::Trivial ? 1 : 2;
}

}  // namespace

TEST_CASE("Kleisli structure is a category with identities") {
  for (const Action& act : all_actions()) {
    for (int x = 1; x <= 3; ++x) {
      KHom id = act.kid(x);
      CHECK(act.kcomp(id, id) == id);
    }
    // unit laws and associativity over every Kleisli hom at sizes <= 2
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y) {
        uint64_t n = fn_count(x, act.t_obj(y));
        for (uint64_t i = 0; i < n; ++i) {
          KHom f{x, y, decode_fn(x, act.t_obj(y), i)};
          CHECK(act.kcomp(act.kid(y), f) == f);
          CHECK(act.kcomp(f, act.kid(x)) == f);
          uint64_t m = fn_count(y, act.t_obj(x));
          for (uint64_t j = 0; j < m; j += 3) {
            KHom g{y, x, decode_fn(y, act.t_obj(x), j)};
            for (uint64_t k = 0; k < n; k += 5) {
              KHom h{x, y, decode_fn(x, act.t_obj(y), k)};
              CHECK(act.kcomp(h, act.kcomp(g, f)) ==
                    act.kcomp(act.kcomp(h, g), f));
            }
          }
        }
      }
  }
}

TEST_CASE("kpure is a functor into the Kleisli category") {
  for (const Action& act : all_actions())
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y)
        for (const Fn& f : enumerate_functions(x, y)) {
          CHECK(act.kpure(id_fn(x)) == act.kid(x));
          for (const Fn& g : enumerate_functions(y, x))
            CHECK(act.kpure(compose(g, f)) ==
                  act.kcomp(act.kpure(g), act.kpure(f)));
        }
}

TEST_CASE("the unit residual acts strictly as the identity") {
  for (const Action& act : all_actions()) {
    Residual u = act.unit();
    for (int x = 0; x <= 4; ++x) CHECK(act.act_obj(u, x) == x);
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y) {
        uint64_t n = fn_count(x, act.t_obj(y));
        for (uint64_t i = 0; i < n; ++i) {
          KHom f{x, y, decode_fn(x, act.t_obj(y), i)};
          CHECK(act.act_left(u, f) == f);
        }
      }
  }
}

TEST_CASE("acting with a residual is functorial") {
  for (const Action& act : all_actions())
    for (const Residual& m : act.enumerate_residuals(residual_bound(act))) {
      for (int x = 1; x <= 2; ++x) {
        if (act.act_obj(m, x) > 16) continue;
        CHECK(act.act_left(m, act.kid(x)) == act.kid(act.act_obj(m, x)));
        for (int y = 1; y <= 2; ++y) {
          if (act.act_obj(m, y) > 16) continue;
          uint64_t n = fn_count(x, act.t_obj(y));
          for (uint64_t i = 0; i < n; i += 2) {
            KHom f{x, y, decode_fn(x, act.t_obj(y), i)};
            uint64_t nn = fn_count(y, act.t_obj(x));
            for (uint64_t j = 0; j < nn; j += 3) {
              KHom g{y, x, decode_fn(y, act.t_obj(x), j)};
              CHECK(act.act_left(m, act.kcomp(g, f)) ==
                    act.kcomp(act.act_left(m, g), act.act_left(m, f)));
            }
          }
        }
      }
    }
}

TEST_CASE("tensor of residuals mediates the iterated action") {
  for (const Action& act : all_actions()) {
    int rb = residual_bound(act);
    auto ms = act.enumerate_residuals(rb);
    for (const Residual& m : ms)
      for (const Residual& n : ms)
        for (int x = 1; x <= 2; ++x) {
          Residual mn = act.residual_tensor(m, n);
          int outer = act.act_obj(m, act.act_obj(n, x));
          if (outer > 64) continue;
          CHECK(act.act_obj(mn, x) == outer);
          Fn med = act.residual_tensor_mediator(m, n, x);  // (M@N).X -> M.(N.X)
          CHECK(med.dom == act.act_obj(mn, x));
          CHECK(med.cod == outer);
          std::vector<int> hits(static_cast<size_t>(med.cod), 0);
          for (int v : med.tab) ++hits[static_cast<size_t>(v)];
          for (int h : hits) CHECK(h == 1);
          // naturality in X for pure maps
          for (int y = 1; y <= 2; ++y) {
            if (act.act_obj(m, act.act_obj(n, y)) > 64) continue;
            if (act.kleisli()) continue;  // pure-map naturality below is on Fn
            for (const Fn& f : enumerate_functions(x, y)) {
              Fn medy = act.residual_tensor_mediator(m, n, y);
              Fn lhs = compose(act.act_left(m, KHom{act.act_obj(n, x),
                                                    act.act_obj(n, y),
                                                    act.act_left(n, KHom{x, y, f}).fn})
                                   .fn,
                               med);
              Fn rhs = compose(medy, act.act_left(mn, KHom{x, y, f}).fn);
              CHECK(lhs == rhs);
            }
          }
        }
  }
}

TEST_CASE("residual maps act naturally and compose functorially") {
  for (const Action& act : all_actions()) {
    if (act.kleisli()) continue;
    int rb = residual_bound(act);
    auto ms = act.enumerate_residuals(rb);
    for (const Residual& m : ms) {
      ResHom idm = act.res_hom_id(m);
      for (int x = 1; x <= 2; ++x)
        CHECK(act.act_morphism(idm, x) == id_fn(act.act_obj(m, x)));
      for (const Residual& n : ms)
        for (const ResHom& phi : act.enumerate_residual_homs(m, n)) {
          // naturality: phi_Y . (M.f) == (N.f) . phi_X
          for (int x = 1; x <= 2; ++x)
            for (int y = 1; y <= 2; ++y)
              for (const Fn& f : enumerate_functions(x, y)) {
                Fn lhs = compose(act.act_morphism(phi, y),
                                 act.act_left(m, KHom{x, y, f}).fn);
                Fn rhs = compose(act.act_left(n, KHom{x, y, f}).fn,
                                 act.act_morphism(phi, x));
                CHECK(lhs == rhs);
              }
          // functoriality of composition with another hom
          for (const Residual& k : ms)
            for (const ResHom& psi : act.enumerate_residual_homs(n, k)) {
              ResHom comp = act.res_hom_comp(psi, phi);
              for (int x = 1; x <= 2; ++x)
                CHECK(act.act_morphism(comp, x) ==
                      compose(act.act_morphism(psi, x), act.act_morphism(phi, x)));
            }
        }
    }
  }
}

TEST_CASE("generator maps stay inside the enumerated hom-sets") {
  for (const Action& act : all_actions()) {
    if (act.kleisli()) continue;
    for (const ResHom& phi : act.generator_homs(2)) {
      auto homs = act.enumerate_residual_homs(phi.dom, phi.cod);
      bool found = false;
      for (const ResHom& h : homs)
        found |= equal_fn(h.f, phi.f) &&
                 (act.kind != ActionKind::Affine || equal_fn(h.g, phi.g));
      CHECK(found);
    }
  }
}

TEST_CASE("writer and state transport concrete examples correctly") {
  // writer over Z/2: a Kleisli hom 1 -> 1 with log 1, composed with itself,
  // accumulates to log 0
  Action wr = writer_action();
  KHom f{1, 1, Fn{1, 2, {pair_ix(0, 1, 2)}}};
  KHom ff = wr.kcomp(f, f);
  CHECK(ff.fn.tab[0] == pair_ix(0, 0, 2));
  // state with q = 2: reading then writing the state round-trips
  Action st = state_action(2);
  CHECK(st.t_obj(1) == 4);  // (1 x 2)^2
  CHECK(st.state_run(st.eta(2).tab[1], 1, 2) == pair_ix(1, 1, 2));
}
