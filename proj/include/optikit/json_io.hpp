#pragma once
// JSON serialization for finite sets, functions, representatives, quotient
// tables, and concrete optics.

#include <json.hpp>

#include "concrete.hpp"

namespace optikit {

using nlohmann::json;

inline json to_json(const FiniteSet& s) {
  json j{{"size", s.size}};
  if (!s.labels.empty()) j["labels"] = s.labels;
  return j;
}

inline json to_json(const Fn& f) {
  return json{{"dom", f.dom}, {"cod", f.cod}, {"table", f.tab}};
}

inline Fn fn_from_json(const json& j) {
  Fn f{j.at("dom").get<int>(), j.at("cod").get<int>(),
       j.at("table").get<std::vector<int>>()};
  if (static_cast<int>(f.tab.size()) != f.dom)
    throw DomainMismatch("json function: table length differs from dom");
  for (int v : f.tab)
    if (v < 0 || v >= f.cod)
      throw DomainMismatch("json function: entry outside codomain");
  return f;
}

inline json to_json(const Residual& m, ActionKind kind) {
  if (kind == ActionKind::Affine) return json{{"P", m.a}, {"Q", m.b}};
  return json{{"size", m.a}};
}

inline json to_json(const Rep& p, ActionKind kind) {
  return json{{"residual", to_json(p.m, kind)},
              {"l", to_json(p.l.fn)},
              {"r", to_json(p.r.fn)}};
}

inline const char* action_name(ActionKind k) {
  switch (k) {
    case ActionKind::Product: return "lens";
    case ActionKind::Coproduct: return "prism";
    case ActionKind::Trivial: return "iso";
    case ActionKind::Affine: return "affine";
    case ActionKind::Achromatic: return "achromatic";
    case ActionKind::Writer: return "writer";
    case ActionKind::State: return "state";
    case ActionKind::Grate: return "grate";
  }
  return "?";
}

inline json to_json(const Sig& s) {
  return json{{"S", s.s}, {"S'", s.sp}, {"A", s.a}, {"A'", s.ap}};
}

inline json table_to_json(OpticTable& t) {
  json classes = json::array();
  for (size_t c = 0; c < t.class_count(); ++c) {
    Rep rep = t.canon(static_cast<int>(c));
    classes.push_back(json{{"id", c}, {"canon", to_json(rep, t.act.kind)}});
  }
  return json{{"sig", to_json(t.sig)},
              {"action", action_name(t.act.kind)},
              {"bound", t.bound},
              {"class_count", t.class_count()},
              {"classes", std::move(classes)}};
}

inline json to_json(const LawReport& r) {
  json laws = json::object();
  for (auto& [n, ok] : r.laws) laws[n] = ok;
  return json{{"laws", std::move(laws)}, {"lawful", r.all()}};
}

inline json to_json(const ConcreteOptic& co) {
  json j{{"sig", to_json(co.sig)}};
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, IsoC>) {
          j["kind"] = "iso";
          j["to"] = to_json(b.fwd);
          j["from"] = to_json(b.bwd);
        } else if constexpr (std::is_same_v<T, LensC>) {
          j["kind"] = "lens";
          j["get"] = to_json(b.get);
          j["put"] = to_json(b.put);
        } else if constexpr (std::is_same_v<T, PrismC>) {
          j["kind"] = "prism";
          j["matching"] = to_json(b.matching);
          j["review"] = to_json(b.review);
        } else if constexpr (std::is_same_v<T, AffineC>) {
          j["kind"] = "affine";
          j["step"] = to_json(b.step);
        } else if constexpr (std::is_same_v<T, TraversalC>) {
          j["kind"] = "traversal";
          json uz = json::array();
          for (const FunListEntry& e : b.unzip)
            uz.push_back(json{{"n", e.n}, {"as", e.as}, {"k", to_json(e.k)}});
          j["unzip"] = std::move(uz);
        } else if constexpr (std::is_same_v<T, SetterC>) {
          j["kind"] = "setter";
          j["over"] = to_json(b.over);
        } else if constexpr (std::is_same_v<T, GrateC>) {
          j["kind"] = "grate";
          j["grate"] = to_json(b.grate);
        } else if constexpr (std::is_same_v<T, AchromaticC>) {
          j["kind"] = "achromatic";
          j["opt"] = to_json(b.opt);
          j["get"] = to_json(b.get);
          j["create"] = to_json(b.create);
        } else if constexpr (std::is_same_v<T, LinearC>) {
          j["kind"] = "linear";
          j["unzip"] = to_json(b.unzip);
        } else if constexpr (std::is_same_v<T, WriterC>) {
          j["kind"] = "writer";
          j["get"] = to_json(b.get);
          j["put"] = to_json(b.put);
        } else if constexpr (std::is_same_v<T, StatefulC>) {
          j["kind"] = "stateful";
          j["state_size"] = b.q;
          j["mget"] = to_json(b.mget);
          j["mput"] = to_json(b.mput);
        }
      },
      co.body);
  return j;
}

inline Sig sig_from_json(const json& j) {
  return Sig{j.at("S").get<int>(), j.at("S'").get<int>(), j.at("A").get<int>(),
             j.at("A'").get<int>()};
}

inline ConcreteOptic concrete_from_json(const json& j) {
  Sig sig = sig_from_json(j.at("sig"));
  std::string k = j.at("kind").get<std::string>();
  if (k == "iso")
    return {sig, IsoC{fn_from_json(j.at("to")), fn_from_json(j.at("from"))}};
  if (k == "lens")
    return {sig, LensC{fn_from_json(j.at("get")), fn_from_json(j.at("put"))}};
  if (k == "prism")
    return {sig,
            PrismC{fn_from_json(j.at("matching")), fn_from_json(j.at("review"))}};
  if (k == "affine") return {sig, AffineC{fn_from_json(j.at("step"))}};
  if (k == "traversal") {
    TraversalC tr;
    for (const json& e : j.at("unzip"))
      tr.unzip.push_back(FunListEntry{e.at("n").get<int>(),
                                      e.at("as").get<std::vector<int>>(),
                                      fn_from_json(e.at("k"))});
    return {sig, std::move(tr)};
  }
  if (k == "setter") return {sig, SetterC{fn_from_json(j.at("over"))}};
  if (k == "grate") return {sig, GrateC{fn_from_json(j.at("grate"))}};
  if (k == "achromatic")
    return {sig, AchromaticC{fn_from_json(j.at("opt")), fn_from_json(j.at("get")),
                             fn_from_json(j.at("create"))}};
  if (k == "linear") return {sig, LinearC{fn_from_json(j.at("unzip"))}};
  if (k == "writer")
    return {sig, WriterC{fn_from_json(j.at("get")), fn_from_json(j.at("put"))}};
  if (k == "stateful")
    return {sig, StatefulC{j.at("state_size").get<int>(),
                           fn_from_json(j.at("mget")), fn_from_json(j.at("mput"))}};
  throw DomainMismatch("json concrete optic: unknown kind '" + k + "'");
}

}  // namespace optikit
