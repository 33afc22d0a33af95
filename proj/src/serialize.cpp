#include "ceresa/serialize.hpp"

namespace ceresa {

namespace {

Json matrix(const RationalMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    rows.push_back(r);
  }
  return rows;
}

Json matrix2(const Matrix2& m) {
  return Json::array({Json::array({to_string(m[0]), to_string(m[1])}),
                      Json::array({to_string(m[2]), to_string(m[3])})});
}

Json heegner_key(const HeegnerKey& k, std::int64_t N) {
  return Json{{"m0", to_string(k.m0(N))}, {"r1", k.r1}, {"D", -k.n}};
}

}  // namespace

Json to_json(const CurveProfile& p) {
  Json j{{"curve", to_string(p.kind)}, {"N", p.N},         {"nu2", p.nu2},
         {"nu3", p.nu3},               {"cusps", p.cusps}, {"genus", p.genus}};
  // X_0^*(p) is not a subgroup quotient of PSL2(Z); no index
  j["index"] = p.kind == CurveKind::X0Star ? Json(nullptr) : Json(p.index);
  return j;
}

Json to_json(const GramLattice& l) {
  Json invariants = Json::array();
  for (const auto& d : l.discriminant_invariants()) invariants.push_back(to_string(d));
  Json basis = Json::array();
  for (const auto& b : l.basis) basis.push_back(matrix2(b));
  const auto sig = l.signature();
  return Json{{"kind", to_string(l.kind)},
              {"N", l.level_N},
              {"rank", l.rank()},
              {"basis", basis},
              {"gram", matrix(l.gram)},
              {"determinant", to_string(l.determinant())},
              {"signature", Json::array({sig.positive, sig.negative})},
              {"discriminant_invariants", invariants},
              {"discriminant_order", to_string(l.discriminant_order())}};
}

Json to_json(const DiscElement& mu) {
  return Json{{"N", mu.N()},
              {"r1", mu.r1()},
              {"r2", mu.r2()},
              {"q_W", to_string(q_mod1(mu, Side::W))},
              {"q_P", to_string(q_mod1(mu, Side::P))},
              {"q", to_string(q_mod1(mu, Side::Full))},
              {"representative", matrix2(mu.representative())}};
}

Json to_json(const BQForm& f) { return Json::array({f.a, f.b, f.c}); }

Json to_json(const HeegnerDivisor& d) {
  Json classes = Json::array();
  for (const auto& c : d.classes)
    classes.push_back(Json{{"form", to_json(c.form)}, {"weight", to_string(c.weight)}});
  return Json{{"N", d.index.N},
              {"D", d.index.D},
              {"r", d.index.r},
              {"self_paired", d.index.self_paired()},
              {"classes", classes},
              {"degree", to_string(d.degree)},
              {"hurwitz", to_string(hurwitz_class_number(-d.index.D))}};
}

Json to_json(const DivisorClass& c) {
  Json heeg = Json::array();
  for (const auto& [k, v] : c.heeg) {
    Json e = heegner_key(k, c.N);
    e["coeff"] = to_string(v);
    heeg.push_back(e);
  }
  return Json{{"N", c.N},
              {"heeg", heeg},
              {"omega", to_string(c.omega)},
              {"cusp", to_string(c.cusp)},
              {"cusp_ambiguous", c.cusp_ambiguous}};
}

Json to_json(const AmbientGenerator& g, std::int64_t N) {
  return Json{{"m", to_string(g.m(N))}, {"mu", Json::array({g.mu.r1(), g.mu.r2()})}};
}

Json to_json(const PullbackDecomposition& d) {
  Json terms = Json::array();
  for (const auto& [g, v] : d.terms) {
    Json t = to_json(g, d.N);
    t["coeff"] = to_string(v);
    terms.push_back(t);
  }
  const auto residual = round_trip_residual(d);
  return Json{{"N", d.N},
              {"target", heegner_key(d.target, d.N)},
              {"terms", terms},
              {"residual_cusp_ambiguous", d.residual_cusp_ambiguous},
              {"round_trip",
               Json{{"residual", to_json(residual)},
                    {"exact", residual.heeg.empty() && residual.omega == 0}}}};
}

Json to_json_with_source(const NewformRecord& r) {
  Json j = to_json(r);
  j["source"] = to_string(r.source);
  return j;
}

Json to_json(const Certificate& c) {
  Json witnesses = Json::array();
  for (const auto& w : c.witnesses) {
    Json j{{"clause", to_string(w.clause)}};
    if (w.prime) j["prime"] = to_string(*w.prime);
    if (w.cofactor) j["cofactor"] = to_string(*w.cofactor);
    if (w.newform) {
      j["level"] = w.newform->level;
      j["newform"] = to_json_with_source(w.newform->record);
    }
    witnesses.push_back(j);
  }
  Json lookup{{"status", to_string(c.newform_lookup)},
              {"mode", c.newform_mode ? Json(to_string(*c.newform_mode)) : Json(nullptr)},
              {"unavailable_levels", c.unavailable_levels},
              {"errors", c.lookup_errors}};
  return Json{{"N", to_string(c.N)},
              {"verdict", to_string(c.verdict)},
              {"clause", to_string(c.clause)},
              {"witnesses", witnesses},
              {"curve_profile", c.curve_profile ? to_json(*c.curve_profile) : Json(nullptr)},
              {"newform_lookup", lookup},
              {"justification", c.justification},
              {"explanation", explain(c)}};
}

}  // namespace ceresa
