#include "ceresa/ops.hpp"

#include "ceresa/certifier.hpp"
#include "ceresa/errors.hpp"
#include "ceresa/heegner.hpp"
#include "ceresa/lattice.hpp"
#include "ceresa/modular_geometry.hpp"
#include "ceresa/pullback.hpp"
#include "ceresa/selftest.hpp"

namespace ceresa {

Json heegner_report(std::int64_t N, std::int64_t D, std::optional<std::int64_t> r) {
  if (D >= 0 || (mod(D, 4) != 0 && mod(D, 4) != 1))
    throw InvalidArgument("D = " + std::to_string(D) + " is not a negative discriminant");
  const auto rs = r ? std::vector<std::int64_t>{make_heegner_index(N, D, *r).r}
                    : heegner_r_values(N, D);
  Json divisors = Json::array();
  for (auto x : rs) divisors.push_back(to_json(enumerate_heegner_divisor({N, D, x})));
  // headline fields describe the requested r, or the smallest admissible one
  Json degree = nullptr, reps = nullptr;
  if (!divisors.empty()) {
    degree = divisors[0]["degree"];
    reps = Json::array();
    for (const auto& c : divisors[0]["classes"]) reps.push_back(c["form"]);
  }
  return Json{{"N", N},
              {"D", D},
              {"r", rs.empty() ? Json(nullptr) : Json(rs.front())},
              {"hurwitz", to_string(hurwitz_class_number(-D))},
              {"r_values", heegner_r_values(N, D)},
              {"degree", degree},
              {"class_representatives", reps},
              {"divisors", divisors}};
}

Json pullback_report(std::int64_t N, const std::string& m0, std::int64_t r1) {
  const auto d = decompose_heegner(N, parse_rational(m0), r1);
  const auto chow = chow_heegner_from_decomposition(N, d);
  const auto genus = gamma_N_profile_formula(N).genus;
  return Json{{"decomposition", to_json(d)},
              {"genus_XN", genus},
              {"heegner_degree_XN", to_string(heegner_degree_on_XN(N, d.target))},
              {"chow_heegner", to_json(chow)},
              {"chow_heegner_reduced", to_json(reduce_canonical(chow, genus))}};
}

Json genus_report(std::int64_t N, const std::string& curve) {
  switch (parse_curve_kind(curve)) {
    case CurveKind::X0: return to_json(x0_profile(N));
    case CurveKind::X0Star: return to_json(x0_star_profile(N));
    case CurveKind::XN: break;
  }
  return to_json(gamma_N_profile_formula(N));
}

Json lattice_report(std::int64_t N) {
  return Json{{"N", N},
              {"W", to_json(build_lattice_W(N))},
              {"P", to_json(build_lattice_P(N))},
              {"L", to_json(build_lattice_L(N))}};
}

Json newforms_report(NewformClient& client, std::int64_t M, FetchMode mode) {
  Json records = Json::array();
  for (const auto& r : client.fetch_newforms(M, mode)) records.push_back(to_json_with_source(r));
  return Json{{"level", M}, {"mode", to_string(mode)}, {"records", records}};
}

Json selftest_report() {
  Json suites = Json::array();
  int passed = 0, failed = 0;
  for (const auto& s : run_selftest()) {
    (s.ok() ? passed : failed)++;
    suites.push_back(Json{{"name", s.name},
                          {"checks", s.checks},
                          {"failures", s.failures},
                          {"first_failure", s.first_failure},
                          {"ok", s.ok()}});
  }
  return Json{{"suites", suites}, {"passed", passed}, {"failed", failed}};
}

Json certify_report(const std::string& N, const std::optional<NewformSource>& source) {
  return to_json(certify(parse_bigint(N), source));
}

}  // namespace ceresa
