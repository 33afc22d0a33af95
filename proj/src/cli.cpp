#include "ceresa/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "ceresa/certifier.hpp"
#include "ceresa/errors.hpp"
#include "ceresa/newform_client.hpp"
#include "ceresa/ops.hpp"

namespace ceresa {

namespace {

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << pad << k << ":\n";
        render_text(v, out, indent + 2);
      } else {
        out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured() && !v.empty()) {
        out << pad << "-\n";
        render_text(v, out, indent + 2);
      } else {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

struct Emitter {
  std::ostream& out;
  std::string format;

  void operator()(const Json& j, const std::string& text = {}) const {
    if (format == "json") {
      out << j.dump(2) << "\n";
    } else if (!text.empty()) {
      out << text;
    } else {
      render_text(j, out, 0);
    }
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heegner divisors, special-divisor pullbacks and Ceresa/GKS certificates for X_N",
               "ceresa"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::optional<std::string> config_path;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--config", config_path, "newform client config (JSON)");

  auto* certify_cmd = app.add_subcommand("certify", "certificate for the cycles of X_N");
  std::string certify_n;
  std::optional<std::string> fixtures_dir;
  bool online = false, no_newforms = false;
  certify_cmd->add_option("N", certify_n, "level (arbitrary size)")->required();
  auto* fix_opt = certify_cmd->add_option("--fixtures", fixtures_dir, "fixture directory");
  auto* online_flag = certify_cmd->add_flag("--online", online, "query the newform database");
  certify_cmd->add_flag("--no-newforms", no_newforms, "arithmetic clauses only");
  fix_opt->excludes(online_flag);

  auto* heegner_cmd = app.add_subcommand("heegner", "Heegner divisor P_{D,r} on X_0(N)");
  std::int64_t heegner_n = 0, heegner_d = 0;
  std::optional<std::int64_t> heegner_r;
  heegner_cmd->add_option("N", heegner_n)->required();
  heegner_cmd->add_option("D", heegner_d, "negative discriminant")->required();
  heegner_cmd->add_option("r", heegner_r, "square root of D mod 4N (all if omitted)");

  auto* pullback_cmd = app.add_subcommand("pullback", "decompose Heeg(m0, r) as a pullback");
  std::int64_t pullback_n = 0, pullback_r = 0;
  std::string pullback_m0;
  pullback_cmd->add_option("N", pullback_n)->required();
  pullback_cmd->add_option("--m0", pullback_m0, "norm m0 as NUM/DEN")->required();
  pullback_cmd->add_option("--r", pullback_r, "r1, residue mod 2N")->required();

  auto* genus_cmd = app.add_subcommand("genus", "genus, cusps and elliptic points");
  std::int64_t genus_n = 0;
  std::string curve = "xn";
  genus_cmd->add_option("N", genus_n)->required();
  genus_cmd->add_option("--curve", curve)
      ->check(CLI::IsMember({"x0", "x0star", "xn"}))
      ->capture_default_str();

  auto* lattice_cmd = app.add_subcommand("lattice", "lattices L_W, P, L and L'/L");
  std::int64_t lattice_n = 0;
  lattice_cmd->add_option("N", lattice_n)->required();

  auto* newforms_cmd = app.add_subcommand("newforms", "weight-2 newform records at level M");
  std::int64_t newforms_m = 0;
  bool newforms_online = false;
  newforms_cmd->add_option("M", newforms_m)->required();
  newforms_cmd->add_flag("--online", newforms_online, "query the newform database");

  auto* selftest_cmd = app.add_subcommand("selftest", "Eichler, genus-table and round-trip suites");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ceresa: " << e.what() << "\n";
    return kExitUsage;
  }

  const Emitter emit{out, format};
  try {
    if (certify_cmd->parsed()) {
      const BigInt N = parse_bigint(certify_n);
      auto cfg = ClientConfig::load(config_path);
      if (fixtures_dir) cfg.fixtures_dir = *fixtures_dir;
      NewformClient client(cfg);
      std::optional<NewformSource> source;
      if (!no_newforms)
        source = NewformSource{&client, online ? FetchMode::Online : FetchMode::Offline};
      const auto c = certify(N, source);
      emit(to_json(c), explain(c));
      return c.verdict == Verdict::ProvenNontrivial ? kExitOk : kExitUnknown;
    }
    if (heegner_cmd->parsed()) {
      emit(heegner_report(heegner_n, heegner_d, heegner_r));
      return kExitOk;
    }
    if (pullback_cmd->parsed()) {
      emit(pullback_report(pullback_n, pullback_m0, pullback_r));
      return kExitOk;
    }
    if (genus_cmd->parsed()) {
      emit(genus_report(genus_n, curve));
      return kExitOk;
    }
    if (lattice_cmd->parsed()) {
      emit(lattice_report(lattice_n));
      return kExitOk;
    }
    if (newforms_cmd->parsed()) {
      NewformClient client(ClientConfig::load(config_path));
      emit(newforms_report(client, newforms_m,
                           newforms_online ? FetchMode::Online : FetchMode::Offline));
      return kExitOk;
    }
    if (selftest_cmd->parsed()) {
      const auto report = selftest_report();
      emit(report);
      return report.at("failed") == 0 ? kExitOk : kExitError;
    }
  } catch (const InvalidArgument& e) {
    err << "ceresa: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ceresa: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace ceresa
