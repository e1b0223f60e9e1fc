#include "spinalias_cli/cli.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "spinalias/aliasing.hpp"
#include "spinalias/fieldsim.hpp"
#include "spinalias/io.hpp"
#include "spinalias/sampling.hpp"
#include "spinalias/spectrum.hpp"

namespace spinalias::cli {
namespace {

struct Options {
  std::string scheme = "gauss";
  int N = 6;
  int s = 2;
  int Q = 1;
  int ell = 2;
  int m = 0;
  int L0 = 4;
  std::optional<int> lmax;
  std::optional<int> umax;
  std::optional<int> u;
  std::optional<int> v;
  int nreal = 2000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string format = "csv";
  std::string out_path;
  std::string weighting = "cubature";
  bool weighting_given = false;
  std::string spectrum_path;
  std::string locations_path;
  bool paper_example = false;
  bool jacobi_nodes = false;
};

// Worked example: source (l=2, m=0, s=2) on N=6 grids, rows (j, r).
constexpr std::array<std::array<int, 2>, 12> kExampleRows{{{0, 1},
                                                           {0, -1},
                                                           {1, 1},
                                                           {1, -1},
                                                           {2, 1},
                                                           {2, -1},
                                                           {2, 2},
                                                           {2, -2},
                                                           {3, 1},
                                                           {3, -1},
                                                           {3, 2},
                                                           {3, -2}}};
// Published four-decimal values for Q = 1, same row order.
constexpr std::array<double, 12> kReferenceGauss{0.7640, 0.7588, 0.6984, -0.6992,
                                                 0.3189, 0.3261, 0.9346, 0.9292,
                                                 0.1981, -0.1925, 0.3891, -0.3968};
constexpr std::array<double, 12> kReferenceEquiangular{0.6109, 0.6112, 0.1672, -0.1673,
                                                       0.2740, 0.2728, 0.8263, 0.8269,
                                                       0.1297, -0.1286, 0.4492, -0.4490};

class InputFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SamplingScheme scheme_of(const Options& o) {
  auto parsed = parse_scheme(o.scheme);
  if (!parsed) {
    throw std::invalid_argument("unknown scheme '" + o.scheme + "'");
  }
  return *parsed;
}

ThetaWeighting weighting_of(const Options& o, ThetaWeighting fallback) {
  if (!o.weighting_given) {
    return fallback;
  }
  auto parsed = parse_weighting(o.weighting);
  if (!parsed) {
    throw std::invalid_argument("unknown weighting '" + o.weighting + "'");
  }
  return *parsed;
}

SamplingGrid make_grid(const Options& o) {
  if (scheme_of(o) == SamplingScheme::kGaussJacobi) {
    return build_grid_gauss(o.N, o.s, o.Q,
                            o.jacobi_nodes ? GaussNodeFamily::kJacobiSpin
                                           : GaussNodeFamily::kLegendre);
  }
  return build_grid_equiangular(o.N, o.s, o.Q);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputFailure("cannot read '" + path + "'");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!(file << text)) {
    throw InputFailure("cannot write '" + path + "'");
  }
}

Metadata base_metadata(const std::string& command, const Options& o) {
  return {{"command", command},
          {"version", std::string(library_version())},
          {"scheme", o.scheme},
          {"N", static_cast<long long>(o.N)},
          {"s", static_cast<long long>(o.s)},
          {"Q", static_cast<long long>(o.Q)},
          {"seed", o.seed}};
}

std::string render(const Table& table, const Metadata& meta, const Options& o) {
  return o.format == "json" ? to_json(table, meta) : to_csv(table);
}

int cmd_grid(const Options& o, std::ostream& out) {
  Metadata meta = base_metadata("grid", o);
  if (o.paper_example) {
    const SamplingGrid gj = build_grid_gauss(6, 2, o.Q);
    const SamplingGrid ea = build_grid_equiangular(6, 2, o.Q);
    Table t{{"index", "gj_node", "gj_weight", "ea_node", "ea_weight"}, {}};
    for (std::size_t p = 0; p < ea.theta_count(); ++p) {
      std::vector<Cell> row{static_cast<long long>(p + 1)};
      if (p < gj.theta_count()) {
        row.emplace_back(gj.theta_nodes()[p]);
        row.emplace_back(gj.theta_weights()[p]);
      } else {
        row.emplace_back(std::string());
        row.emplace_back(std::string());
      }
      row.emplace_back(ea.theta_nodes()[p]);
      row.emplace_back(ea.theta_weights()[p]);
      t.rows.push_back(std::move(row));
    }
    meta[3].second = 6LL;
    meta[4].second = 2LL;
    write_text(o.out_path, render(t, meta, o), out);
    return kOk;
  }
  const SamplingGrid grid = make_grid(o);
  write_text(o.out_path,
             o.format == "json" ? grid_json(grid, meta) : to_csv(grid_table(grid)), out);
  return kOk;
}

Table example_locations(ThetaWeighting weighting, int Q) {
  Table t{{"scheme", "j", "r", "class", "intensity"}, {}};
  for (SamplingScheme scheme : {SamplingScheme::kGaussJacobi, SamplingScheme::kEquiangular}) {
    const SamplingGrid grid = build_grid(scheme, 6, 2, Q);
    const AliasMap map = enumerate_aliases({2, 0, 2}, grid, 2 + 2 * (6 - 2), weighting);
    for (const auto& e : map.entries) {
      t.rows.push_back({std::string(to_string(scheme)), static_cast<long long>(e.j),
                        static_cast<long long>(e.r), std::string(to_string(e.klass)),
                        e.intensity});
    }
  }
  return t;
}

int cmd_alias_map(const Options& o, std::ostream& out, std::ostream& err) {
  Metadata meta = base_metadata("alias-map", o);
  if (o.paper_example) {
    const ThetaWeighting weighting = weighting_of(o, ThetaWeighting::kBare);
    meta[3].second = 6LL;
    meta[4].second = 2LL;
    meta.emplace_back("weighting", std::string(to_string(weighting)));
    const bool with_reference = o.Q == 1;
    Table t{{"scheme", "j", "r", "u", "v", "class", "tau"}, {}};
    if (with_reference) {
      t.columns.emplace_back("reference");
    }
    for (SamplingScheme scheme : {SamplingScheme::kGaussJacobi, SamplingScheme::kEquiangular}) {
      const SamplingGrid grid = build_grid(scheme, 6, 2, o.Q);
      const auto& reference = scheme == SamplingScheme::kGaussJacobi ? kReferenceGauss
                                                                     : kReferenceEquiangular;
      for (std::size_t i = 0; i < kExampleRows.size(); ++i) {
        const auto [j, r] = kExampleRows[i];
        const int u = 2 + j;
        const int v = 2 * r * o.Q;
        if (std::abs(v) > u) {
          continue;
        }
        std::vector<Cell> row{std::string(to_string(scheme)),
                              static_cast<long long>(j),
                              static_cast<long long>(r),
                              static_cast<long long>(u),
                              static_cast<long long>(v),
                              std::string(to_string(classify(j, 6, 2))),
                              tau(grid, {2, 0, 2}, u, v, weighting)};
        if (with_reference) {
          row.emplace_back(reference[i]);
        }
        t.rows.push_back(std::move(row));
      }
    }
    if (!o.locations_path.empty()) {
      write_text(o.locations_path, render(example_locations(weighting, o.Q), meta, o), out);
    }
    write_text(o.out_path, render(t, meta, o), out);
    return kOk;
  }

  const ThetaWeighting weighting = weighting_of(o, ThetaWeighting::kCubature);
  const SamplingGrid grid = make_grid(o);
  const AliasMap map = enumerate_aliases({o.ell, o.m, o.s}, grid, o.umax, weighting);
  meta.emplace_back("ell", static_cast<long long>(o.ell));
  meta.emplace_back("m", static_cast<long long>(o.m));
  meta.emplace_back("u_max", static_cast<long long>(map.u_max));
  meta.emplace_back("weighting", std::string(to_string(weighting)));
  if (o.Q > o.N - o.s) {
    const double claimed = claimed_min_distance(o.N, o.s);
    meta.emplace_back("claimed_min_distance", claimed);
    if (auto d = map.min_distance()) {
      meta.emplace_back("min_distance", *d);
      if (std::abs(*d - claimed) > 1e-12) {
        err << "note: enumerated minimum alias distance " << format_double(*d)
            << " differs from sqrt((N-s)^2 + (2N)^2) = " << format_double(claimed) << "\n";
      }
    }
  }
  write_text(o.out_path, render(alias_table(map), meta, o), out);
  return kOk;
}

int cmd_tau(const Options& o, std::ostream& out) {
  if (!o.u || !o.v) {
    throw std::invalid_argument("tau needs --u and --v");
  }
  const ThetaWeighting weighting = weighting_of(o, ThetaWeighting::kCubature);
  const SamplingGrid grid = make_grid(o);
  const HarmonicIndex source{o.ell, o.m, o.s};
  Table t{{"ell", "m", "s", "u", "v", "I_N", "H_Q", "tau"}, {}};
  t.rows.push_back({static_cast<long long>(o.ell), static_cast<long long>(o.m),
                    static_cast<long long>(o.s), static_cast<long long>(*o.u),
                    static_cast<long long>(*o.v), i_n(grid, o.ell, o.m, *o.u, *o.v, o.s, weighting),
                    h_q_closed(o.m, *o.v, o.Q).real(), tau(grid, source, *o.u, *o.v, weighting)});
  Metadata meta = base_metadata("tau", o);
  meta.emplace_back("weighting", std::string(to_string(weighting)));
  write_text(o.out_path, render(t, meta, o), out);
  return kOk;
}

AngularPowerSpectrum load_spectrum(const std::string& path, int s) {
  const std::string text = read_file(path);
  try {
    return parse_spectrum(text, s);
  } catch (const InputError& e) {
    throw InputFailure(path + ": " + e.what());
  }
}

int cmd_spectrum_alias(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.spectrum_path.empty()) {
    throw std::invalid_argument("spectrum-alias needs --spectrum PATH");
  }
  const AngularPowerSpectrum spec = load_spectrum(o.spectrum_path, o.s);
  const ThetaWeighting weighting = weighting_of(o, ThetaWeighting::kCubature);
  const SamplingGrid grid = make_grid(o);
  const int top = o.lmax.value_or(spec.l_max());
  if (top < o.s) {
    throw std::invalid_argument("--lmax must be >= s");
  }
  std::vector<int> ells;
  for (int ell = o.s; ell <= top; ++ell) {
    ells.push_back(ell);
  }
  const AliasedSpectrum result = aliased_spectrum(grid, spec, ells, o.umax, weighting);
  if (result.truncation_warning) {
    err << "warning: u_max " << result.u_max
        << " is below max(l) + 2(N - s); aliases beyond it are ignored\n";
  }
  Metadata meta = base_metadata("spectrum-alias", o);
  meta.emplace_back("u_max", static_cast<long long>(result.u_max));
  meta.emplace_back("weighting", std::string(to_string(weighting)));
  write_text(o.out_path, render(aliased_spectrum_table(spec, result), meta, o), out);
  return kOk;
}

int cmd_verify_bandlimit(const Options& o, std::ostream& out) {
  const BandlimitReport report = verify_bandlimit(o.L0, o.s, o.N, o.Q, o.seed, scheme_of(o));
  Table t{{"L0", "s", "N", "Q", "seed", "max_error", "passed", "loose_hypothesis",
           "sharp_hypothesis"},
          {}};
  t.rows.push_back({static_cast<long long>(o.L0), static_cast<long long>(o.s),
                    static_cast<long long>(o.N), static_cast<long long>(o.Q), o.seed,
                    report.max_error, report.passed, report.loose_hypothesis,
                    report.sharp_hypothesis});
  Metadata meta = base_metadata("verify-bandlimit", o);
  meta.emplace_back("tolerance", kBandlimitTolerance);
  write_text(o.out_path, render(t, meta, o), out);
  return report.passed ? kOk : kVerificationFailed;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const AngularPowerSpectrum spec = o.spectrum_path.empty()
                                        ? AngularPowerSpectrum::flat(o.s, o.L0, 0.5, 0.5)
                                        : load_spectrum(o.spectrum_path, o.s);
  const int top = o.lmax.value_or(o.s + 4);
  if (top < o.s) {
    throw std::invalid_argument("--lmax must be >= s");
  }
  std::vector<int> ells;
  for (int ell = o.s; ell <= top; ++ell) {
    ells.push_back(ell);
  }
  MonteCarloOptions mc;
  mc.threads = o.threads;
  mc.weighting = weighting_of(o, ThetaWeighting::kCubature);
  const SamplingGrid grid = make_grid(o);
  const MonteCarloReport report =
      monte_carlo_spectrum(spec, grid, o.L0, ells, o.nreal, o.seed, mc);
  Metadata meta = base_metadata("simulate", o);
  meta.emplace_back("L0", static_cast<long long>(o.L0));
  meta.emplace_back("n_real", static_cast<long long>(o.nreal));
  meta.emplace_back("rng", report.rng);
  meta.emplace_back("weighting", std::string(to_string(mc.weighting)));
  write_text(o.out_path, render(monte_carlo_table(report), meta, o), out);
  for (const auto& row : report.rows) {
    if (!(std::abs(row.z) <= 5.0)) {
      return kVerificationFailed;
    }
  }
  return kOk;
}

void add_common(CLI::App* sub, Options& o, bool with_grid = true) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out_path, "Write output to PATH instead of stdout");
  sub->add_option("--seed", o.seed, "Random seed");
  if (with_grid) {
    sub->add_option("--scheme", o.scheme, "Sampling scheme")
        ->check(CLI::IsMember({"gauss", "gauss-jacobi", "equiangular"}));
    sub->add_option("--N", o.N, "Colatitude resolution parameter");
    sub->add_option("--s", o.s, "Spin weight");
    sub->add_option("--Q", o.Q, "Longitude resolution parameter");
    sub->add_flag("--jacobi-nodes", o.jacobi_nodes,
                  "Use the N roots of P_N^(s,s) instead of N-s Legendre roots");
    sub->add_option("--weighting", o.weighting, "Colatitude weighting in discrete sums")
        ->check(CLI::IsMember({"cubature", "bare"}))
        ->each([&o](const std::string&) { o.weighting_given = true; });
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spin-weighted spherical harmonic sampling and aliasing"};
  app.require_subcommand(1);

  auto* grid = app.add_subcommand("grid", "Colatitude and longitude nodes and weights");
  add_common(grid, o);
  grid->add_flag("--paper-example", o.paper_example, "Both N=6, s=2 grids side by side");

  auto* alias = app.add_subcommand("alias-map", "Enumerate aliases of one coefficient");
  add_common(alias, o);
  alias->add_option("--l", o.ell, "Source degree");
  alias->add_option("--m", o.m, "Source order");
  alias->add_option("--umax", o.umax, "Largest alias degree (default l + 4(N-s))");
  alias->add_flag("--paper-example", o.paper_example,
                  "Worked example: tau_2(2,0;2+j,2rQ) on both N=6 grids");
  alias->add_option("--locations", o.locations_path,
                    "With --paper-example, write the alias location grid to PATH");

  auto* tau_cmd = app.add_subcommand("tau", "One aliasing-matrix element");
  add_common(tau_cmd, o);
  tau_cmd->add_option("--l", o.ell, "Source degree");
  tau_cmd->add_option("--m", o.m, "Source order");
  tau_cmd->add_option("--u", o.u, "Alias degree")->required();
  tau_cmd->add_option("--v", o.v, "Alias order")->required();

  auto* spec_cmd = app.add_subcommand("spectrum-alias", "Aliased angular power spectrum");
  add_common(spec_cmd, o);
  spec_cmd->add_option("--spectrum", o.spectrum_path, "Spectrum CSV/JSON (ell,C_E,C_B)")
      ->required();
  spec_cmd->add_option("--lmax", o.lmax, "Largest reported multipole");
  spec_cmd->add_option("--umax", o.umax, "Truncation degree of the alias sums");

  auto* verify = app.add_subcommand("verify-bandlimit", "Band-limited round-trip check");
  add_common(verify, o);
  verify->add_option("--L0", o.L0, "Bandwidth");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo check of the aliased spectrum");
  add_common(sim, o);
  sim->add_option("--L0", o.L0, "Bandwidth of the simulated field");
  sim->add_option("--spectrum", o.spectrum_path, "Spectrum file (default flat C = 1)");
  sim->add_option("--lmax", o.lmax, "Largest reported multipole (default s + 4)");
  sim->add_option("--nreal", o.nreal, "Number of realizations");
  sim->add_option("--threads", o.threads, "Worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadParameters;
  }

  try {
    if (grid->parsed()) {
      return cmd_grid(o, out);
    }
    if (alias->parsed()) {
      return cmd_alias_map(o, out, err);
    }
    if (tau_cmd->parsed()) {
      return cmd_tau(o, out);
    }
    if (spec_cmd->parsed()) {
      return cmd_spectrum_alias(o, out, err);
    }
    if (verify->parsed()) {
      return cmd_verify_bandlimit(o, out);
    }
    if (sim->parsed()) {
      return cmd_simulate(o, out);
    }
  } catch (const InputFailure& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameters;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameters;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameters;
  }
  err << "error: no command\n";
  return kBadParameters;
}

}  // namespace spinalias::cli
