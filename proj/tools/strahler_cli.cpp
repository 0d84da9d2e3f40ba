// Copyright 2026 The Strahler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// strahler: command-line front end for the enumeration, exact, moment,
// hypergeometric and Monte Carlo pipelines.
//
// Exit codes: 0 success, 1 a checked identity or acceptance criterion
// failed, 2 usage or domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "strahler/acceptance.hpp"
#include "strahler/errors.hpp"
#include "strahler/exact.hpp"
#include "strahler/hypergeom.hpp"
#include "strahler/moments.hpp"
#include "strahler/montecarlo.hpp"
#include "strahler/tree.hpp"

namespace {

using strahler::Rational;
using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags shared across subcommands; each subcommand binds the ones it uses.
struct Flags {
  int n = 0;
  int r = 1;
  int q = 1;
  int k = 1;
  int l = 0;
  int n_max = 0;
  bool count_only = false;
  int cap = strahler::kDefaultEnumerationCap;
  std::string tree;
  std::size_t count = 1;
  std::string mode;  // empty: STRAHLER_MODE or "exact"
  std::string moment_kind = "raw";
  std::int64_t x_num = 1;
  std::int64_t x_den = 1;
  std::string clt_kind = "ratio";
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  bool entropy = false;
  unsigned workers = 0;
  std::string format = "csv";
  std::size_t hist_bins = 0;
  std::vector<int> orders = {1, 2};
  double tolerance = 0.05;
  bool skip_mc = false;
  std::string output;
};

std::string resolve_mode(const Flags& f) {
  std::string mode = f.mode;
  if (mode.empty()) {
    const char* env = std::getenv("STRAHLER_MODE");
    mode = env && *env ? env : "exact";
  }
  if (mode != "exact" && mode != "float") {
    throw UsageError("mode must be exact or float, got '" + mode + "'");
  }
  return mode;
}

std::uint64_t resolve_seed(const Flags& f) {
  if (f.seed) return *f.seed;
  if (!f.entropy) {
    throw UsageError("randomized subcommands need --seed (or --entropy)");
  }
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

unsigned resolve_workers(const Flags& f) {
  return f.workers == 0 ? strahler::default_worker_count() : f.workers;
}

std::string rational_csv(const Rational& v) { return strahler::to_string(v); }

Json rational_json(const Rational& v) {
  // Exact values travel as integer pairs; very large parts fall back to
  // decimal strings so no precision is lost.
  auto part = [](const strahler::BigInt& z) -> Json {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
  };
  return Json{{"num", part(v.get_num())}, {"den", part(v.get_den())}};
}

// Prepends "config" to a JSON object rendered elsewhere.
std::string with_config(const Json& config, const std::string& object) {
  std::string body = object.substr(1);
  return "{\"config\":" + config.dump() + (body == "}" ? "" : ",") + body;
}

void header(std::ostream& out, const Json& config) {
  out << "# config: " << config.dump() << '\n';
}

// ---- subcommands ----------------------------------------------------------

int cmd_enumerate(const Flags& f, std::ostream& out) {
  const Json config{{"subcommand", "enumerate"}, {"n", f.n},
                    {"count_only", f.count_only}, {"cap", f.cap}};
  if (f.count_only) {
    if (f.n < 1) throw strahler::DomainError("n must be positive");
    header(out, config);
    out << strahler::catalan_count(f.n).get_str() << '\n';
    return kOk;
  }
  const auto trees = strahler::enumerate_trees(f.n, f.cap);
  header(out, config);
  for (const auto& t : trees) out << t.to_parens() << '\n';
  return kOk;
}

int cmd_sample(const Flags& f, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(f);
  if (f.n < 1) throw strahler::DomainError("n must be positive");
  header(out, Json{{"subcommand", "sample"}, {"n", f.n}, {"count", f.count},
                   {"seed", seed}});
  strahler::Rng rng = strahler::worker_rng(seed, 0);
  strahler::RemySampler sampler;
  for (std::size_t i = 0; i < f.count; ++i) {
    out << sampler.sample(static_cast<std::size_t>(f.n), rng).to_parens()
        << '\n';
  }
  return kOk;
}

int cmd_strahler(const Flags& f, std::ostream& out) {
  std::string text = f.tree;
  if (text.empty() || text == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.pop_back();
  }
  const auto tree = strahler::Tree::from_parens(text);
  const auto profile = strahler::strahler(tree);
  Json result{{"config", {{"subcommand", "strahler"}, {"tree", text}}},
              {"magnitude", tree.magnitude()},
              {"strahler_number", profile.strahler_number()},
              {"counts", profile.counts}};
  out << result.dump() << '\n';
  return kOk;
}

int cmd_dist(const Flags& f, std::ostream& out) {
  const std::string mode = resolve_mode(f);
  const Json config{{"subcommand", "dist"}, {"r", f.r}, {"n", f.n},
                    {"mode", mode}};
  if (mode == "exact") {
    out << with_config(config, strahler::to_json(strahler::dist_S(f.r, f.n)))
        << '\n';
    return kOk;
  }
  const auto p = strahler::dist_S_float(f.r, f.n);
  Json support = Json::array();
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] != 0) support.push_back({{"value", j}, {"p", p[j]}});
  }
  out << Json{{"config", config}, {"support", support}}.dump() << '\n';
  return kOk;
}

int cmd_ratio_dist(const Flags& f, std::ostream& out) {
  const std::string mode = resolve_mode(f);
  const Json config{{"subcommand", "ratio-dist"}, {"q", f.q}, {"r", f.r},
                    {"n", f.n}, {"mode", mode}};
  if (mode == "exact") {
    out << with_config(config,
                       strahler::to_json(strahler::dist_ratio(f.q, f.r, f.n)))
        << '\n';
    return kOk;
  }
  Json support = Json::array();
  for (const auto& [v, p] : strahler::dist_ratio_float(f.q, f.r, f.n)) {
    support.push_back({{"num", v.num}, {"den", v.den}, {"p", p}});
  }
  out << Json{{"config", config}, {"support", support}}.dump() << '\n';
  return kOk;
}

int cmd_moments(const Flags& f, std::ostream& out) {
  const std::string mode = resolve_mode(f);
  const auto kind = strahler::parse_moment_kind(f.moment_kind);
  const int last = f.n_max > 0 ? f.n_max : f.n;
  if (last < f.n) throw UsageError("--n-max must be at least --n");
  header(out, Json{{"subcommand", "moments"}, {"kind", f.moment_kind},
                   {"k", f.k}, {"l", f.l}, {"n", f.n}, {"n_max", last},
                   {"mode", mode}});
  const std::string prefix = strahler::to_string(kind) + "," +
                             std::to_string(f.k) + "," + std::to_string(f.l) +
                             ",";
  if (mode == "exact") {
    out << "kind,k,l,n,numerator,denominator\n";
    strahler::MomentTable table;
    for (int n = f.n; n <= last; ++n) {
      const Rational v = table.get(kind, f.k, f.l, n);
      out << prefix << n << ',' << v.get_num().get_str() << ','
          << v.get_den().get_str() << '\n';
    }
  } else {
    out << "kind,k,l,n,value\n";
    out.precision(17);
    for (int n = f.n; n <= last; ++n) {
      out << prefix << n << ','
          << strahler::moment_float(kind, f.k, f.l, n) << '\n';
    }
  }
  return kOk;
}

int cmd_mgf(const Flags& f, std::ostream& out) {
  const std::string mode = resolve_mode(f);
  if (f.x_den == 0) throw UsageError("--x-den must be nonzero");
  const Rational x = strahler::make_rational(f.x_num, f.x_den);
  const Json config{{"subcommand", "mgf"}, {"n", f.n}, {"x_num", f.x_num},
                    {"x_den", f.x_den}, {"mode", mode}};
  if (mode == "exact") {
    const Rational hyp = strahler::mgf_s2_hypergeometric(f.n, x);
    const Rational direct = strahler::mgf_s2_direct(f.n, x);
    Json result{{"config", config},
                {"hypergeometric", rational_json(hyp)},
                {"direct", rational_json(direct)},
                {"residual", rational_json(hyp - direct)}};
    if (f.n >= 3 && x > 0) {
      result["derivative_residual"] =
          rational_json(strahler::check_derivative_identity(f.n, x));
    }
    out << result.dump() << '\n';
    const bool ok = hyp == direct && (!result.contains("derivative_residual") ||
                                      strahler::check_derivative_identity(
                                          f.n, x) == 0);
    return ok ? kOk : kCheckFailed;
  }
  const double xd = x.get_d();
  const double hyp = strahler::mgf_prefactor(f.n).get_d() * xd *
                     strahler::hyp2f1_terminating(strahler::mgf_params(f.n), xd);
  const double direct = strahler::mgf_s2_direct(f.n, x).get_d();
  out << Json{{"config", config},
              {"hypergeometric", hyp},
              {"direct", direct},
              {"residual", hyp - direct}}
             .dump()
      << '\n';
  return kOk;
}

strahler::CltKind parse_clt_kind(const Flags& f) {
  if (f.clt_kind == "count") return strahler::CltKind::count(f.r);
  if (f.clt_kind == "ratio") return strahler::CltKind::ratio(f.q, f.r);
  throw UsageError("--kind must be ratio or count");
}

int cmd_clt(const Flags& f, std::ostream& out) {
  const auto kind = parse_clt_kind(f);
  const std::uint64_t seed = resolve_seed(f);
  const unsigned workers = resolve_workers(f);
  if (f.n < 2) throw strahler::DomainError("n must be at least 2");
  if (f.format != "csv" && f.format != "json") {
    throw UsageError("--out must be csv or json");
  }
  const auto s = strahler::run_experiment(
      {kind, static_cast<std::size_t>(f.n), f.samples, seed, workers,
       f.hist_bins});
  const Json config{{"subcommand", "clt"}, {"kind", kind.type_name()},
                    {"q", kind.q}, {"r", kind.r}, {"n", f.n},
                    {"samples", f.samples}, {"seed", seed},
                    {"workers", workers}, {"hist_bins", f.hist_bins}};
  if (f.format == "json") {
    Json result{{"config", config},
                {"kind", kind.type_name()},
                {"q", kind.q},
                {"r", kind.r},
                {"n", s.n},
                {"samples", s.count},
                {"mean", s.mean},
                {"variance", s.variance},
                {"predicted_variance", rational_json(s.predicted_variance)},
                {"m3", s.m3},
                {"m4", s.m4},
                {"ks", s.ks_distance},
                {"zero_freq", s.zero_ratio_frequency}};
    if (s.histogram) {
      result["histogram"] = {{"edges", s.histogram->edges},
                             {"counts", s.histogram->counts}};
    }
    out << result.dump() << '\n';
    return kOk;
  }
  header(out, config);
  out.precision(17);
  out << "kind,q,r,n,samples,mean,variance,predicted_variance,m3,m4,ks,"
         "zero_freq\n";
  out << kind.type_name() << ',' << kind.q << ',' << kind.r << ',' << s.n
      << ',' << s.count << ',' << s.mean << ',' << s.variance << ','
      << rational_csv(s.predicted_variance) << ',' << s.m3 << ',' << s.m4
      << ',' << s.ks_distance << ',' << s.zero_ratio_frequency << '\n';
  if (s.histogram) {
    out << "# histogram\nbin,lower,upper,count\n";
    for (std::size_t b = 0; b < s.histogram->counts.size(); ++b) {
      out << b << ',' << s.histogram->edges[b] << ','
          << s.histogram->edges[b + 1] << ',' << s.histogram->counts[b]
          << '\n';
    }
  }
  return kOk;
}

int cmd_horton(const Flags& f, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(f);
  const unsigned workers = resolve_workers(f);
  const auto res =
      strahler::horton_check(f.orders, static_cast<std::size_t>(f.n),
                             f.samples, seed, workers, f.tolerance);
  header(out, Json{{"subcommand", "horton"}, {"orders", f.orders}, {"n", f.n},
                   {"samples", f.samples}, {"seed", seed},
                   {"workers", workers}, {"tolerance", f.tolerance}});
  out << "r,n,samples,exceedances,frequency\n";
  for (const auto& h : res) {
    out << h.r << ',' << f.n << ',' << h.samples << ',' << h.exceedances
        << ',' << h.frequency << '\n';
  }
  return kOk;
}

int cmd_verify_all(const Flags& f, std::ostream& out) {
  strahler::AcceptanceOptions opts;
  opts.skip_mc = f.skip_mc;
  if (f.seed) opts.seed = *f.seed;
  opts.workers = resolve_workers(f);
  header(out, Json{{"subcommand", "verify-all"}, {"skip_mc", opts.skip_mc},
                   {"seed", opts.seed}, {"workers", opts.workers}});
  const auto report = strahler::run_acceptance(opts, out);
  return report.all_passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horton-Strahler branch statistics of uniform random binary "
               "trees"};
  app.require_subcommand(1);
  Flags f;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output,-o", f.output, "Write to this file")
        ->type_name("FILE");
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", f.mode,
                    "exact or float (default: STRAHLER_MODE, else exact)");
  };
  auto add_random = [&](CLI::App* sub) {
    sub->add_option("--seed", f.seed, "RNG seed");
    sub->add_flag("--entropy", f.entropy, "Seed from the system entropy source");
    sub->add_option("--workers", f.workers, "Worker threads (0: all cores)");
  };

  auto* enumerate = app.add_subcommand("enumerate", "List every tree of magnitude n");
  enumerate->add_option("--n", f.n, "Magnitude")->required();
  enumerate->add_flag("--count-only", f.count_only, "Print only the count");
  enumerate->add_option("--cap", f.cap, "Largest n to enumerate");

  auto* sample = app.add_subcommand("sample", "Draw uniform random trees");
  sample->add_option("--n", f.n, "Magnitude")->required();
  sample->add_option("--count", f.count, "Number of trees");
  sample->add_option("--seed", f.seed, "RNG seed");
  sample->add_flag("--entropy", f.entropy, "Seed from the system entropy source");

  auto* order = app.add_subcommand("strahler", "Branch counts of one tree");
  order->add_option("--tree", f.tree, "Parenthesized tree (default: stdin)");

  auto* dist = app.add_subcommand("dist", "Law of S_r at magnitude n");
  dist->add_option("--r", f.r, "Order")->required();
  dist->add_option("--n", f.n, "Magnitude")->required();
  add_mode(dist);

  auto* ratio = app.add_subcommand("ratio-dist", "Law of S_{q+r}/S_q");
  ratio->add_option("--q", f.q, "Lower order")->required();
  ratio->add_option("--r", f.r, "Order gap")->required();
  ratio->add_option("--n", f.n, "Magnitude")->required();
  add_mode(ratio);

  auto* moments = app.add_subcommand("moments", "Moments of S_2");
  moments->add_option("--kind", f.moment_kind, "raw, central, negative or mixed");
  moments->add_option("--k", f.k, "Moment order");
  moments->add_option("--l", f.l, "Mixed power (mixed only)");
  moments->add_option("--n", f.n, "Magnitude")->required();
  moments->add_option("--n-max", f.n_max, "Emit rows for n through n-max");
  add_mode(moments);

  auto* mgf = app.add_subcommand("mgf", "MGF of S_2 at x = e^t, two ways");
  mgf->add_option("--n", f.n, "Magnitude")->required();
  mgf->add_option("--x-num", f.x_num, "Numerator of x");
  mgf->add_option("--x-den", f.x_den, "Denominator of x");
  add_mode(mgf);

  auto* clt = app.add_subcommand("clt", "Monte Carlo CLT experiment");
  clt->add_option("--kind", f.clt_kind, "ratio or count");
  clt->add_option("--q", f.q, "Lower order (ratio)");
  clt->add_option("--r", f.r, "Order gap");
  clt->add_option("--n", f.n, "Magnitude")->required();
  clt->add_option("--samples", f.samples, "Number of trees")->required();
  clt->add_option("--out", f.format, "csv or json");
  clt->add_option("--hist-bins", f.hist_bins, "Histogram bins (0: none)");
  add_random(clt);

  auto* horton = app.add_subcommand("horton", "Horton's law exceedance rates");
  horton->add_option("--orders", f.orders, "Orders r")->delimiter(',');
  horton->add_option("--n", f.n, "Magnitude")->required();
  horton->add_option("--samples", f.samples, "Number of trees")->required();
  horton->add_option("--tolerance", f.tolerance, "Deviation from 1/4");
  add_random(horton);

  auto* verify = app.add_subcommand("verify-all", "Run the acceptance suite");
  verify->add_flag("--skip-mc", f.skip_mc, "Skip the Monte Carlo criteria");
  verify->add_option("--seed", f.seed, "Seed for the Monte Carlo criteria");
  verify->add_option("--workers", f.workers, "Worker threads (0: all cores)");

  for (auto* sub : {enumerate, sample, order, dist, ratio, moments, mgf, clt,
                    horton, verify}) {
    add_output(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* out = &std::cout;
  if (!f.output.empty()) {
    file = std::make_unique<std::ofstream>(f.output);
    if (!*file) {
      std::cerr << "error: cannot open " << f.output << '\n';
      return kUsage;
    }
    out = file.get();
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "enumerate") return cmd_enumerate(f, *out);
    if (name == "sample") return cmd_sample(f, *out);
    if (name == "strahler") return cmd_strahler(f, *out);
    if (name == "dist") return cmd_dist(f, *out);
    if (name == "ratio-dist") return cmd_ratio_dist(f, *out);
    if (name == "moments") return cmd_moments(f, *out);
    if (name == "mgf") return cmd_mgf(f, *out);
    if (name == "clt") return cmd_clt(f, *out);
    if (name == "horton") return cmd_horton(f, *out);
    if (name == "verify-all") return cmd_verify_all(f, *out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const strahler::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const strahler::StructuralError& e) {
    std::cerr << "malformed tree: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
