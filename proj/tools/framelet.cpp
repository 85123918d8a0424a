// framelet: design, inspect and exercise framelet masks from the shell.
//
// Exit status: 0 success, 2 inadmissible input, 3 budget exhausted,
// 4 I/O or parse failure, 1 anything else (including a failed design check).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "framelet/cascade.hpp"
#include "framelet/design.hpp"
#include "framelet/error.hpp"
#include "framelet/frame_verify.hpp"
#include "framelet/mask_analysis.hpp"
#include "framelet/serialize.hpp"
#include "framelet/target.hpp"
#include "framelet/uep_complete.hpp"

namespace fs = std::filesystem;
using namespace framelet;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInadmissible = 2, kBudget = 3, kIo = 4 };

struct Options {
  double epsilon = 0.1;
  std::string target;
  std::string coeffs;
  std::string samples;
  std::optional<int> n;
  int jmax = 65536;
  std::optional<int> grid;
  std::uint64_t seed = 20240601;
  bool json = false;
  std::string out_dir = ".";
  std::string input;

  int level = 10;
  int trials = 4;
  int length = 1024;
  int levels = 3;
  int j_min = -8;
  int j_max = 8;
  std::optional<long long> k_min;
  std::optional<long long> k_max;
};

fs::path output_path(const Options& o, const std::string& name) {
  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + o.out_dir + "': " + ec.message());
  return fs::path(o.out_dir) / name;
}

void emit(const fs::path& p, const std::string& text) {
  write_file(p.string(), text);
  std::cerr << "wrote " << p.string() << "\n";
}

std::vector<double> parse_coeffs(const std::string& s) {
  std::vector<double> a;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, end - pos);
    try {
      std::size_t used = 0;
      a.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("--coeffs: entry " + std::to_string(a.size()) + " ('" + tok + "') is not a number");
    }
    pos = end + 1;
  }
  return a;
}

TargetFunction make_target(const Options& o) {
  const int sources = !o.target.empty() + !o.coeffs.empty() + !o.samples.empty();
  if (sources != 1) throw std::invalid_argument("give exactly one of --target, --coeffs, --samples");
  if (!o.target.empty()) return builtin_target(o.target);
  if (!o.coeffs.empty()) return cosine_series_target(parse_coeffs(o.coeffs));
  return samples_target(samples_from_csv(read_file(o.samples)));
}

MaskBundle load_bundle(const Options& o) { return bundle_from_json(read_file(o.input)); }

int cmd_design(const Options& o) {
  DesignRequest req{make_target(o), o.epsilon, o.n, o.jmax, o.grid};
  const auto res = design_mask(req);
  const auto& c = res.certificate;

  MaskBundle m0_only;
  m0_only.m0 = res.mask;
  m0_only.provenance = "design: " + req.target.description() + ", epsilon " + json(o.epsilon).dump();
  emit(output_path(o, "mask.json"), to_json(m0_only));
  emit(output_path(o, "filter.csv"), to_csv(res.filter));
  emit(output_path(o, "filter.json"), to_json(res.filter));
  emit(output_path(o, "certificate.json"), to_json(c));
  emit(output_path(o, "stability.json"), to_json(res.stability));

  const bool ok = c.err_f_h < o.epsilon && res.stability.verdict == Verdict::stable;
  if (o.json) {
    json j = json::parse(to_json(c));
    j["verdict"] = to_string(res.stability.verdict);
    j["subqmf_certified_sup"] = res.subqmf.certified_sup;
    j["success"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("target          %s\n", req.target.description().c_str());
    std::printf("n, j            %d, %d\n", c.n, c.j);
    std::printf("stage errors    %.3e + %.3e + %.3e + %.3e = %.3e\n", c.err_f_f1, c.err_f1_f2, c.err_f2_f3,
                c.err_f3_h, c.stage_sum());
    std::printf("|f - H_j| grid  %.6e (epsilon %g)\n", c.err_f_h, o.epsilon);
    std::printf("sub-QMF sup     %.15f (certified %.15f)\n", res.subqmf.max, res.subqmf.certified_sup);
    std::printf("stability       %s\n", to_string(res.stability.verdict).c_str());
  }
  if (!ok) {
    std::cerr << "design check failed: error " << c.err_f_h << ", verdict " << to_string(res.stability.verdict)
              << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto bundle = load_bundle(o);
  const cplx at0 = bundle.m0(0.0);
  const auto rep = stability_verdict(bundle.m0);
  if (o.json) {
    json j = json::parse(to_json(rep));
    j["m0_at_0"] = {at0.real(), at0.imag()};
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::printf("m0(0)           %.17g%+.3gi\n", at0.real(), at0.imag());
  std::printf("sub-QMF margin  %.6e\n", rep.subqmf_margin);
  std::printf("unit roots      %zu\n", rep.roots.size());
  for (const auto& r : rep.roots) {
    std::printf("  %.12f  mult %d%s\n", r.angle, r.multiplicity, r.ill_conditioned ? "  (ill-conditioned)" : "");
  }
  for (const auto& p : rep.symmetric_pairs) std::printf("symmetric pair  {%.12f, %.12f}\n", p.first, p.second);
  for (const auto& cyc : rep.cycles) {
    std::printf("cycle%s        {", cyc.trivial ? " (trivial)" : "");
    for (std::size_t i = 0; i < cyc.betas.size(); ++i) std::printf("%s%.12f", i ? ", " : "", cyc.betas[i]);
    std::printf("}\n");
  }
  std::printf("verdict         %s\n", to_string(rep.verdict).c_str());
  return kOk;
}

int cmd_complete(const Options& o) {
  const auto bundle = wavelet_masks(load_bundle(o).m0);
  const auto res = verify_uep(bundle);
  emit(output_path(o, "bundle.json"), to_json(bundle));
  if (o.json) {
    json j = json::parse(to_json(res));
    j["q"] = bundle.q();
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("q               %d\n", bundle.q());
    std::printf("UEP row 1       %.3e (coeff %.3e)\n", res.row1_grid, res.row1_coeff);
    std::printf("UEP row 2       %.3e (coeff %.3e)\n", res.row2_grid, res.row2_coeff);
  }
  return kOk;
}

int cmd_cascade(const Options& o) {
  const auto bundle = load_bundle(o);
  const auto casc = cascade_time(bundle.m0, o.level);
  const double resid = refinement_residual(casc.phi, bundle.m0);
  emit(output_path(o, "phi.csv"), to_csv(casc.phi));
  emit(output_path(o, "phi.json"), to_json(casc.phi));
  for (std::size_t r = 0; r < bundle.wavelet_masks.size(); ++r) {
    const auto psi = wavelet_time(casc.phi, bundle.wavelet_masks[r]);
    emit(output_path(o, "psi" + std::to_string(r + 1) + ".csv"), to_csv(psi));
  }
  if (o.json) {
    std::cout << json{{"iterations", casc.iterations},
                      {"converged", casc.converged},
                      {"refinement_residual", resid},
                      {"level", o.level}}
                     .dump(2)
              << "\n";
  } else {
    std::printf("support         [%d, %d] at level %d\n", casc.phi.lo, casc.phi.hi, o.level);
    std::printf("iterations      %d (%s)\n", casc.iterations, casc.converged ? "converged" : "not converged");
    std::printf("refinement res  %.3e\n", resid);
  }
  return kOk;
}

int cmd_prtest(const Options& o) {
  const auto rep = pr_error(load_bundle(o), o.trials, o.length, o.levels, o.seed);
  if (o.json) {
    std::cout << to_json(rep) << "\n";
  } else {
    std::printf("max PR error    %.3e (length %d, levels %d, trials %d, seed %llu)\n", rep.max_error, o.length,
                o.levels, o.trials, static_cast<unsigned long long>(o.seed));
    std::printf("UEP residual    %.3e%s\n", rep.uep_residual, rep.bundle_suspect ? "  (bundle suspect)" : "");
  }
  return kOk;
}

// Smooth bump exp(1 − 1/(1 − x²)) on (−1, 1).
double bump(double x) { return std::fabs(x) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0; }

int cmd_parseval(const Options& o) {
  const auto bundle = load_bundle(o);
  const auto g = sample_dyadic(bump, o.level, -1, 1);
  std::optional<std::pair<long long, long long>> k_range;
  if (o.k_min || o.k_max) {
    k_range = std::pair{o.k_min.value_or(std::numeric_limits<long long>::min() / 4),
                        o.k_max.value_or(std::numeric_limits<long long>::max() / 4)};
  }
  const auto sum = parseval_partial(g, bundle, o.j_min, o.j_max, k_range);
  if (o.json) {
    std::cout << json{{"partial", sum.partial}, {"norm2", sum.norm2}, {"j_min", o.j_min}, {"j_max", o.j_max}}.dump(2)
              << "\n";
  } else {
    std::printf("partial sum     %.12f\n", sum.partial);
    std::printf("|g|^2           %.12f\n", sum.norm2);
    std::printf("ratio           %.6f\n", sum.norm2 > 0 ? sum.partial / sum.norm2 : 0.0);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Framelet mask design and verification"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Machine-readable report on stdout");
    sub->add_option("--out-dir", o.out_dir, "Directory for output files");
  };
  auto add_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("mask", o.input, what)->required();
  };

  auto* design = app.add_subcommand("design", "Design a refinement mask from a target");
  design->add_option("--epsilon", o.epsilon, "Approximation budget")->check(CLI::PositiveNumber);
  design->add_option("--target", o.target, "Builtin target")->check(CLI::IsMember(builtin_target_names()));
  design->add_option("--coeffs", o.coeffs, "Cosine-series coefficients a0,a1,...");
  design->add_option("--samples", o.samples, "CSV of angle,value samples");
  design->add_option("--n", o.n, "Sampling parameter (2n nodes)")->check(CLI::PositiveNumber);
  design->add_option("--jmax", o.jmax, "Largest trigonometric degree parameter j")->check(CLI::PositiveNumber);
  design->add_option("--grid", o.grid, "Verification grid size")->check(CLI::Range(16, 1 << 24));
  add_common(design);

  auto* verify = app.add_subcommand("verify", "Sub-QMF margin and stability of a mask");
  add_input(verify, "Mask or bundle JSON");
  add_common(verify);

  auto* complete = app.add_subcommand("complete", "Complete a mask to a Parseval framelet bundle");
  add_input(complete, "Mask JSON");
  add_common(complete);

  auto* cascade = app.add_subcommand("cascade", "Refinable function and wavelets on a dyadic grid");
  add_input(cascade, "Bundle JSON");
  cascade->add_option("--level", o.level, "Dyadic level")->check(CLI::Range(0, 24));
  add_common(cascade);

  auto* prtest = app.add_subcommand("pr-test", "Perfect reconstruction on random signals");
  add_input(prtest, "Bundle JSON");
  prtest->add_option("--seed", o.seed, "RNG seed");
  prtest->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  prtest->add_option("--length", o.length)->check(CLI::PositiveNumber);
  prtest->add_option("--levels", o.levels)->check(CLI::NonNegativeNumber);
  add_common(prtest);

  auto* parseval = app.add_subcommand("parseval", "Truncated frame sum for a smooth bump");
  add_input(parseval, "Bundle JSON");
  parseval->add_option("--level", o.level, "Dyadic level of signal and generators")->check(CLI::Range(0, 16));
  parseval->add_option("--jmin", o.j_min);
  parseval->add_option("--jmax", o.j_max);
  parseval->add_option("--kmin", o.k_min);
  parseval->add_option("--kmax", o.k_max);
  add_common(parseval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*design) return cmd_design(o);
    if (*verify) return cmd_verify(o);
    if (*complete) return cmd_complete(o);
    if (*cascade) return cmd_cascade(o);
    if (*prtest) return cmd_prtest(o);
    if (*parseval) return cmd_parseval(o);
  } catch (const AdmissibilityError& e) {
    std::cerr << "inadmissible: " << e.what() << "\n";
    return kInadmissible;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << " (best error " << e.best_error() << ")\n";
    return kBudget;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}
