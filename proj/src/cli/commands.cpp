#include "cifc/cli/commands.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "cifc/error.hpp"
#include "cifc/gaussian/bounds.hpp"
#include "cifc/gaussian/dpc.hpp"
#include "cifc/gaussian/optimize.hpp"
#include "cifc/gdof/gdof.hpp"
#include "cifc/ldc/bounds.hpp"
#include "cifc/ldc/dominance.hpp"
#include "cifc/ldc/gains.hpp"
#include "cifc/ldc/scheme.hpp"
#include "cifc/ldc/verify.hpp"

namespace cifc::cli {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

void row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

bool is_symmetric(const ldc::LdcGains& g, int& nd, int& ni) {
  nd = g(0, 0);
  ni = g.k() > 1 ? g(0, 1) : 0;
  for (std::size_t l = 0; l < g.k(); ++l) {
    for (std::size_t i = 0; i < g.k(); ++i) {
      if (g(l, i) != (l == i ? nd : ni)) return false;
    }
  }
  return true;
}

std::size_t sum_rates(const ldc::LdcScheme& s) {
  std::size_t t = 0;
  for (std::size_t r : s.rates) t += r;
  return t;
}

}  // namespace

int cmd_ldc_verify(const SweepConfig& cfg, std::ostream& out, std::ostream& log) {
  row(out, {"nd", "ni", "k", "sum_rate", "outer_bound", "verified", "mode", "construction"});
  ldc::VerifyOptions opts;
  opts.mode = cfg.exhaustive ? ldc::VerifyMode::Exhaustive : ldc::VerifyMode::Auto;
  opts.samples = cfg.verify_samples;
  opts.seed = cfg.seed;
  int status = kExitOk;

  auto emit = [&](const std::string& nd, const std::string& ni, std::size_t k, const ldc::LdcScheme& s,
                  std::int64_t outer) {
    const ldc::VerificationReport rep = ldc::verify_scheme(s, opts);
    const auto total = static_cast<std::int64_t>(sum_rates(s));
    row(out, {nd, ni, num(k), num(total), num(outer), rep.passed ? "true" : "false",
              rep.mode == ldc::VerifyMode::Exhaustive ? "exhaustive" : "sampled", s.construction});
    if (!rep.passed || total < outer) {
      status = kExitViolation;
      log << "ldc-verify: gains " << s.gains.to_string() << " failed: "
          << (rep.passed ? "sum rate below the outer bound" : rep.failure) << '\n';
    }
  };

  if (!cfg.gains.empty()) {
    std::size_t k = 0;
    auto entries = load_gains_file(cfg.gains, k);
    const ldc::LdcGains g(k, std::move(entries));
    int nd = 0, ni = 0;
    const bool sym = is_symmetric(g, nd, ni);
    const std::string snd = sym ? num(nd) : "", sni = sym ? num(ni) : "";
    if (k == 3) {
      emit(snd, sni, k, ldc::build_generic3_scheme(g, cfg.seed), ldc::ldc3_sum_outer(g).value);
    } else if (sym) {
      emit(snd, sni, k, ldc::build_sym_scheme(nd, ni, k), ldc::ldc_k_sym_sum_capacity(nd, ni, k).value);
    } else {
      throw ConfigError(cfg.gains + ": non-symmetric gains are supported for K = 3 only");
    }
    return status;
  }
  for (std::size_t k : cfg.k) {
    for (int nd : cfg.nd) {
      for (int ni : cfg.ni) {
        emit(num(nd), num(ni), k, ldc::build_sym_scheme(nd, ni, k), ldc::ldc_k_sym_sum_capacity(nd, ni, k).value);
      }
    }
  }
  return status;
}

int cmd_ldc_outer(const SweepConfig& cfg, std::ostream& out, std::ostream& log) {
  row(out, {"n11", "n12", "n13", "n21", "n22", "n23", "n31", "n32", "n33", "outer", "term1", "term2", "term3",
            "case_label", "dominance_checked"});
  std::vector<ldc::LdcGains> channels;
  if (!cfg.gains.empty()) {
    std::size_t k = 0;
    auto v = load_gains_file(cfg.gains, k);
    if (k != 3) throw ConfigError(cfg.gains + ": ldc-outer needs a 3 x 3 gain block");
    channels.emplace_back(3, std::move(v));
  } else if (cfg.samples > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> d(0, cfg.max_gain);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      std::vector<int> v(9);
      for (int& x : v) x = d(rng);
      channels.emplace_back(3, std::move(v));
    }
  } else {
    for (int nd : cfg.nd) {
      for (int ni : cfg.ni) channels.push_back(ldc::LdcGains::symmetric(nd, ni, 3));
    }
  }
  int status = kExitOk;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const auto& g = channels[i];
    const ldc::SumRateBound b = ldc::ldc3_sum_outer(g);
    std::string dom = "skipped";
    if (g.m() <= 3 && cfg.trials > 0) {
      const ldc::DominanceReport rep = ldc::outer_bound_dominance_check(g, cfg.trials, cfg.seed + i);
      dom = rep.passed ? "pass" : "fail";
      if (!rep.passed) {
        status = kExitViolation;
        log << "ldc-outer: gains " << g.to_string() << " exceed the closed form: " << rep.max_observed << " > "
            << rep.closed_form << '\n';
      }
    }
    std::vector<std::string> f;
    for (int x : g.entries()) f.push_back(num(x));
    f.push_back(num(b.value));
    for (const auto& t : b.terms) f.push_back(num(t.value));
    f.push_back(b.third_user_active ? "r3>0" : "r3=0");
    f.push_back(dom);
    row(out, f);
  }
  return status;
}

int cmd_gaussian_gap(const SweepConfig& cfg, std::ostream& out, std::ostream& log) {
  using namespace gaussian;
  row(out, {"k", "snr_db", "alpha", "outer_analytic", "inner_closed", "gap_analytic_observed", "gap_bound",
            "inner_opt", "outer_opt", "gap_numeric", "mult_ratio", "gap_analytic_chain",
            "outer_opt_independent_noise"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  int status = kExitOk;
  std::uint64_t index = 0;
  for (std::size_t k : cfg.k) {
    for (double db : cfg.snr_db) {
      for (double a : cfg.alpha) {
        const auto ch = GaussianSymChannel::from_snr_db(db, a, k);
        const double outer = outer_sum(ch);
        const double inner = dpc_rates(ch, closed_form_params(ch)).sum();
        const double bound = analytic_gap_bound(k);
        const double bf = beamforming_inner(ch);
        const double ratio = bf > 0 ? outer / bf : nan;
        double inner_opt = nan, outer_opt = nan, indep = nan;
        if (cfg.budget > 0) {
          inner_opt = optimize_inner(ch, cfg.budget, cfg.seed + index).sum_rate;
          if (k == 3) {
            const OuterOptResult o = optimize_outer(ch, cfg.budget, cfg.seed + index);
            outer_opt = o.value;
            indep = o.independent_noise_value;
          }
        }
        const double gap = outer - inner;
        row(out, {num(k), num(db), num(a), num(outer), num(inner), num(gap), num(bound), num(inner_opt),
                  num(outer_opt), num(outer_opt - inner_opt), num(ratio), num(outer - chain_inner_lower(ch)),
                  num(indep)});
        std::string bad;
        if (gap > bound + kTol.gap_slack) bad = "additive gap above the analytic bound";
        if (inner > outer + kTol.compare) bad = "closed-form inner above the outer bound";
        if (!std::isnan(ratio) && ratio > static_cast<double>(k) + kTol.compare) bad = "multiplicative ratio above K";
        if (!std::isnan(inner_opt) && inner_opt > outer + kTol.compare) bad = "optimized inner above the outer bound";
        if (!std::isnan(outer_opt) && inner_opt > outer_opt + kTol.compare) {
          bad = "optimized inner above the optimized outer bound";
        }
        if (!bad.empty()) {
          status = kExitViolation;
          log << "gaussian-gap: k=" << k << " snr_db=" << db << " alpha=" << a << ": " << bad << '\n';
        }
        ++index;
      }
    }
  }
  return status;
}

int cmd_gdof_curves(const SweepConfig& cfg, std::ostream& out, std::ostream& log) {
  const bool empirical = !cfg.snr_db.empty();
  if (empirical && cfg.snr_db.size() < 2) throw ConfigError("snr-db: empirical slopes need at least two points");
  std::vector<std::string> head = {"model", "k", "alpha", "d", "d_normalized", "d_at_alpha1", "d_at_alpha1_normalized"};
  if (empirical) {
    head.push_back("empirical_inner");
    head.push_back("empirical_outer");
  }
  row(out, head);
  if (cfg.alpha.empty()) return kExitOk;
  // values[k][model][alpha index]
  std::map<std::size_t, std::map<gdof::Model, std::vector<double>>> values;
  for (gdof::Model m : cfg.models) {
    for (std::size_t k : cfg.k) {
      const gdof::GdofCurve c = gdof::curve_sweep(m, k, cfg.alpha, false);
      const double kk = static_cast<double>(k);
      for (const auto& s : c.samples) {
        values[k][m].push_back(s.d);
        const bool disc = cfg.discontinuity && s.d_at_alpha1.has_value();
        std::vector<std::string> f = {std::string(gdof::model_name(m)), num(k), num(s.alpha), num(s.d),
                                      num(s.d / kk), disc ? num(*s.d_at_alpha1) : "",
                                      disc ? num(*s.d_at_alpha1 / kk) : ""};
        if (empirical) {
          if (m == gdof::Model::Cms && std::abs(s.alpha - 1.0) >= 0.1) {
            const gdof::SlopeEstimate e = gdof::empirical_gdof(k, s.alpha, cfg.snr_db);
            f.push_back(num(e.inner));
            f.push_back(num(e.outer));
          } else {
            f.push_back("");
            f.push_back("");
          }
        }
        row(out, f);
      }
    }
  }
  int status = kExitOk;
  for (auto& [k, per] : values) {
    if (!per.count(gdof::Model::Cms) || !per.count(gdof::Model::Ifc) || !per.count(gdof::Model::Bc)) continue;
    for (std::size_t i = 0; i < cfg.alpha.size(); ++i) {
      if (cfg.alpha[i] == 1.0 || cfg.alpha[i] == 0.0) continue;
      const double cms = per[gdof::Model::Cms][i], ifc = per[gdof::Model::Ifc][i], bc = per[gdof::Model::Bc][i];
      if (ifc > cms || cms > bc) {
        status = kExitViolation;
        log << "gdof-curves: ordering IFC <= CMS <= BC fails at k=" << k << " alpha=" << cfg.alpha[i] << '\n';
      }
    }
  }
  return status;
}

int run(const std::vector<std::string>& args, std::ostream& log) {
  CLI::App app{"Bounds, schemes and gDoF curves for the K-user cognitive interference channel"};
  app.require_subcommand(1);
  struct Binding {
    std::string key;
    CLI::Option* opt;
    std::unique_ptr<std::string> text;
    std::unique_ptr<bool> flag;
  };
  std::map<std::string, std::vector<Binding>> bindings;
  std::map<std::string, std::string> config_paths;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ldc-verify", "build and verify linear deterministic schemes"},
      {"ldc-outer", "3-user linear deterministic outer bound with the dominance check"},
      {"gaussian-gap", "Gaussian inner and outer bounds with additive and multiplicative gaps"},
      {"gdof-curves", "gDoF curves of the CMS, IFC and BC models"}};
  const std::vector<std::pair<std::string, std::string>> text_opts = {
      {"out", "output CSV path, '-' for stdout"},
      {"seed", "seed for every randomized step"},
      {"budget", "evaluation budget of the numerical optimizers (0 skips them)"},
      {"k", "user counts, e.g. 3 or 2:6"},
      {"alpha", "alpha grid start:stop:step"},
      {"snr-db", "SNR values in dB, list or ranges"},
      {"nd", "direct gains, list or ranges"},
      {"ni", "interfering gains, list or ranges"},
      {"gains", "file with a K x K block of integer gains"},
      {"models", "comma-separated subset of cms,ifc,bc"},
      {"samples", "number of random 3-user channels"},
      {"max-gain", "largest random gain"},
      {"trials", "random distributions per channel in the dominance check"},
      {"verify-samples", "tuples checked in sampled verification"}};
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_paths[name], "key=value file; flags override it");
    auto& list = bindings[name];
    for (const auto& [key, help] : text_opts) {
      auto text = std::make_unique<std::string>();
      CLI::Option* o = sub->add_option("--" + key, *text, help);
      list.push_back({key, o, std::move(text), nullptr});
    }
    for (const char* key : {"exhaustive", "discontinuity"}) {
      auto flag = std::make_unique<bool>(false);
      CLI::Option* o = sub->add_flag(std::string("--") + key, *flag,
                                     std::string(key) == "exhaustive" ? "force exhaustive verification"
                                                                      : "report the value at alpha = 1");
      list.push_back({key, o, nullptr, std::move(flag)});
    }
  }

  std::vector<std::string> argv_store = {"cifc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, log, log);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RawConfig raw;
    if (!config_paths[command].empty()) raw = load_key_values(config_paths[command]);
    for (const auto& b : bindings[command]) {
      if (b.opt->count() == 0) continue;
      raw[b.key] = {b.text ? *b.text : (*b.flag ? "true" : "false"), "--" + b.key};
    }
    const SweepConfig cfg = build_config(command, raw);

    std::ostringstream csv;
    csv.precision(17);
    int status = kExitOk;
    if (command == "ldc-verify") status = cmd_ldc_verify(cfg, csv, log);
    if (command == "ldc-outer") status = cmd_ldc_outer(cfg, csv, log);
    if (command == "gaussian-gap") status = cmd_gaussian_gap(cfg, csv, log);
    if (command == "gdof-curves") status = cmd_gdof_curves(cfg, csv, log);

    if (cfg.out == "-") {
      std::cout << csv.str() << std::flush;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
      f << csv.str();
      if (!f) throw ConfigError("write to '" + cfg.out + "' failed");
    }
    return status;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    log << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitViolation;
  }
}

}  // namespace cifc::cli
