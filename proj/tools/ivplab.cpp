#include <CLI11.hpp>

#include <iostream>

#include "ivp/acceptance.hpp"
#include "ivp/lax.hpp"
#include "ivp/poly_io.hpp"
#include "ivp/report.hpp"
#include "ivp/rng.hpp"
#include "ivp/varieties.hpp"

using namespace ivp;

namespace {

struct CommonOpts {
  std::string map_desc = "lv3(a=0)";
  long precision = 256;
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_map = true) {
  if (with_map) cmd->add_option("--map", c.map_desc, "map descriptor, e.g. lv3(a=1/2), lv(d=5), pv, toda(N=3)");
  cmd->add_option("--precision", c.precision, "working precision in bits");
  cmd->add_option("--seed", c.seed, "random seed echoed into the report");
  cmd->add_option("-o,--output", c.output, "write the report to this file (default stdout)");
  cmd->add_option("--format", c.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

nlohmann::json config_echo(const CommonOpts& c) {
  nlohmann::json j;
  j["map"] = c.map_desc;
  j["precision_bits"] = c.precision;
  j["seed"] = c.seed;
  j["format"] = c.format;
  return j;
}

int exit_code(bool ok) { return ok ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ivplab: invariant varieties of periodic points, verified at desk scale"};
  app.require_subcommand(1);

  // ------------------------------------------------------------------ iterate
  CommonOpts it_opts;
  std::size_t it_n = 5;
  std::string it_watch = "x";
  bool it_dump = false;
  auto* it_cmd = app.add_subcommand("iterate", "symbolic iteration: degree and term-count tables");
  add_common(it_cmd, it_opts);
  it_cmd->add_option("--n", it_n, "number of iterates");
  it_cmd->add_option("--watch", it_watch, "variable whose degree is tracked");
  it_cmd->add_flag("--dump", it_dump, "include the serialized iterates in the report");

  // ------------------------------------------------------------------ verify
  CommonOpts vf_opts;
  std::string vf_target = "variety";
  std::size_t vf_period = 2;
  std::size_t vf_d = 3;
  std::string vf_generator;
  std::size_t vf_samples = 100;
  auto* vf_cmd = app.add_subcommand("verify", "verification: variety, invariants, lax, special-loci");
  add_common(vf_cmd, vf_opts);
  vf_cmd->add_option("--target", vf_target, "variety | invariants | lax | special-loci")
      ->check(CLI::IsMember({"variety", "invariants", "lax", "special-loci"}));
  vf_cmd->add_option("--period", vf_period, "variety period");
  vf_cmd->add_option("--d", vf_d, "dimension for --target lax");
  vf_cmd->add_option("--generator", vf_generator,
                     "override generator (invariant symbols) for negative controls");
  vf_cmd->add_option("--samples", vf_samples, "sample count for sampled evidence");

  // ------------------------------------------------------------------ search
  CommonOpts se_opts;
  std::size_t se_period = 1;
  std::size_t se_starts = 1000;
  auto* se_cmd = app.add_subcommand("search", "Newton search for periodic points");
  add_common(se_cmd, se_opts);
  se_cmd->add_option("--period", se_period, "orbit period");
  se_cmd->add_option("--starts", se_starts, "number of random starts");

  // ------------------------------------------------------------------ report
  CommonOpts rp_opts;
  std::size_t rp_scan_starts = 2000;
  std::size_t rp_search_starts = 5000;
  auto* rp_cmd = app.add_subcommand("report", "run the full acceptance battery");
  add_common(rp_cmd, rp_opts, false);
  rp_cmd->add_option("--scan-starts", rp_scan_starts, "starts per isolated-point scan");
  rp_cmd->add_option("--search-starts", rp_search_starts, "starts for the period-2 search");

  CLI11_PARSE(app, argc, argv);

  try {
    if (it_cmd->parsed()) {
      RationalMap map = parse_map_descriptor(it_opts.map_desc);
      auto vi = map.ctx->index_of(it_watch);
      if (!vi) throw Error("iterate: map has no variable named '" + it_watch + "'");
      WorkBudget budget = WorkBudget::from_env();
      DegreeSequence seq = degree_growth(map, it_n, it_watch, budget);

      if (it_opts.format == "csv") {
        std::ostringstream csv;
        csv << "n,degree,terms_with_" << it_watch << "\n";
        for (std::size_t i = 0; i < seq.degrees.size(); ++i)
          csv << (i + 1) << "," << seq.degrees[i] << "," << seq.term_counts[i] << "\n";
        if (it_opts.output.empty()) {
          std::cout << csv.str();
        } else {
          std::ofstream f(it_opts.output);
          f << csv.str();
        }
        return 0;
      }
      nlohmann::json rep = base_report("iterate");
      rep["config"] = config_echo(it_opts);
      rep["config"]["n"] = it_n;
      rep["config"]["watch"] = it_watch;
      rep["map"] = map.descriptor_json();
      rep["degrees"] = seq.degrees;
      rep["term_counts"] = seq.term_counts;
      rep["budget_hit"] = seq.budget_hit;
      if (it_dump) {
        IterateResult full = iterate_symbolic(map, it_n, budget);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& step : full.iterates) {
          nlohmann::json v = nlohmann::json::array();
          for (const auto& c : step)
            v.push_back({{"num", poly_to_string(c.num())}, {"den", poly_to_string(c.den())}});
          arr.push_back(std::move(v));
        }
        rep["iterates"] = std::move(arr);
      }
      if (it_opts.format == "text") {
        std::cout << "n  degree  terms(" << it_watch << ")\n";
        for (std::size_t i = 0; i < seq.degrees.size(); ++i)
          std::cout << (i + 1) << "  " << seq.degrees[i] << "  " << seq.term_counts[i] << "\n";
        return 0;
      }
      emit_json(rep, it_opts.output);
      return 0;
    }

    if (vf_cmd->parsed()) {
      nlohmann::json rep = base_report("verify");
      rep["config"] = config_echo(vf_opts);
      rep["config"]["target"] = vf_target;
      bool ok = true;

      if (vf_target == "variety") {
        RationalMap map = parse_map_descriptor(vf_opts.map_desc);
        std::string id = map.name == "lv" ? "lv" + std::to_string(map.dim) : map.name;
        if (map.name == "toda") id = "toda3";
        VarietySpec spec = gamma_catalog(id, vf_period);
        rep["config"]["period"] = vf_period;
        MembershipReport mem;
        if (!vf_generator.empty()) {
          Polynomial gh = parse_poly(vf_generator, spec.hctx);
          std::vector<Polynomial> subst;
          for (auto& [n, h] : spec.hsubst) subst.push_back(h);
          mem = verify_membership_against(spec, {Polynomial::substitute(gh, subst)},
                                          WorkBudget::from_env());
          rep["config"]["generator"] = vf_generator;
        } else {
          mem = verify_membership(spec, WorkBudget::from_env(), vf_opts.precision, vf_opts.seed);
        }
        rep["membership"] = {{"exact", mem.exact},
                             {"member", mem.member},
                             {"u_regular", mem.u_regular},
                             {"evidence", mem.exact ? "exact" : "sampled"},
                             {"note", mem.note}};
        if (mem.exact && mem.member) {
          nlohmann::json cof = nlohmann::json::array();
          for (const auto& u : mem.cofactors) cof.push_back(u.to_string());
          rep["membership"]["u"] = std::move(cof);
        }
        auto samples = sample_on_variety(spec, vf_samples, vf_opts.precision, vf_opts.seed);
        PeriodVerdict v = verify_period_on_samples(spec, samples, vf_opts.precision, 1e-20);
        rep["samples"] = {{"total", v.total},
                          {"verified", v.verified},
                          {"degenerate", v.degenerate},
                          {"discarded", v.discarded},
                          {"failed", v.failed}};
        ok = mem.member && v.failed == 0;
      } else if (vf_target == "invariants") {
        RationalMap map = parse_map_descriptor(vf_opts.map_desc);
        nlohmann::json verdicts = nlohmann::json::object();
        for (const auto& [name, H] : map.invariants) {
          bool good = verify_invariance(map, H);
          verdicts[name] = good;
          ok = ok && good;
        }
        if (map.invariants.empty()) {
          rep["note"] = "map carries no invariant list";
        }
        rep["invariance"] = std::move(verdicts);
      } else if (vf_target == "lax") {
        LaxResidual res = verify_lax_equation(vf_d);
        rep["config"]["d"] = vf_d;
        rep["lax_zero_residual"] = res.zero;
        if (!res.zero) {
          rep["first_nonzero"] = {{"row", res.row}, {"col", res.col}, {"entry", res.entry.to_string()}};
        }
        LaxSystem sys = build_lax(vf_d);
        nlohmann::json hk = nlohmann::json::object();
        bool forms = true;
        for (std::size_t k = 0; k <= vf_d; ++k) {
          bool match = sys.charpoly_coeffs[k] == lv_hk_closed_form(vf_d, k, sys.ctx);
          hk["H" + std::to_string(k)] = match;
          forms = forms && match;
        }
        rep["charpoly_matches_closed_form"] = std::move(hk);
        ok = res.zero && forms;
      } else {  // special-loci
        Real::PrecGuard guard(vf_opts.precision);
        RationalMap lv0 = build_lv3(Rat(0));
        nlohmann::json loci = nlohmann::json::object();
        Rng rng(vf_opts.seed);
        for (const auto& locus : special_loci_catalog()) {
          bool good = true;
          try {
            if (locus.period == 1) {
              for (int r = 0; r < 5; ++r) {
                auto p = locus.point_exact(rng.small_rational());
                good = good && lv0.step(p) == p;
              }
            } else if (locus.rational) {
              good = special_orbit_check(Rat(7)).ok;
            } else {
              CVec p = locus.point_numeric(Complex(Real(0.375), Real(-1.25)));
              CVec cur = p;
              for (int s = 0; s < 3; ++s) cur = lv0.step(cur);
              Real dist(0);
              for (std::size_t i = 0; i < p.size(); ++i) {
                Real c = (cur[i] - p[i]).abs();
                if (c > dist) dist = c;
              }
              good = dist < Real::pow10(-20);
            }
          } catch (const std::exception&) {
            good = false;
          }
          loci[locus.description] = good;
          ok = ok && good;
        }
        rep["special_loci"] = std::move(loci);
      }
      rep["passed"] = ok;
      emit_json(rep, vf_opts.output);
      return exit_code(ok);
    }

    if (se_cmd->parsed()) {
      RationalMap map = parse_map_descriptor(se_opts.map_desc);
      SearchConfig cfg;
      cfg.period = se_period;
      cfg.starts = se_starts;
      cfg.precision = se_opts.precision;
      cfg.seed = se_opts.seed;
      auto found = newton_periodic_search(map, cfg);

      nlohmann::json rep = base_report("search");
      rep["config"] = config_echo(se_opts);
      rep["config"]["period"] = se_period;
      rep["config"]["starts"] = se_starts;
      nlohmann::json pts = nlohmann::json::array();
      for (const auto& r : found) {
        nlohmann::json p;
        nlohmann::json coords = nlohmann::json::array();
        for (const auto& z : r.point)
          coords.push_back({{"re", z.re.to_string(30)}, {"im", z.im.to_string(30)}});
        p["point"] = std::move(coords);
        p["residual"] = r.residual.to_string(8);
        nlohmann::json mults = nlohmann::json::array();
        for (std::size_t i = 0; i < r.multipliers.size(); ++i)
          mults.push_back({{"re", r.multipliers[i].re.to_string(20)},
                           {"im", r.multipliers[i].im.to_string(20)},
                           {"class", r.classes[i]}});
        p["multipliers"] = std::move(mults);
        pts.push_back(std::move(p));
      }
      rep["points"] = std::move(pts);
      rep["distinct_count"] = found.size();
      emit_json(rep, se_opts.output);
      return 0;
    }

    if (rp_cmd->parsed()) {
      AcceptanceOptions opts;
      opts.precision = rp_opts.precision;
      opts.seed = rp_opts.seed == 1 ? 20240601 : rp_opts.seed;
      opts.scan_starts = rp_scan_starts;
      opts.search_starts = rp_search_starts;
      auto results = run_acceptance(opts, std::cerr);
      nlohmann::json rep = base_report("report");
      rep["config"] = config_echo(rp_opts);
      rep["config"]["scan_starts"] = rp_scan_starts;
      rep["config"]["search_starts"] = rp_search_starts;
      nlohmann::json arr = nlohmann::json::array();
      bool all = true;
      for (const auto& r : results) {
        arr.push_back({{"id", r.id},
                       {"title", r.title},
                       {"passed", r.passed},
                       {"seconds", r.seconds},
                       {"details", r.details}});
        all = all && r.passed;
      }
      rep["criteria"] = std::move(arr);
      rep["passed"] = all;
      emit_json(rep, rp_opts.output);
      return exit_code(all);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
