#include "ci/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ci/acceptance.hpp"
#include "ci/birres.hpp"
#include "ci/certify.hpp"
#include "ci/combinat.hpp"
#include "ci/eigencalc.hpp"
#include "ci/exceptions.hpp"
#include "ci/fq.hpp"
#include "ci/hpoly.hpp"
#include "ci/report.hpp"
#include "ci/rng.hpp"
#include "ci/torelli.hpp"
#include "ci/varieties.hpp"

namespace ci {

namespace {

struct CliConfig {
  int n = 0;                 // 0 = not given
  int n_max = 0;             // 0 = use the subcommand default
  std::vector<int> degrees;  // empty = sweep mode
  int p_max = 0;             // 0 = use the subcommand default
  u64 q = 0;                 // 0 = use the subcommand default
  u64 seed = 1;
  u64 budget_points = 2000000;
  long random_maps = 1000;
  std::string emit = "theorem";
  std::string out_path;
  std::string format = "text";
};

std::string pad2(long v) {
  std::ostringstream os;
  os << std::setw(2) << std::setfill('0') << v;
  return os.str();
}

std::vector<int> primes_up_to(int m) {
  std::vector<int> out;
  for (int v = 2; v <= m; ++v) {
    bool prime = true;
    for (int t = 2; t * t <= v; ++t)
      if (v % t == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(v);
  }
  return out;
}

nlohmann::json json_list(const std::vector<int>& v) {
  return nlohmann::json(v);
}

nlohmann::json json_list(const std::vector<long>& v) {
  return nlohmann::json(v);
}

std::string multiplicity_key(const std::vector<long>& a) {
  std::ostringstream os;
  os << "a=(";
  for (size_t j = 0; j < a.size(); ++j) os << (j ? "," : "") << a[j];
  os << ")";
  return os.str();
}

nlohmann::json certificate_json(const CaseCertificate& c) {
  return {
      {"case", c.case_id},   {"scenario", c.scenario}, {"w", c.w},
      {"b1", c.b1},          {"b2", c.b2},             {"lhs", to_string(c.lhs)},
      {"rhs", to_string(c.rhs)}, {"holds", c.holds},
  };
}

// --- exceptions -----------------------------------------------------------

Report handle_exceptions(const CliConfig& cfg) {
  const int n_max = cfg.n_max ? cfg.n_max : 12;
  Report report("exceptions", {{"n_max", n_max}, {"emit", cfg.emit}});
  if (cfg.emit == "lemma44") {
    for (const ExceptionRecord& rec : enumerate_lemma44(n_max)) {
      report.add("lemma44-record",
                 "l=" + pad2(rec.l) + "/" + rec.ci.to_string(), Status::Info,
                 {{"ambient", rec.ci.n},
                  {"degrees", json_list(rec.ci.degrees)},
                  {"l", rec.l},
                  {"value", to_string(rec.value)},
                  {"threshold", rec.threshold},
                  {"is_exception", rec.is_exception}});
    }
  } else {
    for (const CIType& ci : theorem_exception_list(n_max)) {
      report.add("theorem-exception", ci.to_string(), Status::Info,
                 {{"ambient", ci.n}, {"degrees", json_list(ci.degrees)}});
    }
  }
  return report;
}

// --- eigen ----------------------------------------------------------------

Report handle_eigen(const CliConfig& cfg) {
  const int n_max = cfg.n_max ? cfg.n_max : 12;
  const int p_max = cfg.p_max ? cfg.p_max : 13;
  Report report("eigen", {{"n_max", n_max}, {"p_max", p_max}});
  for (int n = 3; n <= n_max; ++n) {
    for (int p : primes_up_to(p_max)) {
      long classes = 0, gap_checks = 0, max_checks = 0;
      std::vector<std::string> violations;
      for_each_canonical_multiplicity(
          n + 1, p, [&](const std::vector<long>& a) {
            ++classes;
            const EigenSpec spec(p, weights_from_multiplicities(a));
            for (int d = 2; d <= 8; ++d) {
              ++gap_checks;
              const auto rep = check_lemma22(spec, d);
              if (!rep.holds)
                violations.push_back("gap d=" + std::to_string(d) + " " +
                                     multiplicity_key(a));
            }
            for (int d = 3; d <= 8; ++d) {
              ++max_checks;
              const auto rep = check_lemma24(spec, d);
              if (!rep.bound_holds || !rep.recursion_holds)
                violations.push_back("max d=" + std::to_string(d) + " " +
                                     multiplicity_key(a));
            }
          });
      nlohmann::json payload = {{"n", n},
                                {"p", p},
                                {"classes", classes},
                                {"gap_checks", gap_checks},
                                {"max_checks", max_checks},
                                {"violations", violations.size()}};
      if (!violations.empty()) {
        violations.resize(std::min<size_t>(violations.size(), 5));
        payload["first_violations"] = violations;
      }
      report.add("dimension-bounds", "n=" + pad2(n) + "/p=" + pad2(p),
                 violations.empty() ? Status::Pass : Status::Fail, payload);
    }
  }
  return report;
}

// --- certify ----------------------------------------------------------------

Report handle_certify(const CliConfig& cfg) {
  const int p_max = cfg.p_max ? cfg.p_max : 7;
  const auto primes = primes_up_to(p_max);

  if (!cfg.degrees.empty()) {
    // Detailed mode: one record per (p, weight class) for a single shape.
    const CIType ci(cfg.n, cfg.degrees);
    Report report("certify", {{"n", cfg.n},
                              {"degrees", json_list(cfg.degrees)},
                              {"p_max", p_max}});
    for (int p : primes) {
      for_each_canonical_multiplicity(
          ci.n + 1, p, [&](const std::vector<long>& a) {
            const EigenSpec spec(p, weights_from_multiplicities(a));
            const auto certs = certify_dispatch(ci, spec);
            const bool all_hold =
                std::all_of(certs.begin(), certs.end(),
                            [](const CaseCertificate& c) { return c.holds; });
            nlohmann::json carr = nlohmann::json::array();
            for (const auto& c : certs) carr.push_back(certificate_json(c));
            report.add("certificate",
                       ci.to_string() + "/p=" + pad2(p) + "/" +
                           multiplicity_key(a),
                       all_hold ? Status::Pass : Status::Fail,
                       {{"ambient", ci.n},
                        {"degrees", json_list(ci.degrees)},
                        {"p", p},
                        {"multiplicities", json_list(a)},
                        {"certificates", carr}});
          });
    }
    return report;
  }

  // Sweep mode: aggregate per (shape, p) over every canonical weight class.
  const int n_max = cfg.n_max ? cfg.n_max : 10;
  const int n_lo = cfg.n ? cfg.n : 3;
  const int n_hi = cfg.n ? cfg.n : n_max;
  Report report("certify",
                {{"n_max", n_hi}, {"n_min", n_lo}, {"p_max", p_max}});
  for (const auto& degs : case_engine_degree_tuples()) {
    const int c = static_cast<int>(degs.size());
    for (int n = std::max(n_lo, c + 2); n <= n_hi; ++n) {
      const CIType ci(n, degs);
      for (int p : primes) {
        long classes = 0, certificates = 0, failing = 0;
        std::vector<std::string> failures;
        for_each_canonical_multiplicity(
            n + 1, p, [&](const std::vector<long>& a) {
              ++classes;
              const EigenSpec spec(p, weights_from_multiplicities(a));
              for (const auto& cert : certify_dispatch(ci, spec)) {
                ++certificates;
                if (!cert.holds) {
                  ++failing;
                  if (failures.size() < 5)
                    failures.push_back(multiplicity_key(a) + " w=" +
                                       std::to_string(cert.w) + " " +
                                       cert.case_id);
                }
              }
            });
        nlohmann::json payload = {{"ambient", n},
                                  {"degrees", json_list(degs)},
                                  {"p", p},
                                  {"classes", classes},
                                  {"certificates", certificates},
                                  {"failing", failing}};
        if (!failures.empty()) payload["first_failures"] = failures;
        report.add("certificate-sweep", ci.to_string() + "/p=" + pad2(p),
                   failing == 0 ? Status::Pass : Status::Fail, payload);
      }
    }
  }
  return report;
}

// --- varieties --------------------------------------------------------------

Report handle_varieties(const CliConfig& cfg) {
  Report report("varieties",
                {{"seed", cfg.seed}, {"budget_points", cfg.budget_points}});

  // Quadric pencils: sign-change group of order 2^n, no eigenvalue-set
  // Moebius symmetry, over two primes.
  for (const auto& [n, eigenvalues] : pencil_example_eigenvalues()) {
    for (u64 q : {u64{101}, u64{103}}) {
      const PencilReport pr = pencil_automorphisms(eigenvalues, {q, 1});
      const bool ok = pr.sign_maps_preserve_both_forms && pr.group_order_ok &&
                      pr.eigenvalues_general;
      report.add("pencil", "n=" + pad2(n) + "/q=" + std::to_string(q),
                 ok ? Status::Pass : Status::Fail,
                 {{"n", n},
                  {"eigenvalues", eigenvalues},
                  {"q", q},
                  {"group_order_mod_center", pr.group_order_mod_center},
                  {"sign_maps_ok", pr.sign_maps_preserve_both_forms},
                  {"moebius_symmetries", pr.moebius_symmetries.size()}});
    }
  }

  // Cyclic pair of quadrics: the two pullback identities, coefficient-exact.
  for (const auto& [n, q] : cyclic_example_fields()) {
    const CyclicReport cr = cyclic_22_example(n, {q, 1}, cfg.budget_points);
    const bool ok = cr.d_scaled_by_eta && cr.e_fixed;
    nlohmann::json payload = {{"n", n},
                              {"q", q},
                              {"zeta", cr.zeta},
                              {"eta", cr.eta},
                              {"d_scaled_by_eta", cr.d_scaled_by_eta},
                              {"e_fixed", cr.e_fixed},
                              {"smoothness_checked", cr.smoothness_checked},
                              {"smooth", cr.smooth}};
    if (!cr.smoothness_checked)
      report.mark_incomplete("cyclic n=" + std::to_string(n) +
                             ": smoothness enumeration over budget");
    report.add("cyclic", "n=" + pad2(n), ok ? Status::Pass : Status::Fail,
               payload);
  }

  // Nodal families: verified nodes at the coordinate points and no other
  // singular rational point over the stated field.
  for (const NodalExampleSpec& ex : nodal_example_specs()) {
    const PrimeField field{ex.q, 1};
    const u64 seed = cfg.seed != 1 ? cfg.seed : ex.seed;
    const NodalFamily family = nodal_ci(ex.ci, field, seed);
    const VerifyNodesReport vn = verify_nodes(family.F, family.nodes, field);
    const StrataReport st =
        strata(family.F, whole_space(ex.ci.n), field, cfg.budget_points);

    nlohmann::json members = nlohmann::json::array();
    for (const HPoly& f : family.F) members.push_back(hp_to_string(f));
    nlohmann::json singular_sizes = nlohmann::json::object();
    for (const auto& [corank, pts] : st.singular)
      singular_sizes[std::to_string(corank)] = pts.points.size();

    const std::string key =
        ex.ci.to_string() + "/q=" + std::to_string(ex.q);
    nlohmann::json payload = {{"shape", ex.ci.to_string()},
                              {"q", ex.q},
                              {"seed", seed},
                              {"members", members},
                              {"nodes", family.nodes.points.size()},
                              {"nodes_verified", vn.all_ok},
                              {"points_on_x", st.points_on_x},
                              {"smooth_points", st.smooth_count},
                              {"singular_by_corank", singular_sizes}};
    if (!st.budget_ok) {
      report.mark_incomplete("nodal " + key + ": point budget exceeded");
      report.add("nodal", key, Status::Unknown, payload);
      continue;
    }
    const bool only_nodes =
        st.singular.size() == 1 && st.singular.count(1) == 1 &&
        st.singular.at(1).points == family.nodes.points;
    report.add("nodal", key,
               (vn.all_ok && only_nodes) ? Status::Pass : Status::Fail,
               payload);
  }

  return report;
}

// --- birres -----------------------------------------------------------------

Report handle_birres(const CliConfig& cfg) {
  const int n_max = cfg.n_max ? cfg.n_max : 12;
  const u64 q = cfg.q ? cfg.q : 101;
  Report report("birres", {{"n_max", n_max},
                           {"random_maps", cfg.random_maps},
                           {"seed", cfg.seed},
                           {"q", q}});

  long duality_violations = 0;
  std::vector<std::string> duality_failures;
  Rng rng(cfg.seed);
  for (long i = 0; i < cfg.random_maps; ++i) {
    const ScalingMap map = random_scaling_map(n_max, rng);
    const FlagsReport fr = flags(map);
    if (!(fr.duality_ok && fr.supports_disjoint && fr.window_identity_ok)) {
      ++duality_violations;
      if (duality_failures.size() < 5)
        duality_failures.push_back("map " + std::to_string(i));
    }
  }
  nlohmann::json dual_payload = {{"maps", cfg.random_maps},
                                 {"n_max", n_max},
                                 {"violations", duality_violations}};
  if (!duality_failures.empty())
    dual_payload["first_failures"] = duality_failures;
  report.add("flag-duality", "sweep",
             duality_violations == 0 ? Status::Pass : Status::Fail,
             dual_payload);

  const long corr_maps = std::min<long>(50, cfg.random_maps);
  long arcs_checked = 0, corr_violations = 0;
  std::vector<std::string> corr_failures;
  Rng rng2(cfg.seed + 1);
  for (long i = 0; i < corr_maps; ++i) {
    const ScalingMap map = random_scaling_map(n_max, rng2);
    const int l = map.blocks() - 1;
    const int per_stratum = (100 + l) / (l + 1);
    const CorrespondenceReport cr =
        stratum_correspondence(map, per_stratum, rng2.next(), q);
    arcs_checked += cr.arcs_checked;
    if (!cr.all_ok) {
      ++corr_violations;
      for (const std::string& f : cr.failures)
        if (corr_failures.size() < 5)
          corr_failures.push_back("map " + std::to_string(i) + ": " + f);
    }
  }
  nlohmann::json corr_payload = {{"maps", corr_maps},
                                 {"arcs_checked", arcs_checked},
                                 {"violations", corr_violations}};
  if (!corr_failures.empty()) corr_payload["first_failures"] = corr_failures;
  report.add("arc-correspondence", "sweep",
             corr_violations == 0 ? Status::Pass : Status::Fail, corr_payload);

  return report;
}

// --- torelli ----------------------------------------------------------------

Report handle_torelli(const CliConfig& cfg) {
  const int n_max = cfg.n_max ? cfg.n_max : 6;
  const u64 q = cfg.q ? cfg.q : 101;
  Report report("torelli",
                {{"n_max", n_max}, {"q", q}, {"seed", cfg.seed}});
  const auto rows = torelli_sweep(n_max, {q, 1}, cfg.seed);
  for (const TorelliRow& row : rows) {
    std::vector<std::string> statuses;
    for (SurjStatus s : row.cond_i_status) statuses.push_back(to_string(s));
    nlohmann::json payload = {{"ambient", row.ambient},
                              {"dim", row.dim_x},
                              {"degrees", json_list(row.ci.degrees)},
                              {"condition_ii_certified", row.cond_ii_certified},
                              {"condition_i_status", statuses},
                              {"surjective_p", row.surjective_p},
                              {"certified", row.certified},
                              {"flagged", row.flagged}};
    if (!row.note.empty()) payload["note"] = row.note;
    Status status = Status::Unknown;
    if (row.certified) status = Status::Pass;
    else if (row.flagged) status = Status::Info;
    else
      report.mark_incomplete("torelli " + row.ci.to_string() +
                             ": neither certified nor flagged within budget");
    report.add("torelli", row.ci.to_string(), status, payload);
  }
  return report;
}

// --- all --------------------------------------------------------------------

Report handle_all() {
  Report report("all", nlohmann::json::object());
  for (const CriterionResult& r : run_acceptance()) {
    report.add("acceptance", "criterion-" + pad2(r.index),
               r.pass ? Status::Pass : Status::Fail,
               {{"name", r.name}, {"detail", r.detail}});
  }
  return report;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "exact-arithmetic verification toolkit for automorphism and cohomology "
      "computations on complete intersections"};
  app.name("civerify");
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);

  CliConfig cfg;

  const CLI::Validator prime_validator(
      [](std::string& s) -> std::string {
        try {
          const unsigned long long v = std::stoull(s);
          if (v >= (1ULL << 31)) return "prime must be below 2^31";
          if (!is_prime_u64(v)) return "value " + s + " is not prime";
        } catch (const std::exception&) {
          return "value " + s + " is not a positive integer";
        }
        return {};
      },
      "prime below 2^31", "PRIME");

  const auto add_output_flags = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path,
                    "write the report to this file instead of stdout");
    sub->add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  };

  CLI::App* sub_certify = app.add_subcommand(
      "certify", "case-inequality certificates for diagonal automorphisms");
  auto* opt_n = sub_certify->add_option(
      "--n", cfg.n, "ambient dimension (with --degrees: the single shape)");
  opt_n->check(CLI::Range(3, 20));
  sub_certify
      ->add_option("--degrees", cfg.degrees,
                   "comma-separated degree list, e.g. 3,3")
      ->delimiter(',')
      ->check(CLI::Range(2, 9))
      ->needs(opt_n);
  sub_certify
      ->add_option("--n-max", cfg.n_max, "sweep bound on n (default 10)")
      ->check(CLI::Range(3, 20));
  sub_certify
      ->add_option("--p-max", cfg.p_max,
                   "largest automorphism order (default 7)")
      ->check(CLI::Range(2, 13));
  add_output_flags(sub_certify);

  CLI::App* sub_eigen = app.add_subcommand(
      "eigen", "eigenspace dimension-bound sweeps (gap and max bounds)");
  sub_eigen->add_option("--n-max", cfg.n_max, "sweep bound on n (default 12)")
      ->check(CLI::Range(3, 16));
  sub_eigen
      ->add_option("--p-max", cfg.p_max,
                   "largest automorphism order (default 13)")
      ->check(CLI::Range(2, 13));
  add_output_flags(sub_eigen);

  CLI::App* sub_varieties = app.add_subcommand(
      "varieties",
      "finite-field geometry examples: pencils, cyclic pair, nodal families");
  sub_varieties->add_option("--seed", cfg.seed,
                            "seed override for the nodal families");
  sub_varieties
      ->add_option("--budget-points", cfg.budget_points,
                   "max projective points to enumerate")
      ->check(CLI::PositiveNumber);
  add_output_flags(sub_varieties);

  CLI::App* sub_birres = app.add_subcommand(
      "birres", "scaling-map flag duality and arc-limit correspondence");
  sub_birres
      ->add_option("--random-maps", cfg.random_maps,
                   "number of random maps (default 1000)")
      ->check(CLI::Range(1L, 1000000L));
  sub_birres->add_option("--n-max", cfg.n_max, "maximum ambient n (default 12)")
      ->check(CLI::Range(2, 24));
  sub_birres->add_option("--seed", cfg.seed, "sweep seed");
  sub_birres->add_option("--q", cfg.q, "prime field for arc leads")
      ->check(prime_validator);
  add_output_flags(sub_birres);

  CLI::App* sub_torelli = app.add_subcommand(
      "torelli", "certification sweep for the two Torelli-type conditions");
  sub_torelli
      ->add_option("--n-max", cfg.n_max, "maximum ambient dimension (default 6)")
      ->check(CLI::Range(3, 8));
  sub_torelli->add_option("--q", cfg.q, "prime field (default 101)")
      ->check(prime_validator);
  sub_torelli->add_option("--seed", cfg.seed, "member-generation seed");
  add_output_flags(sub_torelli);

  CLI::App* sub_exceptions = app.add_subcommand(
      "exceptions", "exceptional-shape enumeration and the filtered list");
  sub_exceptions
      ->add_option("--n-max", cfg.n_max, "maximum ambient dimension (default 12)")
      ->check(CLI::Range(5, 64));
  sub_exceptions->add_option("--emit", cfg.emit, "which list to emit")
      ->check(CLI::IsMember({"lemma44", "theorem"}))
      ->capture_default_str();
  add_output_flags(sub_exceptions);

  CLI::App* sub_all =
      app.add_subcommand("all", "run the full desk-scale acceptance suite");
  add_output_flags(sub_all);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    Report report = [&]() -> Report {
      if (app.got_subcommand(sub_certify)) return handle_certify(cfg);
      if (app.got_subcommand(sub_eigen)) return handle_eigen(cfg);
      if (app.got_subcommand(sub_varieties)) return handle_varieties(cfg);
      if (app.got_subcommand(sub_birres)) return handle_birres(cfg);
      if (app.got_subcommand(sub_torelli)) return handle_torelli(cfg);
      if (app.got_subcommand(sub_exceptions)) return handle_exceptions(cfg);
      return handle_all();
    }();
    write_report(report, cfg.out_path, cfg.format, out);
    return report.exit_code();
  } catch (const std::exception& e) {
    err << "civerify: error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ci
