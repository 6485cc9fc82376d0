// Command-line front end: Hadamard generation, model construction, scheme
// checks, Nomura algebra computation, and the verification drivers.
// Verification commands exit 0 when everything passes, 1 on any failure,
// 2 when a zero test was undecidable at the configured precision.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinkit/hadamard.hpp"
#include "spinkit/models.hpp"
#include "spinkit/nomura.hpp"
#include "spinkit/report.hpp"
#include "spinkit/schemes.hpp"
#include "spinkit/verify.hpp"

using namespace spinkit;

namespace {

int env_precision() {
  const char* s = std::getenv("SPINKIT_PRECISION");
  if (!s) return 30;
  try {
    int v = std::stoi(s);
    if (v >= 1 && v <= 95) return v;
  } catch (const std::exception&) {
  }
  std::cerr << "ignoring invalid SPINKIT_PRECISION='" << s << "'\n";
  return 30;
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrKind::IoError, "cannot open " + path);
  out << body;
  if (!out.good()) throw Error(ErrKind::IoError, "write failed for " + path);
}

HadamardMatrix hadamard_from(const std::string& file, int order) {
  if (!file.empty()) return load_hadamard(file);
  return hadamard_for(order, RunManifest{});
}

// Context shared by the model-facing commands; precision comes from the
// environment, everything else from flags.
ScalarContext cli_context(int k, int omega, int xi, const std::string& backend,
                          double tol) {
  RunManifest m;
  m.omega_exp = omega;
  m.xi_exp = xi;
  m.backend = backend;
  m.tolerance = tol;
  m.precision = env_precision();
  return context_for(k, m);
}

ModelKind parse_kind(const std::string& s) {
  if (s == "W") return ModelKind::W;
  if (s == "Wp") return ModelKind::Wprime;
  if (s == "Wt") return ModelKind::Wtilde;
  if (s == "Wtp") return ModelKind::WtildePrime;
  throw Error(ErrKind::ParseError, "unknown model kind '" + s + "'");
}

int report_exit(const VerificationReport& r) {
  switch (r.verdict) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Ambiguous: return 2;
  }
  return 1;
}

void print_or_save(const VerificationReport& r, const std::string& out_dir) {
  std::cout << canonical_json(r);
  if (!out_dir.empty()) report_emit(r, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hadamard spin models and their Nomura algebras"};
  app.require_subcommand(1);

  // ---- gen-hadamard ----
  auto* gen = app.add_subcommand("gen-hadamard", "construct a Hadamard matrix");
  int gen_order = 4;
  std::string gen_method = "sylvester", gen_out;
  gen->add_option("--order", gen_order, "matrix order")->required();
  gen->add_option("--method", gen_method, "sylvester (orders 2^m) or paley (orders q+1)")
      ->check(CLI::IsMember({"sylvester", "paley"}));
  gen->add_option("--out", gen_out, "output file ('-' = stdout)");

  // ---- build-model ----
  auto* bm = app.add_subcommand("build-model", "assemble a model matrix");
  std::string bm_kind = "W", bm_hadamard, bm_backend, bm_out;
  int bm_omega = 0, bm_xi = 1, bm_k = 4;
  double bm_tol = 1e-8;
  bm->add_option("--kind", bm_kind, "W | Wp | Wt | Wtp")->required();
  bm->add_option("--hadamard", bm_hadamard, "Hadamard file (default: built-in)");
  bm->add_option("--k", bm_k, "order when no file is given");
  bm->add_option("--omega", bm_omega, "omega = i^N")->check(CLI::Range(0, 3));
  bm->add_option("--xi", bm_xi, "xi = z8^N, N odd");
  bm->add_option("--backend", bm_backend, "cyclotomic | laurent_hybrid | numeric");
  bm->add_option("--tol", bm_tol, "numeric tolerance");
  bm->add_option("--out", bm_out, "output file ('-' = stdout)");

  // ---- check-scheme ----
  auto* cs = app.add_subcommand("check-scheme", "scheme and configuration axioms");
  std::string cs_which = "A", cs_hadamard, cs_out;
  int cs_k = 4;
  cs->add_option("--which", cs_which, "A | Aprime | cc")
      ->check(CLI::IsMember({"A", "Aprime", "cc"}));
  cs->add_option("--hadamard", cs_hadamard, "Hadamard file (default: built-in)");
  cs->add_option("--k", cs_k, "order when no file is given");
  cs->add_option("--out", cs_out, "directory for the JSON report");

  // ---- nomura ----
  auto* nm = app.add_subcommand("nomura", "Nomura algebra of a model");
  std::string nm_model, nm_kind = "W", nm_hadamard, nm_backend, nm_out;
  int nm_omega = 0, nm_xi = 1, nm_k = 4;
  double nm_tol = 1e-8;
  nm->add_option("--model", nm_model, "JSON matrix file (overrides --kind)");
  nm->add_option("--kind", nm_kind, "W | Wp | Wt | Wtp");
  nm->add_option("--hadamard", nm_hadamard, "Hadamard file (default: built-in)");
  nm->add_option("--k", nm_k, "order when no file is given");
  nm->add_option("--omega", nm_omega, "omega = i^N")->check(CLI::Range(0, 3));
  nm->add_option("--xi", nm_xi, "xi = z8^N, N odd");
  nm->add_option("--backend", nm_backend, "cyclotomic | laurent_hybrid | numeric");
  nm->add_option("--tol", nm_tol, "numeric tolerance");
  nm->add_option("--out", nm_out, "report file ('-' = stdout)");

  // ---- verify ----
  auto* vf = app.add_subcommand("verify", "run verification checks");
  bool vf_all = false, vf_theorem = false;
  int vf_lemma = 0, vf_degenerate = 0;
  std::vector<int> vf_ks;
  std::string vf_hadamard, vf_backend, vf_out;
  int vf_omega = 0, vf_xi = 1;
  double vf_tol = 1e-8;
  vf->add_flag("--all", vf_all, "full check chain over every order");
  vf->add_option("--lemma", vf_lemma, "one structure lemma (2..5)")
      ->check(CLI::Range(2, 5));
  vf->add_flag("--theorem", vf_theorem, "the algebra identification");
  vf->add_option("--degenerate", vf_degenerate, "degenerate order classification (1|2)")
      ->check(CLI::Range(1, 2));
  vf->add_option("--k", vf_ks, "orders (default 1,2,4,8; single order for "
                               "--lemma/--theorem)")
      ->delimiter(',');
  vf->add_option("--hadamard", vf_hadamard,
                 "Hadamard file (single-order runs only)");
  vf->add_option("--omega", vf_omega, "omega = i^N")->check(CLI::Range(0, 3));
  vf->add_option("--xi", vf_xi, "xi = z8^N, N odd");
  vf->add_option("--backend", vf_backend, "cyclotomic | laurent_hybrid | numeric");
  vf->add_option("--tol", vf_tol, "numeric tolerance");
  vf->add_option("--out", vf_out, "directory for JSON reports");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      HadamardMatrix h;
      if (gen_method == "sylvester") {
        if (gen_order < 1 || (gen_order & (gen_order - 1)) != 0)
          throw Error(ErrKind::ConstraintViolation,
                      "sylvester orders are powers of two");
        int e = 0;
        while ((1 << e) < gen_order) ++e;
        h = sylvester(e);
      } else {
        h = paley1(gen_order - 1);
      }
      VerificationReport v = validate_hadamard(h);
      if (!v.ok()) throw Error(ErrKind::Internal, "generated matrix invalid");
      write_text(gen_out, serialize_hadamard(h));
      return 0;
    }

    if (bm->parsed()) {
      HadamardMatrix h = hadamard_from(bm_hadamard, bm_k);
      ScalarContext ctx =
          cli_context(h.order(), bm_omega, bm_xi, bm_backend, bm_tol);
      SpinMatrix m = build_model(parse_kind(bm_kind), h, ctx);
      write_text(bm_out, dump_matrix(m, ctx));
      return 0;
    }

    if (cs->parsed()) {
      HadamardMatrix h = hadamard_from(cs_hadamard, cs_k);
      VerificationReport r;
      if (cs_which == "cc") {
        r = coherent_config_check(h);
      } else {
        SchemeSpec spec =
            cs_which == "A" ? hadamard_scheme(h) : directed_hadamard_scheme(h);
        SchemeCheckResult res = scheme_check(spec.rels);
        r = res.report;
        r.check_id = cs_which == "A" ? "scheme_A" : "scheme_Aprime";
        r.k = h.order();
        int d = res.tensor.classes;
        nlohmann::json tensor = nlohmann::json::array();
        for (int i = 0; i < d; ++i) {
          nlohmann::json ji = nlohmann::json::array();
          for (int j = 0; j < d; ++j) {
            nlohmann::json jl = nlohmann::json::array();
            for (int l = 0; l < d; ++l) jl.push_back(res.tensor.at(i, j, l));
            ji.push_back(jl);
          }
          tensor.push_back(ji);
        }
        r.details["p_tensor"] = tensor.dump();
      }
      std::cout << canonical_json(r);
      if (!cs_out.empty()) report_emit(r, cs_out);
      return report_exit(r);
    }

    if (nm->parsed()) {
      SpinMatrix m;
      ScalarContext ctx;
      if (!nm_model.empty()) {
        std::ifstream in(nm_model);
        if (!in) throw Error(ErrKind::IoError, "cannot open " + nm_model);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        int side = nlohmann::json::parse(text).at("n").get<int>();
        if (side <= 0 || side % 4 != 0)
          throw Error(ErrKind::ShapeMismatch,
                      "model side must be a positive multiple of 4");
        ctx = cli_context(side / 4, nm_omega, nm_xi, nm_backend, nm_tol);
        m = parse_matrix(text, ctx);
      } else {
        HadamardMatrix h = hadamard_from(nm_hadamard, nm_k);
        ctx = cli_context(h.order(), nm_omega, nm_xi, nm_backend, nm_tol);
        m = build_model(parse_kind(nm_kind), h, ctx);
      }
      NomuraResult nr = nomura_algebra(m, ctx);
      VerificationReport r = make_report("nomura", ctx.k, ctx.backend_name());
      r.params["omega_exp"] = std::to_string(ctx.omega_exp);
      r.params["xi_exp"] = std::to_string(ctx.xi_exp);
      detail_int(r, "dimension", static_cast<long long>(nr.basis.size()));
      detail_ints(r, "class_sizes", nr.partition.class_sizes());
      detail_int(r, "ambiguous", nr.ambiguous);
      detail_str(r, "orientation", nr.orientation);
      {
        nlohmann::json reps = nlohmann::json::array();
        for (int lab : nr.partition.class_labels()) {
          nlohmann::json pair = nlohmann::json::array();
          pair.push_back(lab / nr.partition.n);
          pair.push_back(lab % nr.partition.n);
          reps.push_back(pair);
        }
        r.details["representatives"] = reps.dump();
      }
      std::string body = canonical_json(r);
      write_text(nm_out, body);
      return report_exit(r);
    }

    if (vf->parsed()) {
      int selected = (vf_all ? 1 : 0) + (vf_lemma ? 1 : 0) +
                     (vf_theorem ? 1 : 0) + (vf_degenerate ? 1 : 0);
      if (selected != 1)
        throw Error(ErrKind::ParseError,
                    "pick exactly one of --all, --lemma, --theorem, --degenerate");

      if (vf_all) {
        RunManifest man;
        if (!vf_ks.empty()) man.ks = vf_ks;
        if (!vf_hadamard.empty()) {
          if (man.ks.size() != 1)
            throw Error(ErrKind::ParseError,
                        "--hadamard needs a single --k order");
          man.hadamard_files[man.ks[0]] = vf_hadamard;
        }
        man.omega_exp = vf_omega;
        man.xi_exp = vf_xi;
        man.backend = vf_backend;
        man.tolerance = vf_tol;
        man.precision = env_precision();
        man.out_dir = vf_out;
        std::vector<VerificationReport> reports = verify_all(man);
        for (const auto& r : reports)
          std::cout << to_string(r.verdict) << "  " << r.check_id
                    << (r.k > 0 ? " k=" + std::to_string(r.k) : "") << "\n";
        return exit_code_for(reports);
      }

      if (vf_degenerate) {
        VerificationReport r = verify_degenerate(vf_degenerate, vf_omega, vf_xi);
        print_or_save(r, vf_out);
        return report_exit(r);
      }

      // --lemma / --theorem run on one order (default 4)
      if (vf_ks.size() > 1)
        throw Error(ErrKind::ParseError, "single-check runs take one --k");
      int k = vf_ks.empty() ? 4 : vf_ks[0];
      RunManifest man;
      man.ks = {k};
      if (!vf_hadamard.empty()) man.hadamard_files[k] = vf_hadamard;
      man.omega_exp = vf_omega;
      man.xi_exp = vf_xi;
      man.backend = vf_backend;
      man.tolerance = vf_tol;
      man.precision = env_precision();
      HadamardMatrix h = hadamard_for(k, man);
      ScalarContext ctx = context_for(k, man);
      VerificationReport r;
      if (vf_theorem) {
        r = verify_theorem(h, ctx);
      } else {
        LemmaOptions lopt;
        lopt.sample = k <= 4 ? 0 : 1000;
        r = lemma_check(vf_lemma, h, ctx, lopt);
      }
      print_or_save(r, vf_out);
      return report_exit(r);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.kind() == ErrKind::AmbiguousZero || e.kind() == ErrKind::AmbiguousEdge)
               ? 2
               : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
