#include "spinkit/schemes.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace spinkit {

namespace {

std::string pair_text(Index4k u, Index4k v) {
  auto one = [](Index4k w) {
    return "(a=" + std::to_string(w.x) + ",(" + std::to_string(w.a1) + "," +
           std::to_string(w.a2) + "))";
  };
  return "(" + one(u) + "," + one(v) + ")";
}

// c * a added into r
void axpy(IntMatrix& r, long long c, const IntMatrix& a) {
  int n = r.side();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) += c * a.at(i, j);
}

nlohmann::json tensor_json(const IntersectionTensor& t) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < t.classes; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < t.classes; ++j) {
      nlohmann::json cell = nlohmann::json::array();
      for (int l = 0; l < t.classes; ++l) cell.push_back(t.at(i, j, l));
      row.push_back(std::move(cell));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::array<IntMatrix, 7> build_distance_matrices(const HadamardMatrix& h) {
  int k = h.order();
  IntMatrix Z(k), E(k), P(k), M(k);
  IntMatrix I = int_identity(k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      E.at(r, c) = r != c;
      P.at(r, c) = h.sign(r, c) == 1;
      M.at(r, c) = h.sign(r, c) == -1;
    }
  IntMatrix Pt = transpose(P), Mt = transpose(M);

  std::array<IntMatrix, 7> a;
  a[kA0] = int_identity(4 * k);
  a[kA1] = block4<long long>({Z, Z, P, M, Z, Z, M, P, Pt, Mt, Z, Z, Mt, Pt, Z, Z});
  a[kA2] = block4<long long>({E, E, Z, Z, E, E, Z, Z, Z, Z, E, E, Z, Z, E, E});
  a[kA3] = block4<long long>({Z, Z, M, P, Z, Z, P, M, Mt, Pt, Z, Z, Pt, Mt, Z, Z});
  a[kA4] = block4<long long>({Z, I, Z, Z, I, Z, Z, Z, Z, Z, Z, I, Z, Z, I, Z});
  a[kA1p] = block4<long long>({Z, Z, P, M, Z, Z, M, P, Mt, Pt, Z, Z, Pt, Mt, Z, Z});
  a[kA3p] = transpose(a[kA1p]);

  const char* names[7] = {"A0", "A1", "A2", "A3", "A4", "A1p", "A3p"};
  for (int i = 0; i < 7; ++i) a[i].set_label(names[i]);
  return a;
}

std::array<Relation, 7> build_relations(const HadamardMatrix& h) {
  int k = h.order();
  int n = 4 * k;
  const char* names[7] = {"R0", "R1", "R2", "R3", "R4", "R1p", "R3p"};
  std::array<Relation, 7> rels;
  for (int i = 0; i < 7; ++i) rels[i] = Relation{names[i], IntMatrix(n)};

  for (int r = 0; r < n; ++r) {
    Index4k u = Index4k::from_linear(r, k);
    for (int c = 0; c < n; ++c) {
      Index4k v = Index4k::from_linear(c, k);
      bool up = u.a1 == 0 && v.a1 == 1;    // tail fiber 0, head fiber 1
      bool down = u.a1 == 1 && v.a1 == 0;  // reversed: test H at (b,a)
      int e = (u.a2 + v.a2) % 2 == 0 ? 1 : -1;
      int fwd = up ? h.sign(u.x, v.x) : 0;
      int rev = down ? h.sign(v.x, u.x) : 0;

      if (r == c) rels[kA0].mat.at(r, c) = 1;
      if (fwd == e || rev == e) rels[kA1].mat.at(r, c) = 1;
      if (u.a1 == v.a1 && u.x != v.x) rels[kA2].mat.at(r, c) = 1;
      if (fwd == -e || rev == -e) rels[kA3].mat.at(r, c) = 1;
      if (u.x == v.x && u.a1 == v.a1 && u.a2 != v.a2) rels[kA4].mat.at(r, c) = 1;
      if (fwd == e || rev == -e) rels[kA1p].mat.at(r, c) = 1;
      if (fwd == -e || rev == e) rels[kA3p].mat.at(r, c) = 1;
    }
  }

  auto dist = build_distance_matrices(h);
  for (int i = 0; i < 7; ++i) {
    if (rels[i].mat == dist[i]) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (rels[i].mat.at(r, c) != dist[i].at(r, c))
          throw Error(ErrKind::DefinitionMismatch,
                      rels[i].name + " predicate disagrees with block display at " +
                          pair_text(Index4k::from_linear(r, k),
                                    Index4k::from_linear(c, k)));
  }
  return rels;
}

SchemeCheckResult scheme_check(const std::vector<Relation>& rels) {
  SchemeCheckResult out;
  VerificationReport& rep = out.report;
  rep = make_report("scheme_check");

  int d = static_cast<int>(rels.size());
  if (d == 0) {
    rep.fail("empty relation family");
    return out;
  }
  int n = rels[0].side();
  detail_int(rep, "side", n);
  detail_int(rep, "classes", d);
  {
    nlohmann::json names = nlohmann::json::array();
    for (const auto& r : rels) names.push_back(r.name);
    rep.details["class_names"] = names.dump();
  }

  for (int i = 0; i < d; ++i) {
    if (rels[i].side() != n) {
      rep.fail("class " + rels[i].name + " has side " +
               std::to_string(rels[i].side()) + ", expected " + std::to_string(n));
      return out;
    }
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        long long v = rels[i].mat.at(r, c);
        if (v != 0 && v != 1) {
          rep.fail("class " + rels[i].name + " entry (" + std::to_string(r) + "," +
                   std::to_string(c) + ") = " + std::to_string(v) + " is not 0/1");
          return out;
        }
      }
  }

  // disjointness first; coverage gaps are recorded but do not stop the
  // remaining axioms, so a two-class fragment is still diagnosed as
  // NotClosed rather than merely undersized
  std::vector<int> class_of(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < d; ++i)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (!rels[i].mat.at(r, c)) continue;
        int& slot = class_of[static_cast<size_t>(r) * n + c];
        if (slot != -1) {
          rep.fail("cell (" + std::to_string(r) + "," + std::to_string(c) +
                   ") lies in both " + rels[slot].name + " and " + rels[i].name);
          return out;
        }
        slot = i;
      }
  bool covered = true;
  for (int r = 0; r < n && covered; ++r)
    for (int c = 0; c < n; ++c)
      if (class_of[static_cast<size_t>(r) * n + c] == -1) {
        rep.fail("cell (" + std::to_string(r) + "," + std::to_string(c) +
                 ") is covered by no class");
        covered = false;
        break;
      }

  std::vector<long long> sizes(d, 0);
  for (int v : class_of)
    if (v != -1) ++sizes[v];
  std::vector<int> empty;
  for (int i = 0; i < d; ++i)
    if (sizes[i] == 0) empty.push_back(i);

  // identity class
  IntMatrix ident_mat = int_identity(n);
  int ident = -1;
  for (int i = 0; i < d; ++i)
    if (rels[i].mat == ident_mat) {
      ident = i;
      break;
    }
  if (ident == -1)
    rep.fail("no class equals the identity matrix");
  else
    detail_int(rep, "identity_index", ident);
  out.identity_index = ident;

  // transpose closure, determined by a representative cell then verified
  // globally (empty classes count as their own transpose)
  std::vector<int> tmap(d, -1);
  bool tr_ok = true;
  for (int r = 0; r < n && tr_ok; ++r)
    for (int c = 0; c < n; ++c) {
      int i = class_of[static_cast<size_t>(r) * n + c];
      if (i == -1) continue;
      int it = class_of[static_cast<size_t>(c) * n + r];
      if (it == -1) {
        rep.fail("transpose of " + rels[i].name + " leaves the family at cell (" +
                 std::to_string(c) + "," + std::to_string(r) + ")");
        tr_ok = false;
        break;
      }
      if (tmap[i] == -1) tmap[i] = it;
      if (tmap[i] != it) {
        rep.fail("transpose of " + rels[i].name + " meets both " +
                 rels[tmap[i]].name + " and " + rels[it].name + "; witness cell (" +
                 std::to_string(r) + "," + std::to_string(c) + ")");
        tr_ok = false;
        break;
      }
    }
  for (int i = 0; i < d; ++i)
    if (tmap[i] == -1) tmap[i] = i;
  if (tr_ok)
    for (int i = 0; i < d; ++i)
      if (tmap[tmap[i]] != i) {
        rep.fail("transpose pairing is not an involution at " + rels[i].name);
        break;
      }
  out.transpose_map = tmap;
  detail_ints(rep, "transpose_map", std::vector<long long>(tmap.begin(), tmap.end()));

  // closure: each product must vanish off the family and be constant on
  // every class; stops at the first failing product
  out.tensor = IntersectionTensor(d);
  bool closed = true;
  for (int i = 0; i < d && closed; ++i)
    for (int j = 0; j < d && closed; ++j) {
      IntMatrix prod = matmul(rels[i].mat, rels[j].mat);
      std::vector<long long> coef(d, -1);
      std::vector<std::pair<int, int>> seen(d, {-1, -1});
      for (int r = 0; r < n && closed; ++r)
        for (int c = 0; c < n; ++c) {
          int l = class_of[static_cast<size_t>(r) * n + c];
          long long v = prod.at(r, c);
          if (l == -1) {
            if (v == 0) continue;
            rep.fail("NotClosed: " + rels[i].name + "*" + rels[j].name +
                     " has residual entry " + std::to_string(v) + " at (" +
                     std::to_string(r) + "," + std::to_string(c) +
                     ") outside every class");
            closed = false;
            break;
          }
          if (coef[l] == -1) {
            coef[l] = v;
            seen[l] = {r, c};
          } else if (coef[l] != v) {
            rep.fail("NotClosed: " + rels[i].name + "*" + rels[j].name +
                     " is not constant on " + rels[l].name + ": entry (" +
                     std::to_string(seen[l].first) + "," +
                     std::to_string(seen[l].second) + ") = " + std::to_string(coef[l]) +
                     " vs entry (" + std::to_string(r) + "," + std::to_string(c) +
                     ") = " + std::to_string(v));
            closed = false;
            break;
          }
        }
      if (closed)
        for (int l = 0; l < d; ++l)
          out.tensor.at(i, j, l) = coef[l] == -1 ? 0 : coef[l];
    }

  detail_ints(rep, "class_sizes", sizes);
  if (!empty.empty())
    detail_ints(rep, "empty_classes", std::vector<long long>(empty.begin(), empty.end()));
  if (closed) rep.details["p_tensor"] = tensor_json(out.tensor).dump();
  return out;
}

SchemeSpec hadamard_scheme(const HadamardMatrix& h) {
  auto rels = build_relations(h);
  SchemeSpec s;
  s.rels = {rels[kA0], rels[kA1], rels[kA2], rels[kA3], rels[kA4]};
  s.identity_index = 0;
  s.transpose_map = {0, 1, 2, 3, 4};
  return s;
}

SchemeSpec directed_hadamard_scheme(const HadamardMatrix& h) {
  auto rels = build_relations(h);
  SchemeSpec s;
  s.rels = {rels[kA0], rels[kA1p], rels[kA2], rels[kA3p], rels[kA4]};
  s.identity_index = 0;
  s.transpose_map = {0, 3, 2, 1, 4};
  return s;
}

std::vector<Relation> fiber_relations(const HadamardMatrix& h) {
  auto rels = build_relations(h);
  int k = h.order();
  int n = 4 * k;
  std::vector<Relation> out;
  out.reserve(10);
  for (int i = 0; i < 5; ++i)
    for (int lam = 0; lam < 2; ++lam) {
      Relation f{rels[i].name + "^" + std::to_string(lam), IntMatrix(n)};
      for (int r = 0; r < n; ++r) {
        if (Index4k::from_linear(r, k).a1 != lam) continue;
        for (int c = 0; c < n; ++c) f.mat.at(r, c) = rels[i].mat.at(r, c);
      }
      out.push_back(std::move(f));
    }
  return out;
}

VerificationReport coherent_config_check(const HadamardMatrix& h) {
  VerificationReport rep = make_report("coherent_config_check", h.order());

  SchemeCheckResult base = scheme_check(hadamard_scheme(h).rels);
  if (!base.ok()) {
    rep.fail("underlying Hadamard scheme failed: " + base.report.witnesses.front());
    return rep;
  }

  auto fib = fiber_relations(h);
  int n = 4 * h.order();
  int checked = 0;
  for (int i = 0; i < 5; ++i)
    for (int lam = 0; lam < 2; ++lam)
      for (int j = 0; j < 5; ++j)
        for (int mu = 0; mu < 2; ++mu) {
          ++checked;
          IntMatrix prod = matmul(fib[2 * i + lam].mat, fib[2 * j + mu].mat);
          IntMatrix expect(n);
          if ((i + lam) % 2 == mu)
            for (int l = 0; l < 5; ++l) {
              if (l % 2 != (i + j) % 2) continue;
              long long p = base.tensor.at(i, j, l);
              if (p) axpy(expect, p, fib[2 * l + lam].mat);
            }
          if (prod == expect) continue;
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
              if (prod.at(r, c) != expect.at(r, c)) {
                rep.fail("RuleViolation: " + fib[2 * i + lam].name + "*" +
                         fib[2 * j + mu].name + " differs from the product rule at (" +
                         std::to_string(r) + "," + std::to_string(c) + "): got " +
                         std::to_string(prod.at(r, c)) + ", rule gives " +
                         std::to_string(expect.at(r, c)));
                r = n;
                break;
              }
        }
  detail_int(rep, "combinations_checked", checked);
  return rep;
}

int rho_image(int c) {
  int i = c / 2, lam = c % 2;
  int j = i == 1 ? 3 : i == 3 ? 1 : i;
  return 2 * j + (1 - lam);
}

VerificationReport rho_automorphism_check(const HadamardMatrix& h) {
  VerificationReport rep = make_report("rho_automorphism_check", h.order());

  VerificationReport cc = coherent_config_check(h);
  if (!cc.ok()) {
    rep.fail("configuration product rule failed: " + cc.witnesses.front());
    return rep;
  }

  auto fib = fiber_relations(h);
  int n = 4 * h.order();

  for (int c = 0; c < 10; ++c)
    if (rho_image(rho_image(c)) != c) {
      rep.fail("rho is not an involution at " + fib[c].name);
      return rep;
    }

  // structure constants of the ten-relation configuration, recomputed
  // independently of the product rule (constancy on classes included)
  std::vector<int> class_of(static_cast<size_t>(n) * n, -1);
  for (int u = 0; u < 10; ++u)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (fib[u].mat.at(r, c)) class_of[static_cast<size_t>(r) * n + c] = u;

  IntersectionTensor q(10);
  for (int s = 0; s < 10; ++s)
    for (int t = 0; t < 10; ++t) {
      IntMatrix prod = matmul(fib[s].mat, fib[t].mat);
      std::vector<long long> coef(10, -1);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          int u = class_of[static_cast<size_t>(r) * n + c];
          long long v = prod.at(r, c);
          if (coef[u] == -1)
            coef[u] = v;
          else if (coef[u] != v) {
            rep.fail("configuration is not coherent: " + fib[s].name + "*" +
                     fib[t].name + " is not constant on " + fib[u].name);
            return rep;
          }
        }
      for (int u = 0; u < 10; ++u) q.at(s, t, u) = coef[u] == -1 ? 0 : coef[u];
    }

  int checked = 0;
  for (int s = 0; s < 10; ++s)
    for (int t = 0; t < 10; ++t)
      for (int u = 0; u < 10; ++u) {
        ++checked;
        long long lhs = q.at(rho_image(s), rho_image(t), rho_image(u));
        long long rhs = q.at(s, t, u);
        if (lhs != rhs)
          rep.fail("NotAutomorphism: q(" + fib[rho_image(s)].name + "," +
                   fib[rho_image(t)].name + ";" + fib[rho_image(u)].name + ") = " +
                   std::to_string(lhs) + " but q(" + fib[s].name + "," + fib[t].name +
                   ";" + fib[u].name + ") = " + std::to_string(rhs));
      }
  detail_int(rep, "triples_checked", checked);
  return rep;
}

SchemeSpec fuse_rho_orbits(const HadamardMatrix& h) {
  VerificationReport auto_check = rho_automorphism_check(h);
  if (!auto_check.ok())
    throw Error(ErrKind::FusionMismatch,
                "rho automorphism check failed: " + auto_check.witnesses.front());

  auto fib = fiber_relations(h);
  auto rels = build_relations(h);
  const Relation* expected[5] = {&rels[kA0], &rels[kA1p], &rels[kA2], &rels[kA3p],
                                 &rels[kA4]};
  std::vector<Relation> fused(5);
  std::vector<bool> used(10, false), claimed(5, false);

  for (int c = 0; c < 10; ++c) {
    if (used[c]) continue;
    int d = rho_image(c);
    used[c] = used[d] = true;
    IntMatrix u = add(fib[c].mat, fib[d].mat);
    std::string orbit = "{" + fib[c].name + "," + fib[d].name + "}";
    int hit = -1;
    for (int i = 0; i < 5; ++i)
      if (!claimed[i] && u == expected[i]->mat) {
        hit = i;
        break;
      }
    if (hit == -1)
      throw Error(ErrKind::FusionMismatch,
                  "orbit " + orbit + " does not fuse to any of R0, R1p, R2, R3p, R4");
    claimed[hit] = true;
    u.set_label(expected[hit]->name);
    fused[hit] = Relation{expected[hit]->name, std::move(u)};
  }

  SchemeCheckResult chk = scheme_check(fused);
  if (!chk.ok())
    throw Error(ErrKind::FusionMismatch,
                "fused family fails scheme axioms: " + chk.report.witnesses.front());

  SchemeSpec s;
  s.rels = std::move(fused);
  s.identity_index = chk.identity_index;
  s.transpose_map = chk.transpose_map;
  return s;
}

SchemeSpec cyclic_scheme(int n) {
  if (n < 1)
    throw Error(ErrKind::ConstraintViolation, "cyclic scheme needs n >= 1, got " +
                                                  std::to_string(n));
  SchemeSpec s;
  s.rels.reserve(n);
  for (int i = 0; i < n; ++i) {
    Relation r{"C" + std::to_string(i), IntMatrix(n)};
    for (int row = 0; row < n; ++row) r.mat.at(row, (row + i) % n) = 1;
    s.rels.push_back(std::move(r));
  }
  s.identity_index = 0;
  s.transpose_map.resize(n);
  for (int i = 0; i < n; ++i) s.transpose_map[i] = (n - i) % n;
  return s;
}

}  // namespace spinkit
