#include "mfib/commands.hpp"

namespace mfib::cmd {

namespace {

struct Builder {
  json checks = json::array();
  json witnesses = json::object();
  json events = json::array();
  json outputs = json::object();
  bool all_ok = true;

  bool check(const std::string& name, bool ok, const std::string& detail = {}) {
    json c{{"name", name}, {"ok", ok}};
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
    if (!ok) all_ok = false;
    return ok;
  }
  Report done(Status s, const std::string& verdict) {
    Report r;
    r.status = s;
    r.body = json{{"verdict", verdict}, {"checks", checks}, {"witnesses", witnesses}, {"budget_events", events}};
    if (!outputs.empty()) r.body["outputs"] = outputs;
    return r;
  }
};

std::string simplex_name(const CDiagram& D, const GammaSimplex& s) {
  return D.cat->object(s.obj) + ":" + D[s.obj].simplex_string(s.dim, s.idx);
}

json basis_json(const CDiagram& D, const FreeBasis& b) {
  json j = json::array();
  for (const auto& g : b.gens) j.push_back(json{{"object", D.cat->object(g.obj)}, {"dim", g.dim}, {"simplex", D[g.obj].simplex_string(g.dim, g.idx)}});
  return j;
}

json counts_json(const CDiagram& D) {
  json j = json::object();
  for (int c = 0; c < D.cat->num_objects(); ++c) {
    json sizes = json::array();
    for (int n = 0; n <= D.truncation(); ++n) sizes.push_back(D[c].size(n));
    j[D.cat->object(c)] = json{{"generators", D[c].generator_counts()}, {"simplices", sizes}};
  }
  return j;
}

const char* status_text(SearchStatus s) { return status_name(s); }

}  // namespace

Report validate_diagram(const CDiagram& D) {
  Builder b;
  const FiniteCategory& C = *D.cat;
  auto law = C.validate();
  b.check("category laws", law.ok, law.message);
  b.witnesses["truncation"] = D.truncation();
  b.witnesses["objects"] = C.num_objects();
  b.witnesses["morphisms"] = C.num_morphisms();
  b.witnesses["is_ei"] = C.is_ei();
  for (int c = 0; c < C.num_objects(); ++c) {
    auto e = D[c].check_identities();
    b.check("simplicial identities at " + C.object(c), !e, e.value_or(""));
  }
  auto d = D.defect();
  b.check("functoriality and simpliciality of the action", !d, d.value_or(""));
  if (!b.all_ok) return b.done(Status::False, "invalid");
  return b.done(Status::Ok, "valid");
}

Report basis(const CDiagram& D) {
  Builder b;
  auto d = D.defect();
  if (d) {
    b.check("diagram valid", false, *d);
    return b.done(Status::Invalid, "invalid input");
  }
  BasisReport r = compute_basis(D);
  b.witnesses["truncation"] = D.truncation();
  if (!r.basis) {
    b.check("free", false, r.reason);
    json off = json::array();
    for (const auto& s : r.offending) off.push_back(simplex_name(D, s));
    b.witnesses["offending"] = off;
    return b.done(Status::False, "not free");
  }
  b.check("free", true);
  b.witnesses["basis"] = basis_json(D, *r.basis);
  b.witnesses["basis_size"] = r.basis->gens.size();
  BasisReport again = verify_basis(D, r.basis->gens);
  b.check("basis re-verified", again.basis.has_value(), again.reason);
  return b.done(b.all_ok ? Status::Ok : Status::False, b.all_ok ? "free" : "not free");
}

Report fibration_check(const Fibration& p, int dim) {
  Builder b;
  try {
    p.validate();
    b.check("projection is a natural simplicial map", true);
  } catch (const Error& e) {
    b.check("projection is a natural simplicial map", false, e.what());
    return b.done(Status::False, "not a map of diagrams");
  }
  if (dim > p.total.truncation() || dim > p.base.truncation())
    throw TruncationError("--dim exceeds the truncation of the input");
  FibrationReport r = is_fibration_upto(p, dim);
  b.witnesses["dim"] = dim;
  json fails = json::array();
  long long horns = 0;
  for (const auto& [c, k] : r.per_object) {
    horns += k.horns_checked;
    for (const auto& f : k.failures) {
      json faces = json::array();
      for (int i = 0; i <= f.horn.n; ++i)
        faces.push_back(i == f.horn.k ? json(nullptr) : json(p.total[c].simplex_string(f.horn.n - 1, f.horn.faces[i])));
      fails.push_back(json{{"object", p.total.cat->object(c)},
                           {"n", f.horn.n},
                           {"k", f.horn.k},
                           {"faces", faces},
                           {"over", p.base[c].simplex_string(f.horn.n, f.base)}});
    }
  }
  b.witnesses["horns_checked"] = horns;
  b.check("Kan lifting up to dim " + std::to_string(dim), r.ok);
  if (!r.ok) {
    b.witnesses["failing_horns"] = fails;
    return b.done(Status::False, "not a fibration");
  }
  return b.done(Status::Ok, "fibration up to dim " + std::to_string(dim));
}

Report minimal_model(const Fibration& p, int dim, long long budget) {
  Builder b;
  p.validate();
  BasisReport br = compute_basis(p.total);
  if (!br.basis) {
    b.check("total diagram free", false, br.reason);
    return b.done(Status::False, "total diagram is not free");
  }
  b.check("total diagram free", true);
  MinimalModel m = extract_minimal(p, *br.basis, dim, budget);
  b.witnesses["dim"] = dim;
  b.witnesses["budget"] = budget;
  b.witnesses["nodes"] = m.nodes;
  if (m.status == SearchStatus::Exhausted) {
    b.events.push_back(m.failure);
    return b.done(Status::Budget, "budget exhausted");
  }
  if (m.status != SearchStatus::Found) {
    b.check("extraction", false, m.failure);
    return b.done(Status::False, "extraction failed");
  }
  json sp = json::array();
  for (const auto& s : m.sigma_prime) sp.push_back(simplex_name(p.total, s));
  b.witnesses["sigma_prime"] = sp;
  b.witnesses["model"] = counts_json(m.sub.total);
  b.witnesses["input"] = counts_json(p.total);
  json steps = json::array();
  for (const auto& s : m.steps) {
    const SSet& X = p.total[s.z.obj];
    json top = json::array();
    for (int v : s.top) top.push_back(X.simplex_string(s.z.dim + 1, v));
    steps.push_back(json{{"z", simplex_name(p.total, s.z)},
                         {"z1", X.simplex_string(s.z.dim, s.z1)},
                         {"y", X.simplex_string(s.z.dim, s.y)},
                         {"homotopy_top", top}});
  }
  b.witnesses["steps"] = steps;
  json ret = json::object();
  for (int c = 0; c < p.total.cat->num_objects(); ++c) {
    json lv = json::array();
    for (int n = 0; n <= m.retraction[c].truncation(); ++n) {
      json row = json::array();
      for (int x : m.retraction[c].level[n]) row.push_back(p.total[c].simplex_string(n, x));
      lv.push_back(row);
    }
    ret[p.total.cat->object(c)] = lv;
  }
  b.witnesses["retraction"] = ret;
  auto defect = model_defect(p, m);
  b.check("retract identities (H_1 = id, H_0 = r, H fixes the model, p H = p, naturality)", !defect, defect.value_or(""));
  BasisReport sb = verify_basis(m.sub.total, m.sub_basis.gens);
  b.check("model basis", sb.basis.has_value(), sb.reason);
  MinimalityReport mr = is_minimal(m.sub, m.sub_basis, dim, budget);
  if (mr.up_to_budget) b.events.push_back("minimality of the model certified only up to budget");
  b.check("model minimal up to dim " + std::to_string(dim), mr.minimal);
  b.witnesses["model_minimal_up_to_budget"] = mr.up_to_budget;
  b.outputs["model.json"] = io::fibration_json(m.sub);
  if (!b.all_ok) return b.done(Status::False, "model failed verification");
  return b.done(Status::Ok, "constructed");
}

Report tcp_build(const SSet& B, const GroupAction& A, const TwistingFunction& t, int dim) {
  Builder b;
  auto td = twisting_defect(B, *A.group, t);
  if (td) {
    b.check("twisting function", false, td->identity + " at " + B.simplex_string(td->n, td->v));
    return b.done(Status::Invalid, "invalid twisting function");
  }
  b.check("twisting function", true);
  Tcp X = build_tcp(B, t, A);
  auto d = X.bundle.total.defect();
  b.check("naturality", !d, d.value_or(""));
  b.witnesses["truncation"] = X.dim();
  b.witnesses["total"] = counts_json(X.bundle.total);
  json comps = json::object();
  for (int c = 0; c < X.bundle.total.cat->num_objects(); ++c)
    comps[X.bundle.total.cat->object(c)] = connected_components(X.bundle.total[c]);
  b.witnesses["components"] = comps;
  if (dim >= 0) {
    if (dim > X.dim()) throw TruncationError("--dim exceeds the bundle truncation");
    FibrationReport r = is_fibration_upto(X.bundle, dim);
    b.check("Kan fibration up to dim " + std::to_string(dim), r.ok);
  }
  b.outputs["tcp.json"] = io::fibration_json(X.bundle);
  if (!b.all_ok) return b.done(Status::False, "bundle failed verification");
  return b.done(Status::Ok, "constructed");
}

Report twisting_verify(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t) {
  Builder b;
  b.witnesses["dim"] = t.dim();
  auto d = twisting_defect(B, G, t);
  if (d) {
    b.witnesses["violation"] = json{{"identity", d->identity}, {"simplex", B.simplex_string(d->n, d->v)}, {"dim", d->n}};
    b.check("twisting identities", false, d->identity);
    return b.done(Status::False, "not a twisting function");
  }
  b.check("twisting identities", true);
  return b.done(Status::Ok, "valid");
}

Report twisting_classify(const SSet& B, const SimplicialGroup& G, int dim, long long budget) {
  Builder b;
  if (dim > B.truncation() || dim > G.truncation()) throw TruncationError("--dim exceeds the truncation of the input");
  SSet Bt = truncate_set(B, dim);
  TwistingSearch ts = enumerate_twistings(Bt, G, dim, budget);
  b.witnesses["dim"] = dim;
  if (ts.status == SearchStatus::Exhausted) {
    b.events.push_back("twisting enumeration exhausted after " + std::to_string(ts.nodes) + " nodes");
    return b.done(Status::Budget, "budget exhausted");
  }
  const int T = static_cast<int>(ts.found.size());
  std::vector<int> cls(T, -1);
  json gammas = json::array();
  int classes = 0;
  bool exhausted = false;
  for (int i = 0; i < T; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = classes;
    for (int j = i + 1; j < T; ++j) {
      if (cls[j] >= 0) continue;
      EquivalenceSearch e = twisting_equivalent(Bt, G, ts.found[i], ts.found[j], budget);
      if (e.status == SearchStatus::Exhausted) exhausted = true;
      if (e.status != SearchStatus::Found) continue;
      cls[j] = classes;
      auto gd = gamma_defect(Bt, G, ts.found[i], ts.found[j], e.gamma);
      b.check("gamma " + std::to_string(i) + "->" + std::to_string(j), !gd, gd.value_or(""));
      gammas.push_back(json{{"from", i}, {"to", j}, {"gamma", io::gamma_json(Bt, G, e.gamma)}});
    }
    ++classes;
  }
  json tw = json::array();
  for (const auto& t : ts.found) tw.push_back(io::twisting_json(Bt, G, t));
  b.witnesses["twistings"] = tw;
  b.witnesses["class_of"] = cls;
  b.witnesses["classes"] = classes;
  b.witnesses["equivalences"] = gammas;
  if (exhausted) {
    b.events.push_back("some equivalence searches hit the budget; classes may be split");
    return b.done(Status::Budget, "budget exhausted");
  }
  return b.done(b.all_ok ? Status::Ok : Status::False, std::to_string(classes) + " classes");
}

Report wbar(const SimplicialGroup& G, int dim) {
  Builder b;
  Wbar W = mfib::wbar(G, dim);
  json sizes = json::array();
  for (int n = 0; n <= dim; ++n) sizes.push_back(W.set.set.size(n));
  b.witnesses["dim"] = dim;
  b.witnesses["simplices"] = sizes;
  b.witnesses["generators"] = W.set.set.generator_counts();
  auto e = W.set.set.check_identities();
  b.check("simplicial identities", !e, e.value_or(""));
  auto td = twisting_defect(W.set.set, G, W.tau);
  b.check("universal twisting function", !td, td ? td->identity : "");
  b.outputs["wbar.json"] = io::presentation_json(W.set.set);
  b.outputs["tau.json"] = io::twisting_json(W.set.set, G, W.tau);
  return b.done(b.all_ok ? Status::Ok : Status::False, b.all_ok ? "constructed" : "failed verification");
}

Report atlas_normalize(const io::AtlasInput& in) {
  Builder b;
  const SSet B = truncate_set(in.base, in.atlas.dim);
  auto d = atlas_defect(in.atlas, in.tcp.bundle, in.action);
  if (d) {
    b.check("atlas", false, *d);
    return b.done(Status::False, "not an atlas");
  }
  b.check("atlas", true);
  const bool was = atlas_is_normal(in.atlas, B);
  b.witnesses["input_normal"] = was;
  Atlas n = normalize_atlas(in.atlas, B);
  b.check("output normal", atlas_is_normal(n, B));
  auto nd = atlas_defect(n, in.tcp.bundle, in.action);
  b.check("output is an atlas", !nd, nd.value_or(""));
  // The normal atlas in file form: gamma forced on degenerate simplices.
  const SimplicialGroup& G = *in.action.group;
  GammaFunction g = in.gamma;
  json changed = json::array();
  for (int m = 1; m < static_cast<int>(g.size()); ++m)
    for (int v = 0; v < B.size(m); ++v) {
      if (!B.degenerate(m, v)) continue;
      int j = B.ref(m, v).word.front();
      int f = G.degen(m - 1, g[m - 1][B.face(m, v, j)], j);
      if (g[m][v] != f) changed.push_back(B.simplex_string(m, v));
      g[m][v] = f;
    }
  b.witnesses["redefined"] = changed;
  for (int m = 0; m <= n.dim; ++m)
    for (int v = 0; v < B.size(m); ++v)
      if (!B.degenerate(m, v) && n.beta[m][v] != in.atlas.beta[m][v]) b.check("non-degenerate simplices untouched", false);
  Atlas check = perturb_atlas(tautological_atlas(in.tcp, B, in.twisting, in.action), in.action, g);
  b.check("file form reproduces the normal atlas", check.beta == n.beta);
  b.outputs["atlas.json"] = io::atlas_json(in, g);
  if (!b.all_ok) return b.done(Status::False, "normalization failed verification");
  return b.done(Status::Ok, was ? "already normal" : "normalized");
}

Report atlas_regularize(const io::AtlasInput& in, long long budget) {
  Builder b;
  const SimplicialGroup& G = *in.action.group;
  const SSet B = truncate_set(in.base, in.atlas.dim);
  auto d = atlas_defect(in.atlas, in.tcp.bundle, in.action);
  if (d) {
    b.check("atlas", false, *d);
    return b.done(Status::False, "not an atlas");
  }
  Atlas a = in.atlas;
  GammaFunction g = in.gamma;
  if (!atlas_is_normal(a, B)) {
    b.events.push_back("input atlas was not normal; normalized first");
    a = normalize_atlas(a, B);
    for (int m = 1; m < static_cast<int>(g.size()); ++m)
      for (int v = 0; v < B.size(m); ++v)
        if (B.degenerate(m, v)) {
          int j = B.ref(m, v).word.front();
          g[m][v] = G.degen(m - 1, g[m - 1][B.face(m, v, j)], j);
        }
  }
  TransformationElements xi = transformation_elements(a, B, in.action);
  if (xi.status != SearchStatus::Found) {
    b.check("G-atlas", false, xi.failure);
    return b.done(Status::False, "not a G-atlas");
  }
  b.check("G-atlas", true);
  b.witnesses["input_regular"] = is_regular(xi, G);
  if (!xi.unique) b.events.push_back("action not faithful; least transformation elements used");
  Regularized r = regularize(a, B, in.action, budget);
  b.witnesses["nodes"] = r.nodes;
  if (r.status == SearchStatus::Exhausted) {
    b.events.push_back("regularization search exhausted");
    return b.done(Status::Budget, "budget exhausted");
  }
  if (r.status != SearchStatus::Found) {
    b.check("regular atlas in the class", false);
    return b.done(Status::False, "no regular atlas found");
  }
  GammaFunction total = g;
  for (std::size_t m = 0; m < total.size(); ++m)
    for (std::size_t v = 0; v < total[m].size(); ++v) total[m][v] = G.mul(static_cast<int>(m), g[m][v], r.gamma[m][v]);
  TransformationElements xr = transformation_elements(r.atlas, B, in.action);
  b.check("output regular", is_regular(xr, G));
  auto ad = atlas_defect(r.atlas, in.tcp.bundle, in.action);
  b.check("output is an atlas", !ad, ad.value_or(""));
  TwistingFunction t0 = xi0_twisting(xr);
  auto td = twisting_defect(B, G, t0);
  b.check("xi^0 is a twisting function", !td, td ? td->identity : "");
  EquivalenceSearch e = twisting_equivalent(B, G, in.twisting, t0, budget);
  b.check("same G-class as the input", e.status == SearchStatus::Found, status_text(e.status));
  Atlas check = perturb_atlas(tautological_atlas(in.tcp, B, in.twisting, in.action), in.action, total);
  b.check("file form reproduces the regular atlas", check.beta == r.atlas.beta);
  b.witnesses["correction"] = io::gamma_json(B, G, r.gamma);
  b.witnesses["xi0"] = io::twisting_json(B, G, t0);
  b.outputs["atlas.json"] = io::atlas_json(in, total);
  b.outputs["twisting.json"] = io::twisting_json(B, G, t0);
  if (!b.all_ok) return b.done(Status::False, "regularization failed verification");
  return b.done(Status::Ok, "regular");
}

Report classify_bundles(const SSet& B, const GroupAction& A, int dim, long long budget) {
  Builder b;
  ClassifyReport c = classify(B, A, dim, budget);
  b.witnesses["dim"] = dim;
  b.witnesses["twistings"] = c.twistings.size();
  b.witnesses["twisting_classes"] = c.twisting_classes;
  b.witnesses["twisting_class_of"] = c.twisting_class;
  b.witnesses["maps"] = c.maps.size();
  b.witnesses["map_classes"] = c.map_classes;
  b.witnesses["map_class_of"] = c.map_class;
  b.witnesses["nodes"] = c.nodes;
  for (const auto& n : c.notes) b.events.push_back(n);
  if (c.status == SearchStatus::Exhausted) return b.done(Status::Budget, "budget exhausted");
  SSet Bt = truncate_set(B, dim);
  json tw = json::array();
  for (const auto& t : c.twistings) tw.push_back(io::twisting_json(Bt, *A.group, t));
  b.witnesses["twisting_functions"] = tw;
  b.check("equivalent twistings give isomorphic bundles", c.tcp_isos_ok);
  b.check("t -> f_t is a bijection of classes", c.bijection);
  if (!b.all_ok) return b.done(Status::False, "correspondence not confirmed");
  return b.done(Status::Ok, std::to_string(c.twisting_classes) + " classes on both sides");
}

}  // namespace mfib::cmd
