#include "mfib/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mfib::io {

namespace fs = std::filesystem;

ParseError::ParseError(std::string f, std::string p, std::string t, const std::string& msg)
    : ValidationError(f + ":" + (p.empty() ? "/" : p) + ": " + msg + (t.empty() ? "" : " (token '" + t + "')")),
      file(std::move(f)),
      path(std::move(p)),
      token(std::move(t)) {}

namespace {

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Rejects keys outside the allowed set, so a file of the wrong kind fails.
void only_fields(const Node& n, std::initializer_list<const char*> allowed) {
  if (!n->is_object()) n.fail("expected an object");
  for (auto it = n->begin(); it != n->end(); ++it)
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; }))
      n.fail("unknown field", it.key());
}

std::string token_of(const json& j) {
  std::string s = j.dump();
  return s.size() > 60 ? s.substr(0, 57) + "..." : s;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

// "s3 s1 x" against generator names; degeneracies must strictly decrease.
SimplexRef parse_face_ref(const Node& n, const std::map<std::string, int>& names) {
  auto tok = split_ws(n.as_string());
  if (tok.empty()) n.fail("empty simplex reference");
  SimplexRef r;
  auto it = names.find(tok.back());
  if (it == names.end()) n.fail("unknown generator", tok.back());
  r.gen = it->second;
  for (std::size_t i = 0; i + 1 < tok.size(); ++i) {
    const std::string& s = tok[i];
    if (s.size() < 2 || s[0] != 's' || s.find_first_not_of("0123456789", 1) != std::string::npos)
      n.fail("expected a degeneracy s<k>", s);
    int k = std::stoi(s.substr(1));
    if (!r.word.empty() && k >= r.word.back()) n.fail("degeneracy word is not strictly decreasing", s);
    r.word.push_back(k);
  }
  return r;
}

int parse_simplex(const Node& n, const SSet& X, int dim) {
  SimplexRef r;
  try {
    r = X.parse_ref(n.as_string());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    n.fail(e.what(), n.as_string());
  }
  if (X.ref_dim(r) != dim)
    n.fail("simplex has dimension " + std::to_string(X.ref_dim(r)) + ", expected " + std::to_string(dim), n.as_string());
  if (dim > X.truncation()) n.fail("simplex above truncation", n.as_string());
  return X.index(dim, r);
}

int element_index(const Node& n, const FiniteGroup& G) {
  if (n->is_number_integer()) {
    int k = n.as_int();
    if (k < 0 || k >= G.order()) n.fail("element index out of range", token_of(*n));
    return k;
  }
  int k = G.index_of(n.as_string());
  if (k < 0) n.fail("unknown group element", n.as_string());
  return k;
}

// Simplex reference -> (dim, index), dimension read off the reference.
std::pair<int, int> parse_any_simplex(const Node& n, const SSet& X) {
  SimplexRef r;
  try {
    r = X.parse_ref(n.as_string());
  } catch (const Error& e) {
    n.fail(e.what(), n.as_string());
  }
  int d = X.ref_dim(r);
  if (d > X.truncation()) n.fail("simplex above truncation", n.as_string());
  return {d, X.index(d, r)};
}

}  // namespace

Node Node::at(const std::string& key) const {
  if (!value->is_object()) fail("expected an object");
  auto it = value->find(key);
  if (it == value->end()) fail("missing field '" + key + "'", key);
  return Node{&*it, file, path + "/" + escape_pointer(key), dir};
}

Node Node::at(std::size_t i) const {
  if (!value->is_array() || i >= value->size()) fail("expected an array with index " + std::to_string(i));
  return Node{&(*value)[i], file, path + "/" + std::to_string(i), dir};
}

void Node::fail(const std::string& msg, const std::string& token) const {
  throw ParseError(file, path, token.empty() && value ? token_of(*value) : token, msg);
}

int Node::as_int() const {
  if (!value->is_number_integer()) fail("expected an integer");
  long long v = value->get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) fail("integer out of range");
  return static_cast<int>(v);
}

long long Node::as_int64() const {
  if (!value->is_number_integer()) fail("expected an integer");
  return value->get<long long>();
}

std::string Node::as_string() const {
  if (!value->is_string()) fail("expected a string");
  return value->get<std::string>();
}

Loader::Loader(fs::path cwd) : cwd_(std::move(cwd)) {}

Node Loader::load_file(const fs::path& p, const Node* from, const std::string& shown) {
  std::string label = shown;
  if (label.empty()) {
    // Paths below the working directory are shown relative to it.
    fs::path rel = p.lexically_normal().lexically_relative(cwd_);
    label = rel.empty() || *rel.begin() == ".." ? p.lexically_normal().string() : rel.string();
  }
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    if (from) from->fail("cannot open referenced file", p.string());
    throw ParseError(label, "", "", "cannot open file");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError(label, "", "byte " + std::to_string(e.byte), "malformed JSON");
  }
  docs_.push_back(std::move(doc));
  std::string name = p.lexically_normal().string();
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
  return Node{&docs_.back(), label, "", p.parent_path()};
}

Node Loader::open(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) p = cwd_ / p;
  Node n = load_file(p, nullptr, path);
  n.file = path;
  return n;
}

Node Loader::parse_text(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(name, "", "byte " + std::to_string(e.byte), "malformed JSON");
  }
  docs_.push_back(std::move(doc));
  return Node{&docs_.back(), name, "", cwd_};
}

Node Loader::resolve(const Node& n) {
  if (!n->is_string()) return n;
  fs::path p(n.as_string());
  if (p.is_relative()) p = n.dir / p;
  return load_file(p, &n);
}

// ---------------------------------------------------------------- readers

SSet Loader::presentation(const Node& n0) {
  Node n = resolve(n0);
  if (!n->is_object()) n.fail("expected a presentation object");
  const int N = n.at("truncation").as_int();
  if (N < 0) n.at("truncation").fail("truncation must be non-negative");
  try {
    if (n.has("builtin")) {
      const std::string kind = n.at("builtin").as_string();
      if (kind == "simplex") return standard_simplex(n.at("n").as_int(), N);
      if (kind == "boundary") return boundary(n.at("n").as_int(), N);
      if (kind == "horn") return horn(n.at("n").as_int(), n.at("k").as_int(), N);
      if (kind == "point") return point(N);
      if (kind == "empty") return empty_set(N);
      if (kind == "circle") return circle(N);
      if (kind == "nerve") return group_nerve(finite_group(n.at("group")), N);
      if (kind == "codiscrete") return codiscrete_nerve(n.at("points").as_int(), N);
      if (kind == "discrete") return discrete_set(n.at("points").as_int(), N);
      if (kind == "wbar") return wbar(*group(n.at("group")), N).set.set;
      n.at("builtin").fail("unknown builtin presentation", kind);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    n.fail(e.what());
  }
  Node gens = n.at("generators");
  if (!gens->is_array()) gens.fail("expected per-dimension name lists");
  std::vector<Generator> out;
  std::map<std::string, int> names;
  for (std::size_t d = 0; d < gens->size(); ++d) {
    Node level = gens.at(d);
    if (!level->is_array()) level.fail("expected a list of names");
    for (std::size_t k = 0; k < level->size(); ++k) {
      Node nm = level.at(k);
      std::string s = nm.as_string();
      if (!names.emplace(s, static_cast<int>(out.size())).second) nm.fail("duplicate generator name", s);
      out.push_back({s, static_cast<int>(d), {}});
    }
  }
  Node faces = n.has("faces") ? n.at("faces") : Node{};
  for (auto& g : out) {
    if (g.dim == 0) continue;
    if (!faces.value) n.fail("missing field 'faces'");
    Node f = faces.at(g.name);
    if (!f->is_array() || static_cast<int>(f->size()) != g.dim + 1)
      f.fail("generator of dimension " + std::to_string(g.dim) + " needs " + std::to_string(g.dim + 1) + " faces");
    for (std::size_t i = 0; i < f->size(); ++i) {
      SimplexRef r = parse_face_ref(f.at(i), names);
      if (out[r.gen].dim + static_cast<int>(r.word.size()) != g.dim - 1 || !word_valid(r.word, out[r.gen].dim))
        f.at(i).fail("face has the wrong dimension or an invalid word", f.at(i).as_string());
      g.faces.push_back(r);
    }
  }
  if (faces.value && faces->is_object())
    for (auto it = faces->begin(); it != faces->end(); ++it)
      if (!names.count(it.key())) faces.fail("faces given for unknown generator", it.key());
  try {
    return SSet::from_presentation(N, std::move(out));
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

FiniteGroup Loader::finite_group(const Node& n0) {
  Node n = resolve(n0);
  if (n.has("builtin")) {
    const std::string kind = n.at("builtin").as_string();
    if (kind == "cyclic") return FiniteGroup::cyclic(n.at("order").as_int());
    if (kind == "symmetric") return FiniteGroup::symmetric(n.at("n").as_int());
    n.at("builtin").fail("unknown builtin group", kind);
  }
  Node el = n.at("elements");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < el->size(); ++i) names.push_back(el.at(i).as_string());
  Node tab = n.at("table");
  const int k = static_cast<int>(names.size());
  if (!tab->is_array() || static_cast<int>(tab->size()) != k) tab.fail("table needs one row per element");
  std::vector<std::vector<int>> mult(k, std::vector<int>(k));
  FiniteGroup lookup;
  lookup.names = names;
  for (int a = 0; a < k; ++a) {
    Node row = tab.at(a);
    if (!row->is_array() || static_cast<int>(row->size()) != k) row.fail("row needs one entry per element");
    for (int b = 0; b < k; ++b) {
      Node e = row.at(b);
      if (e->is_number_integer()) {
        mult[a][b] = e.as_int();
        if (mult[a][b] < 0 || mult[a][b] >= k) e.fail("element index out of range");
      } else {
        auto it = std::find(names.begin(), names.end(), e.as_string());
        if (it == names.end()) e.fail("unknown group element", e.as_string());
        mult[a][b] = static_cast<int>(it - names.begin());
      }
    }
  }
  try {
    return FiniteGroup::from_table(names, mult);
  } catch (const Error& e) {
    tab.fail(e.what());
  }
}

std::shared_ptr<const SimplicialGroup> Loader::group(const Node& n0) {
  Node n = resolve(n0);
  try {
    if (!n.has("levels")) {
      FiniteGroup G = finite_group(n);
      return std::make_shared<const SimplicialGroup>(SimplicialGroup::constant(G, n.at("truncation").as_int()));
    }
    Node lv = n.at("levels");
    std::vector<FiniteGroup> levels;
    for (std::size_t i = 0; i < lv->size(); ++i) levels.push_back(finite_group(lv.at(i)));
    const int N = static_cast<int>(levels.size()) - 1;
    std::vector<std::vector<int>> face(N + 1), degen(N + 1);
    auto read_ops = [&](const Node& ops, int n, int target, std::vector<int>& out) {
      Node row = ops.at(static_cast<std::size_t>(n));
      if (!row->is_array() || static_cast<int>(row->size()) != levels[n].order())
        row.fail("need one operator list per element");
      for (int g = 0; g < levels[n].order(); ++g) {
        Node imgs = row.at(g);
        if (!imgs->is_array() || static_cast<int>(imgs->size()) != n + 1) imgs.fail("need n+1 operator values");
        for (int i = 0; i <= n; ++i) out.push_back(element_index(imgs.at(i), levels[target]));
      }
    };
    for (int k = 1; k <= N; ++k) read_ops(n.at("faces"), k, k - 1, face[k]);
    for (int k = 0; k < N; ++k) read_ops(n.at("degeneracies"), k, k + 1, degen[k]);
    return std::make_shared<const SimplicialGroup>(SimplicialGroup::from_tables(levels, face, degen));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

std::shared_ptr<const FiniteCategory> Loader::category(const Node& n0) {
  Node n = resolve(n0);
  if (n.has("builtin")) {
    const std::string kind = n.at("builtin").as_string();
    if (kind == "trivial") return std::make_shared<const FiniteCategory>(FiniteCategory::trivial());
    if (kind == "arrow") return std::make_shared<const FiniteCategory>(FiniteCategory::arrow());
    if (kind == "cospan") return std::make_shared<const FiniteCategory>(FiniteCategory::cospan());
    if (kind == "group") return std::make_shared<const FiniteCategory>(FiniteCategory::from_group(finite_group(n.at("group"))));
    n.at("builtin").fail("unknown builtin category", kind);
  }
  std::vector<std::string> objects;
  Node ob = n.at("objects");
  for (std::size_t i = 0; i < ob->size(); ++i) objects.push_back(ob.at(i).as_string());
  std::vector<Morphism> mor;
  Node ms = n.at("morphisms");
  if (!ms->is_array()) ms.fail("expected a list of morphisms");
  auto obj_index = [&](const Node& x) {
    std::string s = x.as_string();
    auto it = std::find(objects.begin(), objects.end(), s);
    if (it == objects.end()) x.fail("unknown object", s);
    return static_cast<int>(it - objects.begin());
  };
  for (std::size_t i = 0; i < ms->size(); ++i) {
    Node m = ms.at(i);
    mor.push_back({m.at("name").as_string(), obj_index(m.at("src")), obj_index(m.at("dst"))});
  }
  std::vector<std::array<std::string, 3>> comp;
  if (n.has("composition")) {
    Node cs = n.at("composition");
    if (cs->is_array()) {
      for (std::size_t i = 0; i < cs->size(); ++i) {
        Node c = cs.at(i);
        if (!c->is_array() || c->size() != 3) c.fail("composition entries are [g, f, g∘f]");
        comp.push_back({c.at(0).as_string(), c.at(1).as_string(), c.at(2).as_string()});
      }
    } else if (cs->is_object()) {
      // {"g,f": "h"}
      for (auto it = cs->begin(); it != cs->end(); ++it) {
        Node c{&it.value(), cs.file, cs.path + "/" + escape_pointer(it.key()), cs.dir};
        auto comma = it.key().find(',');
        if (comma == std::string::npos) c.fail("composition keys are 'g,f'", it.key());
        comp.push_back({it.key().substr(0, comma), it.key().substr(comma + 1), c.as_string()});
      }
    } else {
      cs.fail("expected a list or an object");
    }
  }
  try {
    return std::make_shared<const FiniteCategory>(FiniteCategory::make(objects, mor, comp));
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

CDiagram Loader::diagram(const Node& n0) {
  Node n = resolve(n0);
  only_fields(n, {"category", "constant", "objects", "morphisms"});
  auto cat = category(n.at("category"));
  const FiniteCategory& C = *cat;
  if (n.has("constant")) {
    auto X = std::make_shared<const SSet>(presentation(n.at("constant")));
    return CDiagram::constant_diagram(cat, X);
  }
  CDiagram D;
  D.cat = cat;
  Node ob = n.at("objects");
  if (!ob->is_object()) ob.fail("expected a map from object names to presentations");
  for (int c = 0; c < C.num_objects(); ++c) D.at.push_back(std::make_shared<const SSet>(presentation(ob.at(C.object(c)))));
  for (auto it = ob->begin(); it != ob->end(); ++it)
    if (C.object_index(it.key()) < 0) ob.fail("presentation for unknown object", it.key());
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const Morphism& m = C.morphism(f);
    const SSet& X = D[m.src];
    const SSet& Y = D[m.dst];
    if (C.is_identity(f)) {
      D.act.push_back(identity_map(X));
      continue;
    }
    Node tab = n.at("morphisms").at(m.name);
    std::vector<int> vals(X.num_generators(), -1);
    for (int g = 0; g < X.num_generators(); ++g) {
      const Generator& gen = X.generator(g);
      if (gen.dim > Y.truncation()) continue;
      vals[g] = parse_simplex(tab.at(gen.name), Y, gen.dim);
    }
    D.act.push_back(map_from_generators(X, Y, vals));
  }
  if (n.has("morphisms"))
    for (auto it = n.at("morphisms")->begin(); it != n.at("morphisms")->end(); ++it)
      if (C.morphism_index(it.key()) < 0) n.at("morphisms").fail("table for unknown morphism", it.key());
  if (D.truncation() >= 0)
    for (int c = 0; c < C.num_objects(); ++c)
      if (D[c].truncation() != D.truncation()) ob.fail("all objects need the same truncation", C.object(c));
  return D;
}

Fibration Loader::fibration(const Node& n0, const CDiagram* total) {
  Node n = resolve(n0);
  only_fields(n, {"total", "base", "projection"});
  Fibration F;
  F.total = total ? *total : diagram(n.at("total"));
  if (!n.has("base")) return over_point(F.total);
  auto B = std::make_shared<const SSet>(presentation(n.at("base")));
  F.base = CDiagram::constant_diagram(F.total.cat, B);
  const FiniteCategory& C = *F.total.cat;
  Node proj = n.at("projection");
  for (int c = 0; c < C.num_objects(); ++c) {
    Node tab = proj.at(C.object(c));
    const SSet& X = F.total[c];
    std::vector<int> vals(X.num_generators(), -1);
    for (int g = 0; g < X.num_generators(); ++g)
      if (X.generator(g).dim <= B->truncation()) vals[g] = parse_simplex(tab.at(X.generator(g).name), *B, X.generator(g).dim);
    F.p.comp.push_back(map_from_generators(X, *B, vals));
  }
  return F;
}

GroupAction Loader::action(const Node& n0) {
  Node n = resolve(n0);
  only_fields(n, {"group", "space", "translation", "trivial", "generators"});
  auto G = group(n.at("group"));
  try {
    if (n.has("translation") && n.at("translation")->is_boolean() && n.at("translation")->get<bool>())
      return GroupAction::left_translation(G);
    CDiagram F = diagram(n.at("space"));
    if (n.has("trivial") && n.at("trivial")->is_boolean() && n.at("trivial")->get<bool>())
      return GroupAction::trivial(G, F);
    if (!G->is_constant()) n.at("group").fail("generator images need a constant group");
    const FiniteGroup& H = G->level(0);
    const FiniteCategory& C = *F.cat;
    // Automorphism per listed element, closed under products.
    using Images = std::vector<std::vector<int>>;  // [c][generator] -> simplex index
    std::vector<std::optional<Images>> img(H.order());
    Images id(C.num_objects());
    for (int c = 0; c < C.num_objects(); ++c)
      for (int g = 0; g < F[c].num_generators(); ++g) id[c].push_back(F[c].generator_simplex(g));
    img[H.unit] = id;
    Node gens = n.at("generators");
    if (!gens->is_object()) gens.fail("expected a map from group elements to generator images");
    std::vector<int> listed;
    for (auto it = gens->begin(); it != gens->end(); ++it) {
      Node e{&it.value(), gens.file, gens.path + "/" + escape_pointer(it.key()), gens.dir};
      int k = H.index_of(it.key());
      if (k < 0) gens.fail("unknown group element", it.key());
      Images im(C.num_objects());
      for (int c = 0; c < C.num_objects(); ++c) {
        Node tab = e.at(C.object(c));
        for (int g = 0; g < F[c].num_generators(); ++g)
          im[c].push_back(parse_simplex(tab.at(F[c].generator(g).name), F[c], F[c].generator(g).dim));
      }
      if (img[k] && *img[k] != im) e.fail("images conflict with the unit");
      img[k] = im;
      listed.push_back(k);
    }
    // Compose along generator maps until every element is reached.
    auto apply = [&](const Images& a, const Images& b) {
      Images r(C.num_objects());
      for (int c = 0; c < C.num_objects(); ++c) {
        SMap ma = map_from_generators(F[c], F[c], a[c]);
        for (int g = 0; g < F[c].num_generators(); ++g) r[c].push_back(ma(F[c].generator(g).dim, b[c][g]));
      }
      return r;
    };
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < H.order(); ++a) {
        if (!img[a]) continue;
        for (int b : listed) {
          Images r = apply(*img[a], *img[b]);
          int ab = H.mul(a, b);
          if (!img[ab]) {
            img[ab] = r;
            grew = true;
          } else if (*img[ab] != r) {
            gens.fail("images do not define an action: conflict at " + H.names[ab]);
          }
        }
      }
    }
    std::vector<std::vector<std::vector<int>>> all(H.order());
    for (int g = 0; g < H.order(); ++g) {
      if (!img[g]) gens.fail("element not reachable from the listed generators", H.names[g]);
      all[g] = *img[g];
    }
    return GroupAction::from_generators(G, F, all);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

TwistingFunction Loader::twisting(const Node& n0, const SSet& B, const SimplicialGroup& G) {
  Node n = resolve(n0);
  only_fields(n, {"dim", "values"});
  const int d = n.has("dim") ? n.at("dim").as_int() : std::min(B.truncation(), G.truncation() + 1);
  if (d < 0 || d > B.truncation() || d - 1 > G.truncation()) n.at("dim").fail("dim outside the truncations");
  std::map<std::pair<int, int>, int> explicit_vals;
  if (n.has("values")) {
    Node vs = n.at("values");
    if (!vs->is_object()) vs.fail("expected a map from simplices to group elements");
    for (auto it = vs->begin(); it != vs->end(); ++it) {
      Node e{&it.value(), vs.file, vs.path + "/" + escape_pointer(it.key()), vs.dir};
      json key(it.key());
      Node k{&key, vs.file, e.path, vs.dir};
      auto [dim, idx] = parse_any_simplex(k, B);
      if (dim < 1 || dim > d) e.fail("twisting values live in dimensions 1.." + std::to_string(d), it.key());
      explicit_vals[{dim, idx}] = element_index(e, G.level(dim - 1));
    }
  }
  TwistingFunction t;
  t.value.resize(d + 1);
  for (int m = 1; m <= d; ++m) {
    t.value[m].assign(B.size(m), -1);
    for (int v = 0; v < B.size(m); ++v) {
      auto it = explicit_vals.find({m, v});
      if (it != explicit_vals.end()) {
        t.value[m][v] = it->second;
      } else if (!B.degenerate(m, v)) {
        t.value[m][v] = G.unit(m - 1);
      } else {
        int j = B.ref(m, v).word.front();
        int w = B.face(m, v, j);
        t.value[m][v] = j == 0 ? G.unit(m - 1) : G.degen(m - 2, t.value[m - 1][w], j - 1);
      }
    }
  }
  return t;
}

GammaFunction Loader::gamma(const Node& n0, const SSet& B, const SimplicialGroup& G, int d) {
  Node n = resolve(n0);
  std::map<std::pair<int, int>, int> explicit_vals;
  if (!n->is_object()) n.fail("expected a map from simplices to group elements");
  for (auto it = n->begin(); it != n->end(); ++it) {
    Node e{&it.value(), n.file, n.path + "/" + escape_pointer(it.key()), n.dir};
    json key(it.key());
    Node k{&key, n.file, e.path, n.dir};
    auto [dim, idx] = parse_any_simplex(k, B);
    if (dim > d) e.fail("gamma value above the atlas dimension", it.key());
    explicit_vals[{dim, idx}] = element_index(e, G.level(dim));
  }
  GammaFunction g(d + 1);
  for (int m = 0; m <= d; ++m)
    for (int v = 0; v < B.size(m); ++v) {
      auto it = explicit_vals.find({m, v});
      if (it != explicit_vals.end()) {
        g[m].push_back(it->second);
      } else if (!B.degenerate(m, v)) {
        g[m].push_back(G.unit(m));
      } else {
        int j = B.ref(m, v).word.front();
        g[m].push_back(G.degen(m - 1, g[m - 1][B.face(m, v, j)], j));
      }
    }
  return g;
}

AtlasInput Loader::atlas(const Node& n0) {
  Node n = resolve(n0);
  only_fields(n, {"base", "action", "twisting", "gamma"});
  AtlasInput in;
  in.base = presentation(n.at("base"));
  in.action = action(n.at("action"));
  Node tn = resolve(n.at("twisting"));
  in.twisting = twisting(tn, in.base, *in.action.group);
  try {
    in.tcp = build_tcp(in.base, in.twisting, in.action);
  } catch (const Error& e) {
    tn.fail(e.what());
  }
  const int d = in.tcp.dim();
  if (n.has("gamma")) {
    in.gamma = gamma(n.at("gamma"), in.base, *in.action.group, d);
  } else {
    json empty = json::object();
    Node e{&empty, n.file, n.path + "/gamma", n.dir};
    in.gamma = gamma(e, in.base, *in.action.group, d);
  }
  Atlas taut = tautological_atlas(in.tcp, truncate_set(in.base, d), in.twisting, in.action);
  in.atlas = perturb_atlas(taut, in.action, in.gamma);
  return in;
}

// ---------------------------------------------------------------- writers

json presentation_json(const SSet& X) {
  json j;
  j["truncation"] = X.truncation();
  int top = 0;
  for (const auto& g : X.generators()) top = std::max(top, g.dim);
  json gens = json::array();
  for (int d = 0; d <= top; ++d) gens.push_back(json::array());
  json faces = json::object();
  for (const auto& g : X.generators()) {
    gens[g.dim].push_back(g.name);
    if (g.dim == 0) continue;
    json f = json::array();
    for (const auto& r : g.faces) f.push_back(X.ref_string(r));
    faces[g.name] = f;
  }
  if (X.num_generators() == 0) gens = json::array();
  j["generators"] = gens;
  j["faces"] = faces;
  return j;
}

json category_json(const FiniteCategory& C) {
  json j;
  j["objects"] = json::array();
  for (int c = 0; c < C.num_objects(); ++c) j["objects"].push_back(C.object(c));
  j["morphisms"] = json::array();
  for (int f = 0; f < C.num_morphisms(); ++f) {
    if (C.is_identity(f)) continue;
    const Morphism& m = C.morphism(f);
    j["morphisms"].push_back({{"name", m.name}, {"src", C.object(m.src)}, {"dst", C.object(m.dst)}});
  }
  j["composition"] = json::array();
  for (int g = 0; g < C.num_morphisms(); ++g)
    for (int f = 0; f < C.num_morphisms(); ++f) {
      if (C.is_identity(f) || C.is_identity(g)) continue;
      int h = C.compose(g, f);
      if (h >= 0) j["composition"].push_back({C.morphism(g).name, C.morphism(f).name, C.morphism(h).name});
    }
  return j;
}

json map_json(const SSet& X, const SSet& Y, const SMap& f) {
  json j = json::object();
  for (int g = 0; g < X.num_generators(); ++g) {
    const int d = X.generator(g).dim;
    if (d > f.truncation()) continue;
    j[X.generator(g).name] = Y.simplex_string(d, f(d, X.generator_simplex(g)));
  }
  return j;
}

json diagram_json(const CDiagram& D) {
  json j;
  const FiniteCategory& C = *D.cat;
  j["category"] = category_json(C);
  if (D.constant) {
    j["constant"] = presentation_json(D[0]);
    return j;
  }
  j["objects"] = json::object();
  for (int c = 0; c < C.num_objects(); ++c) j["objects"][C.object(c)] = presentation_json(D[c]);
  j["morphisms"] = json::object();
  for (int f = 0; f < C.num_morphisms(); ++f) {
    if (C.is_identity(f)) continue;
    const Morphism& m = C.morphism(f);
    j["morphisms"][m.name] = map_json(D[m.src], D[m.dst], D.act[f]);
  }
  return j;
}

json fibration_json(const Fibration& p) {
  json j;
  j["total"] = diagram_json(p.total);
  j["base"] = presentation_json(p.base[0]);
  j["projection"] = json::object();
  for (int c = 0; c < p.total.cat->num_objects(); ++c)
    j["projection"][p.total.cat->object(c)] = map_json(p.total[c], p.base[c], p.p.comp[c]);
  return j;
}

json group_json(const SimplicialGroup& G) {
  auto level = [](const FiniteGroup& H) {
    json t = json::array();
    for (int a = 0; a < H.order(); ++a) {
      json row = json::array();
      for (int b = 0; b < H.order(); ++b) row.push_back(H.names[H.mul(a, b)]);
      t.push_back(row);
    }
    return json{{"elements", H.names}, {"table", t}};
  };
  if (G.is_constant()) {
    json j = level(G.level(0));
    j["truncation"] = G.truncation();
    return j;
  }
  json j;
  j["levels"] = json::array();
  j["faces"] = json::array();
  j["degeneracies"] = json::array();
  const int N = G.truncation();
  for (int n = 0; n <= N; ++n) {
    j["levels"].push_back(level(G.level(n)));
    json f = json::array(), s = json::array();
    for (int g = 0; g < G.level(n).order(); ++g) {
      json fi = json::array(), si = json::array();
      for (int i = 0; i <= n; ++i) {
        if (n > 0) fi.push_back(G.level(n - 1).names[G.face(n, g, i)]);
        if (n < N) si.push_back(G.level(n + 1).names[G.degen(n, g, i)]);
      }
      f.push_back(fi);
      s.push_back(si);
    }
    j["faces"].push_back(n > 0 ? f : json(nullptr));
    if (n < N) j["degeneracies"].push_back(s);
  }
  return j;
}

json twisting_json(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t) {
  json j;
  j["dim"] = t.dim();
  j["values"] = json::object();
  for (int n = 1; n <= t.dim(); ++n)
    for (int v = 0; v < B.size(n); ++v) {
      if (B.degenerate(n, v)) continue;
      j["values"][B.simplex_string(n, v)] = G.level(n - 1).names[t.value[n][v]];
    }
  return j;
}

json gamma_json(const SSet& B, const SimplicialGroup& G, const GammaFunction& g) {
  json j = json::object();
  for (int n = 0; n < static_cast<int>(g.size()); ++n)
    for (int v = 0; v < B.size(n); ++v) {
      if (B.degenerate(n, v)) {
        int k = B.ref(n, v).word.front();
        if (g[n][v] == G.degen(n - 1, g[n - 1][B.face(n, v, k)], k)) continue;
      } else if (g[n][v] == G.unit(n)) {
        continue;
      }
      j[B.simplex_string(n, v)] = G.level(n).names[g[n][v]];
    }
  return j;
}

json action_json(const GroupAction& A) {
  const SimplicialGroup& G = *A.group;
  const FiniteCategory& C = *A.space.cat;
  if (!G.is_constant()) {
    GroupAction L = GroupAction::left_translation(A.group);
    if (C.num_objects() == 1 && C.num_morphisms() == 1 && L.table == A.table &&
        presentation_json(A.space[0]) == presentation_json(L.space[0]))
      return json{{"group", group_json(G)}, {"translation", true}};
    throw Error("only constant-group actions and translations can be written");
  }
  json gens = json::object();
  const FiniteGroup& H = G.level(0);
  for (int g = 0; g < H.order(); ++g) {
    json per = json::object();
    for (int c = 0; c < C.num_objects(); ++c) {
      const SSet& F = A.space[c];
      json tab = json::object();
      for (int k = 0; k < F.num_generators(); ++k) {
        const int d = F.generator(k).dim;
        if (d >= static_cast<int>(A.table[c].size())) continue;
        tab[F.generator(k).name] = F.simplex_string(d, A.act(c, d, g, F.generator_simplex(k)));
      }
      per[C.object(c)] = tab;
    }
    gens[H.names[g]] = per;
  }
  return json{{"group", group_json(G)}, {"space", diagram_json(A.space)}, {"generators", gens}};
}

json atlas_json(const AtlasInput& in, const GammaFunction& gamma) {
  return json{{"base", presentation_json(in.base)},
              {"action", action_json(in.action)},
              {"twisting", twisting_json(in.base, *in.action.group, in.twisting)},
              {"gamma", gamma_json(in.base, *in.action.group, gamma)}};
}

}  // namespace mfib::io
