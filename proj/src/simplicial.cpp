#include "mfib/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace mfib {

namespace {

bool looks_like_operator(const std::string& s) {
  if (s.size() < 2 || (s[0] != 's' && s[0] != 'd')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string join_seq(const std::vector<int>& v, int width) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (width >= 10 && i) s += '_';
    s += std::to_string(v[i]);
  }
  return s;
}

// All strictly decreasing words raising dimension m to n, sorted.
std::vector<Word> words_between(int m, int n) {
  std::vector<Word> out;
  const int k = n - m;
  Word inner;  // innermost first
  std::function<void(int)> rec = [&](int r) {
    if (r == k) {
      out.emplace_back(inner.rbegin(), inner.rend());
      return;
    }
    int lo = inner.empty() ? 0 : inner.back() + 1;
    for (int j = lo; j <= m + r; ++j) {
      inner.push_back(j);
      rec(r + 1);
      inner.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool word_valid(const Word& w, int base_dim) {
  const int k = static_cast<int>(w.size());
  for (int r = 0; r < k; ++r) {
    int j = w[k - 1 - r];  // r-th from the inside
    if (j < 0 || j > base_dim + r) return false;
    if (r > 0 && j <= w[k - r]) return false;
  }
  return true;
}

Word word_insert(int a, const Word& w) {
  Word out;
  out.reserve(w.size() + 1);
  for (int j : w)
    if (j >= a) out.push_back(j + 1);
  out.push_back(a);
  for (int j : w)
    if (j < a) out.push_back(j);
  return out;
}

Word word_compose(const Word& outer, const Word& inner) {
  Word w = inner;
  for (auto it = outer.rbegin(); it != outer.rend(); ++it) w = word_insert(*it, w);
  return w;
}

std::vector<int> word_surjection(const Word& w, int base_dim) {
  const int n = base_dim + static_cast<int>(w.size());
  std::vector<int> s(n + 1, 0);
  for (int p = 0; p < n; ++p) s[p + 1] = s[p] + (std::find(w.begin(), w.end(), p) != w.end() ? 0 : 1);
  return s;
}

std::vector<Op> parse_ops(const std::string& text) {
  std::istringstream in(text);
  std::vector<Op> ops;
  std::string tok;
  while (in >> tok) {
    if (!looks_like_operator(tok)) throw ValidationError("bad operator token '" + tok + "'");
    ops.push_back({tok[0], std::stoi(tok.substr(1))});
  }
  return ops;
}

// ---------------------------------------------------------------------------

SSet SSet::from_presentation(int truncation, std::vector<Generator> gens) {
  if (truncation < 0) throw ValidationError("truncation must be non-negative");
  SSet X;
  X.N_ = truncation;
  const int G = static_cast<int>(gens.size());
  std::vector<int> order(G);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return gens[a].dim < gens[b].dim; });
  std::vector<int> remap(G);
  for (int i = 0; i < G; ++i) remap[order[i]] = i;
  X.gens_.resize(G);
  for (int i = 0; i < G; ++i) {
    X.gens_[i] = gens[order[i]];
    for (auto& f : X.gens_[i].faces) {
      if (f.gen < 0 || f.gen >= G) throw ValidationError("face of '" + X.gens_[i].name + "' names an unknown generator");
      f.gen = remap[f.gen];
    }
  }
  for (int g = 0; g < G; ++g) {
    const Generator& gen = X.gens_[g];
    if (gen.name.empty() || looks_like_operator(gen.name) ||
        gen.name.find_first_of(" \t\n") != std::string::npos)
      throw ValidationError("invalid generator name '" + gen.name + "'");
    if (!X.by_name_.emplace(gen.name, g).second) throw ValidationError("duplicate generator '" + gen.name + "'");
    if (gen.dim < 0) throw ValidationError("negative dimension for '" + gen.name + "'");
    if (gen.dim > truncation)
      throw TruncationError("generator '" + gen.name + "' has dimension " + std::to_string(gen.dim) +
                            " above truncation " + std::to_string(truncation));
    const std::size_t want = gen.dim == 0 ? 0 : gen.dim + 1;
    if (gen.faces.size() != want)
      throw ValidationError("generator '" + gen.name + "' needs " + std::to_string(want) + " faces");
    for (std::size_t i = 0; i < gen.faces.size(); ++i) {
      const SimplexRef& f = gen.faces[i];
      if (!word_valid(f.word, X.gens_[f.gen].dim))
        throw ValidationError("face d" + std::to_string(i) + " of '" + gen.name + "' has an invalid degeneracy word");
      if (X.ref_dim(f) != gen.dim - 1)
        throw ValidationError("face d" + std::to_string(i) + " of '" + gen.name + "' has the wrong dimension");
    }
  }
  // d_i d_j = d_{j-1} d_i on generators; everything else follows from normal forms.
  for (int g = 0; g < G; ++g) {
    const Generator& gen = X.gens_[g];
    const int n = gen.dim;
    for (int j = 1; j <= n && n >= 2; ++j)
      for (int i = 0; i < j; ++i) {
        SimplexRef lhs = X.ref_face(gen.faces[j], n - 1, i);
        SimplexRef rhs = X.ref_face(gen.faces[i], n - 1, j - 1);
        if (lhs != rhs)
          throw ValidationError("identity d" + std::to_string(i) + " d" + std::to_string(j) + " = d" +
                                std::to_string(j - 1) + " d" + std::to_string(i) + " fails on '" + gen.name + "': " +
                                X.ref_string(lhs) + " vs " + X.ref_string(rhs));
      }
  }

  X.levels_.assign(truncation + 1, {});
  X.index_.assign(truncation + 1, {});
  X.gen_simplex_.assign(G, -1);
  for (int n = 0; n <= truncation; ++n) {
    for (int g = 0; g < G; ++g) {
      const int m = X.gens_[g].dim;
      if (m > n) continue;
      for (auto& w : words_between(m, n)) {
        int idx = static_cast<int>(X.levels_[n].size());
        X.levels_[n].push_back({g, w});
        X.index_[n].emplace(SimplexRef{g, w}, idx);
        if (w.empty()) X.gen_simplex_[g] = idx;
      }
    }
  }
  X.face_.assign(truncation + 1, {});
  X.degen_.assign(truncation + 1, {});
  for (int n = 0; n <= truncation; ++n) {
    const int S = X.size(n);
    if (n > 0) {
      X.face_[n].resize(static_cast<std::size_t>(S) * (n + 1));
      for (int x = 0; x < S; ++x)
        for (int i = 0; i <= n; ++i) X.face_[n][static_cast<std::size_t>(x) * (n + 1) + i] = X.index(n - 1, X.ref_face(X.levels_[n][x], n, i));
    }
    if (n < truncation) {
      X.degen_[n].resize(static_cast<std::size_t>(S) * (n + 1));
      for (int x = 0; x < S; ++x)
        for (int i = 0; i <= n; ++i) {
          const SimplexRef& r = X.levels_[n][x];
          X.degen_[n][static_cast<std::size_t>(x) * (n + 1) + i] = X.index(n + 1, SimplexRef{r.gen, word_insert(i, r.word)});
        }
    }
  }
  return X;
}

int SSet::generator_by_name(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

int SSet::generator_simplex(int g) const { return gen_simplex_[g]; }

std::vector<int> SSet::generator_counts() const {
  std::vector<int> c(N_ + 1, 0);
  for (auto& g : gens_) c[g.dim]++;
  return c;
}

int SSet::find(int n, const SimplexRef& r) const {
  if (n < 0 || n > N_) return -1;
  auto it = index_[n].find(r);
  return it == index_[n].end() ? -1 : it->second;
}

int SSet::index(int n, const SimplexRef& r) const {
  int i = find(n, r);
  if (i < 0) {
    if (n > N_) throw TruncationError("dimension " + std::to_string(n) + " above truncation " + std::to_string(N_));
    throw ValidationError("no simplex " + ref_string(r) + " in dimension " + std::to_string(n));
  }
  return i;
}

int SSet::degen(int n, int x, int i) const {
  if (n >= N_) throw TruncationError("degeneracy leaves truncation " + std::to_string(N_));
  return degen_[n][static_cast<std::size_t>(x) * (n + 1) + i];
}

int SSet::apply_word(const Word& w, int m, int x) const {
  for (auto it = w.rbegin(); it != w.rend(); ++it) x = degen(m++, x, *it);
  return x;
}

int SSet::apply_monotone(const std::vector<int>& a, int n, int x) const {
  std::vector<char> hit(n + 1, 0);
  for (int v : a) hit[v] = 1;
  int cur = n;
  for (int i = n; i >= 0; --i)
    if (!hit[i]) x = face(cur--, x, i);
  Word w;
  for (int p = static_cast<int>(a.size()) - 2; p >= 0; --p)
    if (a[p] == a[p + 1]) w.push_back(p);
  return apply_word(w, cur, x);
}

std::pair<int, int> SSet::apply_ops(const std::vector<Op>& ops, int n, int x) const {
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->index < 0 || it->index > n) throw ValidationError("operator index out of range");
    if (it->kind == 'd') {
      if (n == 0) throw ValidationError("face of a vertex");
      x = face(n--, x, it->index);
    } else {
      x = degen(n++, x, it->index);
    }
  }
  return {n, x};
}

SimplexRef SSet::ref_face(const SimplexRef& r, int n, int i) const {
  Word out;
  int ci = i;
  for (std::size_t idx = 0; idx < r.word.size(); ++idx) {
    int j = r.word[idx];
    if (ci < j) {
      out.push_back(j - 1);
    } else if (ci == j || ci == j + 1) {
      Word rest(r.word.begin() + idx + 1, r.word.end());
      return SimplexRef{r.gen, word_compose(out, rest)};
    } else {
      out.push_back(j);
      --ci;
    }
  }
  (void)n;
  const SimplexRef& f = gens_[r.gen].faces.at(ci);
  return SimplexRef{f.gen, word_compose(out, f.word)};
}

std::string SSet::ref_string(const SimplexRef& r) const {
  std::string s;
  for (int j : r.word) s += "s" + std::to_string(j) + " ";
  return s + (r.gen >= 0 && r.gen < num_generators() ? gens_[r.gen].name : std::string("?"));
}

SimplexRef SSet::parse_ref(const std::string& text) const {
  std::istringstream in(text);
  std::vector<std::string> tok;
  std::string t;
  while (in >> t) tok.push_back(t);
  if (tok.empty()) throw ValidationError("empty simplex reference");
  SimplexRef r;
  r.gen = generator_by_name(tok.back());
  if (r.gen < 0) throw ValidationError("unknown generator '" + tok.back() + "' in '" + text + "'");
  for (std::size_t i = 0; i + 1 < tok.size(); ++i) {
    if (tok[i].size() < 2 || tok[i][0] != 's' || !looks_like_operator(tok[i]))
      throw ValidationError("expected a degeneracy, got '" + tok[i] + "' in '" + text + "'");
    r.word.push_back(std::stoi(tok[i].substr(1)));
  }
  if (!word_valid(r.word, gens_[r.gen].dim))
    throw ValidationError("degeneracy word in '" + text + "' is not strictly decreasing or out of range");
  return r;
}

std::optional<std::string> SSet::check_identities() const {
  auto fail = [](const std::string& what, int n, int x) {
    return what + " fails at simplex " + std::to_string(x) + " of dimension " + std::to_string(n);
  };
  for (int n = 0; n <= N_; ++n) {
    for (int x = 0; x < size(n); ++x) {
      for (int j = 1; j <= n && n >= 2; ++j)
        for (int i = 0; i < j; ++i)
          if (face(n - 1, face(n, x, j), i) != face(n - 1, face(n, x, i), j - 1))
            return fail("d" + std::to_string(i) + "d" + std::to_string(j) + "=d" + std::to_string(j - 1) + "d" +
                            std::to_string(i),
                        n, x);
      if (n + 1 <= N_) {
        for (int j = 0; j <= n; ++j) {
          int sx = degen(n, x, j);
          for (int i = 0; i <= n + 1; ++i) {
            int lhs = face(n + 1, sx, i);
            if (i < j) {
              if (lhs != degen(n - 1, face(n, x, i), j - 1)) return fail("d_i s_j = s_{j-1} d_i", n, x);
            } else if (i == j || i == j + 1) {
              if (lhs != x) return fail("d_j s_j = 1 = d_{j+1} s_j", n, x);
            } else if (lhs != degen(n - 1, face(n, x, i - 1), j)) {
              return fail("d_i s_j = s_j d_{i-1}", n, x);
            }
          }
        }
      }
      if (n + 2 <= N_)
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i <= j; ++i)
            if (degen(n + 1, degen(n, x, j), i) != degen(n + 1, degen(n, x, i), j + 1))
              return fail("s_i s_j = s_{j+1} s_i", n, x);
    }
  }
  return std::nullopt;
}

SimplexRef normalize(const SSet& X, const std::vector<Op>& ops, const SimplexRef& s) {
  if (s.gen < 0 || s.gen >= X.num_generators() || !word_valid(s.word, X.generator(s.gen).dim))
    throw ValidationError("reference is not in normal form");
  SimplexRef r = s;
  int dim = X.ref_dim(r);
  if (dim > X.truncation()) throw TruncationError("input above truncation");
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->index < 0 || it->index > dim)
      throw ValidationError("operator " + std::string(1, it->kind) + std::to_string(it->index) +
                            " does not apply in dimension " + std::to_string(dim));
    if (it->kind == 's') {
      if (dim + 1 > X.truncation()) throw TruncationError("operator word leaves truncation");
      r.word = word_insert(it->index, r.word);
      ++dim;
    } else {
      if (dim == 0) throw ValidationError("face of a vertex");
      r = X.ref_face(r, dim, it->index);
      --dim;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

BuiltSet build_from_tables(const Tables& t) {
  const int N = t.N;
  if (static_cast<int>(t.size.size()) != N + 1) throw ValidationError("table size vector has wrong length");
  for (int n = 0; n <= N; ++n) {
    for (int i : (n > 0 ? t.face[n] : std::vector<int>{}))
      if (i < 0 || i >= t.size[n - 1]) throw ValidationError("face table entry out of range");
    if (n < N)
      for (int i : t.degen[n])
        if (i < 0 || i >= t.size[n + 1]) throw ValidationError("degeneracy table entry out of range");
  }
  // Detect degenerate simplices and their normal forms level by level.
  std::vector<std::vector<SimplexRef>> ref(N + 1);
  std::vector<Generator> gens;
  std::vector<std::vector<int>> gen_of(N + 1);
  for (int n = 0; n <= N; ++n) {
    ref[n].assign(t.size[n], SimplexRef{});
    std::vector<char> deg(t.size[n], 0);
    if (n > 0)
      for (int y = 0; y < t.size[n - 1]; ++y)
        for (int i = 0; i < n; ++i) {
          int x = t.degen[n - 1][static_cast<std::size_t>(y) * n + i];
          if (!deg[x]) {
            deg[x] = 1;
            ref[n][x] = SimplexRef{ref[n - 1][y].gen, word_insert(i, ref[n - 1][y].word)};
          }
        }
    for (int x = 0; x < t.size[n]; ++x) {
      if (deg[x]) continue;
      Generator g;
      g.name = t.label[n][x];
      g.dim = n;
      for (int i = 0; i <= n && n > 0; ++i) g.faces.push_back(ref[n - 1][t.face[n][static_cast<std::size_t>(x) * (n + 1) + i]]);
      ref[n][x] = SimplexRef{static_cast<int>(gens.size()), {}};
      gens.push_back(std::move(g));
    }
  }
  BuiltSet b;
  b.set = SSet::from_presentation(N, std::move(gens));
  b.to_canon.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    b.to_canon[n].resize(t.size[n]);
    std::vector<char> seen(t.size[n], 0);
    for (int x = 0; x < t.size[n]; ++x) {
      int c = b.set.find(n, ref[n][x]);
      if (c < 0 || seen[c]) throw ValidationError("tables do not have unique normal forms in dimension " + std::to_string(n));
      seen[c] = 1;
      b.to_canon[n][x] = c;
    }
    if (b.set.size(n) != t.size[n]) throw ValidationError("tables are not closed under degeneracies");
  }
  for (int n = 0; n <= N; ++n)
    for (int x = 0; x < t.size[n]; ++x) {
      int c = b.to_canon[n][x];
      for (int i = 0; i <= n && n > 0; ++i)
        if (b.set.face(n, c, i) != b.to_canon[n - 1][t.face[n][static_cast<std::size_t>(x) * (n + 1) + i]])
          throw ValidationError("tables violate the simplicial identities in dimension " + std::to_string(n));
      for (int i = 0; i <= n && n < N; ++i)
        if (b.set.degen(n, c, i) != b.to_canon[n + 1][t.degen[n][static_cast<std::size_t>(x) * (n + 1) + i]])
          throw ValidationError("tables violate the simplicial identities in dimension " + std::to_string(n));
    }
  return b;
}

// ---------------------------------------------------------------------------

SMap map_from_generators(const SSet& X, const SSet& Y, const std::vector<int>& gen_values) {
  const int L = std::min(X.truncation(), Y.truncation());
  SMap f;
  f.level.resize(L + 1);
  for (int n = 0; n <= L; ++n) {
    f.level[n].resize(X.size(n));
    for (int x = 0; x < X.size(n); ++x) {
      const SimplexRef& r = X.ref(n, x);
      int v = gen_values.at(r.gen);
      if (v < 0 || v >= Y.size(X.generator(r.gen).dim)) throw ValidationError("generator value out of range");
      f.level[n][x] = Y.apply_word(r.word, X.generator(r.gen).dim, v);
    }
  }
  return f;
}

SMap identity_map(const SSet& X) {
  SMap f;
  f.level.resize(X.truncation() + 1);
  for (int n = 0; n <= X.truncation(); ++n) {
    f.level[n].resize(X.size(n));
    std::iota(f.level[n].begin(), f.level[n].end(), 0);
  }
  return f;
}

SMap constant_map(const SSet& X, const SSet& Y, int vertex) {
  std::vector<int> vals(X.num_generators());
  for (int g = 0; g < X.num_generators(); ++g) {
    int v = vertex;
    for (int k = 0; k < X.generator(g).dim; ++k) v = Y.degen(k, v, 0);
    vals[g] = v;
  }
  return map_from_generators(X, Y, vals);
}

SMap compose(const SMap& g, const SMap& f) {
  SMap h;
  const int L = std::min(g.truncation(), f.truncation());
  h.level.resize(L + 1);
  for (int n = 0; n <= L; ++n) {
    h.level[n].resize(f.level[n].size());
    for (std::size_t x = 0; x < f.level[n].size(); ++x) h.level[n][x] = g.level[n][f.level[n][x]];
  }
  return h;
}

std::optional<std::string> map_defect(const SSet& X, const SSet& Y, const SMap& f) {
  const int L = std::min(X.truncation(), Y.truncation());
  if (f.truncation() != L) return "map has " + std::to_string(f.truncation() + 1) + " levels, expected " + std::to_string(L + 1);
  for (int n = 0; n <= L; ++n) {
    if (static_cast<int>(f.level[n].size()) != X.size(n)) return "level " + std::to_string(n) + " has the wrong size";
    for (int v : f.level[n])
      if (v < 0 || v >= Y.size(n)) return "value out of range in dimension " + std::to_string(n);
  }
  for (int n = 0; n <= L; ++n)
    for (int x = 0; x < X.size(n); ++x) {
      for (int i = 0; i <= n && n > 0; ++i)
        if (Y.face(n, f(n, x), i) != f(n - 1, X.face(n, x, i)))
          return "d" + std::to_string(i) + " not preserved at " + X.simplex_string(n, x);
      for (int i = 0; i <= n && n < L; ++i)
        if (Y.degen(n, f(n, x), i) != f(n + 1, X.degen(n, x, i)))
          return "s" + std::to_string(i) + " not preserved at " + X.simplex_string(n, x);
    }
  return std::nullopt;
}

void validate_map(const SSet& X, const SSet& Y, const SMap& f) {
  if (auto d = map_defect(X, Y, f)) throw ValidationError("not a simplicial map: " + *d);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<Seq>> monotone_levels(int n, int N, const std::function<bool(const Seq&)>& keep) {
  std::vector<std::vector<Seq>> levels(N + 1);
  for (int m = 0; m <= N; ++m) {
    Seq s(m + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == m + 1) {
        if (keep(s)) levels[m].push_back(s);
        return;
      }
      for (int v = lo; v <= n; ++v) {
        s[pos] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
  }
  return levels;
}

Keyed<Seq> monotone_keyed(int n, int N, const std::function<bool(const Seq&)>& keep) {
  auto levels = monotone_levels(n, N, keep);
  return build_keyed<Seq>(
      N, levels,
      [](int, const Seq& s, int i) {
        Seq t = s;
        t.erase(t.begin() + i);
        return t;
      },
      [](int, const Seq& s, int i) {
        Seq t = s;
        t.insert(t.begin() + i, s[i]);
        return t;
      },
      [n](int, const Seq& s) { return "v" + join_seq(s, n + 1); });
}

int image_size(const Seq& s) {
  std::set<int> im(s.begin(), s.end());
  return static_cast<int>(im.size());
}

}  // namespace

Keyed<Seq> standard_simplex_keyed(int n, int N) {
  if (N < 0) N = n;
  return monotone_keyed(n, N, [](const Seq&) { return true; });
}

SSet standard_simplex(int n, int N) { return standard_simplex_keyed(n, N).set; }

SSet boundary(int n, int N) {
  if (N < 0) N = n;
  return monotone_keyed(n, N, [n](const Seq& s) { return image_size(s) < n + 1; }).set;
}

SSet horn(int n, int k, int N) {
  if (n < 1 || k < 0 || k > n) throw ValidationError("horn needs n >= 1 and 0 <= k <= n");
  if (N < 0) N = n;
  return monotone_keyed(n, N, [n, k](const Seq& s) {
           if (image_size(s) == n + 1) return false;
           if (image_size(s) == n && std::find(s.begin(), s.end(), k) == s.end()) return false;
           return true;
         }).set;
}

SSet point(int N) { return SSet::from_presentation(N, {Generator{"pt", 0, {}}}); }

SSet empty_set(int N) { return SSet::from_presentation(N, {}); }

SSet circle(int N) {
  std::vector<Generator> g{{"v", 0, {}}, {"e", 1, {SimplexRef{0, {}}, SimplexRef{0, {}}}}};
  return SSet::from_presentation(N, std::move(g));
}

SSet group_nerve(const FiniteGroup& G, int N) {
  std::vector<std::vector<Seq>> levels(N + 1);
  for (int n = 0; n <= N; ++n) {
    Seq t(n, 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == n) {
        levels[n].push_back(t);
        return;
      }
      for (int g = 0; g < G.order(); ++g) {
        t[pos] = g;
        rec(pos + 1);
      }
    };
    rec(0);
  }
  return build_keyed<Seq>(
             N, levels,
             [&G](int n, const Seq& s, int i) {
               Seq t;
               for (int p = 0; p < n; ++p) {
                 if (i == 0 && p == 0) continue;
                 if (i == n && p == n - 1) continue;
                 if (i > 0 && i < n && p == i - 1) {
                   t.push_back(G.mul(s[p], s[p + 1]));
                   ++p;
                   continue;
                 }
                 t.push_back(s[p]);
               }
               return t;
             },
             [&G](int, const Seq& s, int i) {
               Seq t = s;
               t.insert(t.begin() + i, G.unit);
               return t;
             },
             [&G](int, const Seq& s) {
               if (s.empty()) return std::string("*");
               std::string out = "(";
               for (std::size_t p = 0; p < s.size(); ++p) out += (p ? "," : "") + G.names[s[p]];
               return out + ")";
             })
      .set;
}

SSet codiscrete_nerve(int points, int N) {
  std::vector<std::vector<Seq>> levels(N + 1);
  for (int n = 0; n <= N; ++n) {
    Seq t(n + 1, 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == n + 1) {
        levels[n].push_back(t);
        return;
      }
      for (int p = 0; p < points; ++p) {
        t[pos] = p;
        rec(pos + 1);
      }
    };
    rec(0);
  }
  return build_keyed<Seq>(
             N, levels,
             [](int, const Seq& s, int i) {
               Seq t = s;
               t.erase(t.begin() + i);
               return t;
             },
             [](int, const Seq& s, int i) {
               Seq t = s;
               t.insert(t.begin() + i, s[i]);
               return t;
             },
             [](int, const Seq& s) {
               std::string out = "[";
               for (std::size_t p = 0; p < s.size(); ++p) out += (p ? "," : "") + std::to_string(s[p]);
               return out + "]";
             })
      .set;
}

SSet discrete_set(int points, int N) {
  std::vector<Generator> g;
  for (int p = 0; p < points; ++p) g.push_back({"p" + std::to_string(p), 0, {}});
  return SSet::from_presentation(N, std::move(g));
}

std::vector<SimplexRef> enumerate_simplices(const SSet& X, int n) {
  if (n < 0 || n > X.truncation())
    throw TruncationError("dimension " + std::to_string(n) + " outside truncation " + std::to_string(X.truncation()));
  std::vector<SimplexRef> out;
  for (int x = 0; x < X.size(n); ++x) out.push_back(X.ref(n, x));
  return out;
}

long long word_count(int m, int n) {
  if (m > n || m < 0) return 0;
  long long c = 1;
  for (int k = 1; k <= n - m; ++k) c = c * (m + k) / k;  // C(n, n-m)
  return c;
}

// ---------------------------------------------------------------------------

void validate_horn(const SSet& X, const HornProblem& h) {
  if (h.n < 1 || h.k < 0 || h.k > h.n) throw ValidationError("horn needs n >= 1 and 0 <= k <= n");
  if (h.n > X.truncation()) throw TruncationError("horn dimension above truncation");
  if (static_cast<int>(h.faces.size()) != h.n + 1) throw ValidationError("horn needs n+1 face slots");
  for (int i = 0; i <= h.n; ++i)
    if (i != h.k && (h.faces[i] < 0 || h.faces[i] >= X.size(h.n - 1)))
      throw ValidationError("horn face " + std::to_string(i) + " is not a simplex");
  if (h.n < 2) return;
  for (int j = 0; j <= h.n; ++j)
    for (int i = 0; i < j; ++i) {
      if (i == h.k || j == h.k) continue;
      if (X.face(h.n - 1, h.faces[j], i) != X.face(h.n - 1, h.faces[i], j - 1))
        throw ValidationError("horn faces " + std::to_string(i) + " and " + std::to_string(j) +
                              " are incompatible: d" + std::to_string(i) + " x" + std::to_string(j) + " != d" +
                              std::to_string(j - 1) + " x" + std::to_string(i));
    }
}

std::optional<int> fill_horn(const SSet& X, const HornProblem& h) {
  validate_horn(X, h);
  for (int z = 0; z < X.size(h.n); ++z) {
    bool ok = true;
    for (int i = 0; i <= h.n && ok; ++i)
      if (i != h.k) ok = X.face(h.n, z, i) == h.faces[i];
    if (ok) return z;
  }
  return std::nullopt;
}

KanReport is_kan_fibration_upto(const SSet& X, const SSet& B, const SMap& p, int d, std::size_t max_failures) {
  validate_map(X, B, p);
  if (d > X.truncation() || d > B.truncation()) throw TruncationError("check dimension above truncation");
  KanReport rep;
  rep.dim = d;
  for (int n = 1; n <= d; ++n) {
    std::vector<std::vector<int>> over(B.size(n - 1));
    for (int x = 0; x < X.size(n - 1); ++x) over[p(n - 1, x)].push_back(x);
    for (int k = 0; k <= n; ++k) {
      std::set<std::vector<int>> fillers;
      for (int z = 0; z < X.size(n); ++z) {
        std::vector<int> key{p(n, z)};
        for (int i = 0; i <= n; ++i)
          if (i != k) key.push_back(X.face(n, z, i));
        fillers.insert(std::move(key));
      }
      for (int b = 0; b < B.size(n); ++b) {
        std::vector<int> chosen(n + 1, -1);
        std::function<bool(int)> rec = [&](int i) -> bool {
          if (i > n) {
            ++rep.horns_checked;
            std::vector<int> key{b};
            for (int q = 0; q <= n; ++q)
              if (q != k) key.push_back(chosen[q]);
            if (!fillers.count(key)) {
              rep.ok = false;
              HornFailure f;
              f.horn = HornProblem{n, k, chosen};
              f.base = b;
              rep.failures.push_back(f);
              if (rep.failures.size() >= max_failures) return false;
            }
            return true;
          }
          if (i == k) return rec(i + 1);
          for (int x : over[B.face(n, b, i)]) {
            bool ok = true;
            for (int j = 0; j < i && ok && n >= 2; ++j)
              if (j != k) ok = X.face(n - 1, x, j) == X.face(n - 1, chosen[j], i - 1);
            if (!ok) continue;
            chosen[i] = x;
            if (!rec(i + 1)) return false;
          }
          chosen[i] = -1;
          return true;
        };
        if (!rec(0)) return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {
std::string flat(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '.');
  return s;
}
}  // namespace

Keyed<Pair> product_keyed(const SSet& X, const SSet& K) {
  const int N = std::min(X.truncation(), K.truncation());
  std::vector<std::vector<Pair>> levels(N + 1);
  for (int n = 0; n <= N; ++n)
    for (int x = 0; x < X.size(n); ++x)
      for (int y = 0; y < K.size(n); ++y) levels[n].push_back({x, y});
  return build_keyed<Pair>(
      N, levels, [&](int n, const Pair& p, int i) { return Pair{X.face(n, p.first, i), K.face(n, p.second, i)}; },
      [&](int n, const Pair& p, int i) { return Pair{X.degen(n, p.first, i), K.degen(n, p.second, i)}; },
      [&](int n, const Pair& p) {
        return "(" + flat(X.simplex_string(n, p.first)) + "," + flat(K.simplex_string(n, p.second)) + ")";
      });
}

SSet product(const SSet& X, const SSet& K) { return product_keyed(X, K).set; }

Keyed<Pair> disjoint_union(const std::vector<const SSet*>& parts, const std::vector<std::string>& suffixes) {
  int N = parts.empty() ? 0 : parts[0]->truncation();
  for (auto* p : parts)
    if (p->truncation() != N) throw ValidationError("disjoint union needs equal truncations");
  std::vector<std::vector<Pair>> levels(N + 1);
  for (int n = 0; n <= N; ++n)
    for (std::size_t c = 0; c < parts.size(); ++c)
      for (int x = 0; x < parts[c]->size(n); ++x) levels[n].push_back({static_cast<int>(c), x});
  return build_keyed<Pair>(
      N, levels, [&](int n, const Pair& p, int i) { return Pair{p.first, parts[p.first]->face(n, p.second, i)}; },
      [&](int n, const Pair& p, int i) { return Pair{p.first, parts[p.first]->degen(n, p.second, i)}; },
      [&](int n, const Pair& p) { return parts[p.first]->simplex_string(n, p.second) + suffixes[p.first]; });
}

Keyed<int> subcomplex(const SSet& X, const std::vector<std::vector<char>>& keep, int N) {
  if (N < 0) N = X.truncation();
  std::vector<std::vector<int>> levels(N + 1);
  for (int n = 0; n <= N; ++n)
    for (int x = 0; x < X.size(n); ++x)
      if (keep[n][x]) levels[n].push_back(x);
  return build_keyed<int>(
      N, levels, [&](int n, int x, int i) { return X.face(n, x, i); },
      [&](int n, int x, int i) { return X.degen(n, x, i); }, [&](int n, int x) { return X.simplex_string(n, x); });
}

int connected_components(const SSet& X) {
  const int V = X.size(0);
  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int a) { return parent[a] == a ? a : parent[a] = root(parent[a]); };
  int comps = V;
  for (int e = 0; e < X.size(1); ++e) {
    int a = root(X.face(1, e, 0)), b = root(X.face(1, e, 1));
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

}  // namespace mfib
