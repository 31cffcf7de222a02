#include "rootdata.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace lfp::rd {

std::vector<std::pair<int, int>> RootDatum::roots() const {
  std::vector<std::pair<int, int>> r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) r.emplace_back(i, j);
  return r;
}

std::string RootDatum::str() const {
  return (type == Type::GL ? "GL" : "SL") + std::to_string(n);
}

RootDatum parse_root_datum(const std::string& s) {
  RootDatum rd;
  if (s.rfind("GL", 0) == 0) rd.type = RootDatum::Type::GL;
  else if (s.rfind("SL", 0) == 0) rd.type = RootDatum::Type::SL;
  else throw usage_error("parse_root_datum: expected GLn or SLn, got '" + s + "'");
  rd.n = std::stoi(s.substr(2));
  if (rd.n < 1 || rd.n > 6) throw usage_error("parse_root_datum: rank out of range");
  if (rd.type == RootDatum::Type::SL && rd.n < 2)
    throw usage_error("parse_root_datum: SL needs n >= 2");
  return rd;
}

Rat root_value(const Apt& x, int i, int j) { return x[i] - x[j]; }

std::int64_t apartment_denominator(const Apt& x) {
  std::int64_t d = 1;
  for (const Rat& c : x) d = lcm64(d, c.denominator());
  return d;
}

bool GradedLabel::operator==(const GradedLabel& o) const {
  if (is_torus != o.is_torus) return false;
  return is_torus ? k == o.k : (i == o.i && j == o.j && c == o.c);
}

bool GradedLabel::operator<(const GradedLabel& o) const {
  if (is_torus != o.is_torus) return is_torus;  // torus labels first
  if (is_torus) return k < o.k;
  if (i != o.i) return i < o.i;
  if (j != o.j) return j < o.j;
  return c < o.c;
}

std::string GradedLabel::str() const {
  if (is_torus) return "h" + std::to_string(k + 1);
  return "e" + std::to_string(i + 1) + std::to_string(j + 1) + "*pi^" + rat_str(c);
}

int GradedModel::index_of(const GradedLabel& l) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return static_cast<int>(i);
  return -1;
}

GradedModel graded_piece(const RootDatum& rd, const Apt& x, const Rat& s, std::int64_t e,
                         const lf::FqCtx* field) {
  if (static_cast<int>(x.size()) != rd.n)
    throw domain_error("graded_piece: apartment point has wrong length");
  if (!is_integer(s * Rat(e))) throw domain_error("graded_piece: grade off the (1/e)Z grid");
  if (apartment_denominator(x) > 0 && e % apartment_denominator(x) != 0)
    throw domain_error("graded_piece: apartment denominators must divide e");
  GradedModel m;
  m.rd = rd;
  m.x = x;
  m.s = s;
  m.e = e;
  m.field = field;
  if (is_integer(s))
    for (int k = 0; k < rd.rank(); ++k) m.labels.push_back({true, k, 0, 0, s});
  for (auto [i, j] : rd.roots()) {
    Rat c = s - root_value(x, i, j);
    if (is_integer(c)) m.labels.push_back({false, 0, i, j, c});
  }
  std::sort(m.labels.begin(), m.labels.end());
  return m;
}

ReductiveQuotient reductive_quotient(const RootDatum& rd, const Apt& x) {
  ReductiveQuotient rq;
  for (auto [i, j] : rd.roots())
    if (is_integer(root_value(x, i, j))) rq.roots.emplace_back(i, j);
  // W_x is generated by the reflections (transpositions) of the integral roots.
  std::set<std::vector<int>> seen;
  std::vector<int> id(rd.n);
  for (int i = 0; i < rd.n; ++i) id[i] = i;
  seen.insert(id);
  std::vector<std::vector<int>> gens;
  for (auto [i, j] : rq.roots) {
    if (i > j) continue;
    std::vector<int> t = id;
    std::swap(t[i], t[j]);
    gens.push_back(t);
  }
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        std::vector<int> wg(rd.n);
        for (int i = 0; i < rd.n; ++i) wg[i] = w[g[i]];
        if (seen.insert(wg).second) next.push_back(wg);
      }
    frontier = std::move(next);
  }
  rq.weyl.assign(seen.begin(), seen.end());
  return rq;
}

GradedModel shift_by_scalar(const GradedModel& m, const Rat& v) {
  GradedModel out = m;
  out.s = m.s + v;
  for (auto& l : out.labels) l.c += v;
  return out;
}

AffineWeyl AffineWeyl::identity(int n) {
  AffineWeyl a;
  a.w.resize(n);
  for (int i = 0; i < n; ++i) a.w[i] = i;
  a.lambda.assign(n, 0);
  return a;
}

AffineWeyl AffineWeyl::compose(const AffineWeyl& other) const {
  // (w1,l1) after (w2,l2): x -> w1(w2(x - l2) - l1) = (w1 w2)(x - l2 - w2^{-1} l1).
  int n = static_cast<int>(w.size());
  AffineWeyl out;
  out.w.resize(n);
  out.lambda.resize(n);
  for (int i = 0; i < n; ++i) out.w[i] = w[other.w[i]];
  for (int i = 0; i < n; ++i) out.lambda[i] = other.lambda[i] + lambda[other.w[i]];
  return out;
}

std::vector<AffineWeyl> affine_weyl_ball(const RootDatum& rd, int length_bound, size_t cap) {
  int n = rd.n;
  std::vector<AffineWeyl> gens;
  for (int k = 0; k + 1 < n; ++k) {
    AffineWeyl s = AffineWeyl::identity(n);
    std::swap(s.w[k], s.w[k + 1]);
    gens.push_back(s);
  }
  int tmax = (rd.type == RootDatum::Type::GL) ? n : n - 1;
  for (int k = 0; k < tmax; ++k) {
    AffineWeyl t = AffineWeyl::identity(n);
    t.lambda[k] = 1;
    if (rd.type == RootDatum::Type::SL) t.lambda[k + 1] = -1;
    gens.push_back(t);
    AffineWeyl ti = AffineWeyl::identity(n);
    for (int i = 0; i < n; ++i) ti.lambda[i] = -t.lambda[i];
    gens.push_back(ti);
  }
  std::set<AffineWeyl> seen;
  seen.insert(AffineWeyl::identity(n));
  std::vector<AffineWeyl> frontier{AffineWeyl::identity(n)};
  for (int len = 0; len < length_bound && seen.size() < cap; ++len) {
    std::vector<AffineWeyl> next;
    for (const auto& a : frontier)
      for (const auto& g : gens) {
        AffineWeyl ag = g.compose(a);
        if (seen.size() >= cap) break;
        if (seen.insert(ag).second) next.push_back(ag);
      }
    frontier = std::move(next);
  }
  return std::vector<AffineWeyl>(seen.begin(), seen.end());
}

namespace {

// Full-diagonal coordinates of the torus part (length n).
std::vector<lf::fq_t> torus_to_diag(const RootDatum& rd, const lf::FqCtx* F,
                                    const std::vector<lf::fq_t>& tc) {
  std::vector<lf::fq_t> d(rd.n, 0);
  if (rd.type == RootDatum::Type::GL) {
    for (int k = 0; k < rd.n; ++k) d[k] = tc[k];
  } else {
    for (int k = 0; k + 1 < rd.n; ++k) {
      d[k] = F->add(d[k], tc[k]);
      d[rd.n - 1] = F->sub(d[rd.n - 1], tc[k]);
    }
  }
  return d;
}

std::vector<lf::fq_t> diag_to_torus(const RootDatum& rd, const lf::FqCtx* F,
                                    const std::vector<lf::fq_t>& d) {
  std::vector<lf::fq_t> tc(rd.rank(), 0);
  if (rd.type == RootDatum::Type::GL) {
    for (int k = 0; k < rd.n; ++k) tc[k] = d[k];
  } else {
    // d has trace 0; coordinates in the basis E_kk - E_nn are d_k, k < n-1
    // ... wait: sum_k tc_k (E_kk - E_nn) has diagonal (tc_0,...,tc_{n-2}, -sum).
    for (int k = 0; k + 1 < rd.n; ++k) tc[k] = d[k];
    // consistency: d[n-1] must equal -(sum of the others)
    lf::fq_t s = 0;
    for (int k = 0; k + 1 < rd.n; ++k) s = F->add(s, d[k]);
    if (F->add(s, d[rd.n - 1]) != 0)
      throw domain_error("diag_to_torus: diagonal is not trace-zero");
  }
  return tc;
}

}  // namespace

Transported act_affine_weyl(const RootDatum& rd, const AffineWeyl& aw, const GradedModel& m,
                            const std::vector<lf::fq_t>& coeffs) {
  int n = rd.n;
  if (static_cast<int>(aw.w.size()) != n)
    throw domain_error("act_affine_weyl: element has the wrong rank");
  if (rd.type == RootDatum::Type::SL) {
    std::int64_t s = 0;
    for (auto l : aw.lambda) s += l;
    if (s != 0) throw domain_error("act_affine_weyl: SL translation must be in the coroot lattice");
  }
  if (coeffs.size() != m.labels.size())
    throw domain_error("act_affine_weyl: coefficient vector length mismatch");
  Apt x2(n);
  for (int i = 0; i < n; ++i) x2[aw.w[i]] = m.x[i] - Rat(aw.lambda[i]);
  GradedModel m2 = graded_piece(rd, x2, m.s, m.e, m.field);
  std::vector<lf::fq_t> out(m2.labels.size(), 0);

  // Torus part: diagonal entries permute.
  const lf::FqCtx* F = m.field;
  if (is_integer(m.s)) {
    std::vector<lf::fq_t> tc(rd.rank(), 0);
    for (size_t li = 0; li < m.labels.size(); ++li)
      if (m.labels[li].is_torus) tc[m.labels[li].k] = coeffs[li];
    std::vector<lf::fq_t> d = torus_to_diag(rd, F, tc);
    std::vector<lf::fq_t> d2(n);
    for (int i = 0; i < n; ++i) d2[aw.w[i]] = d[i];
    std::vector<lf::fq_t> tc2 = diag_to_torus(rd, F, d2);
    for (size_t li = 0; li < m2.labels.size(); ++li)
      if (m2.labels[li].is_torus) out[li] = tc2[m2.labels[li].k];
  }
  for (size_t li = 0; li < m.labels.size(); ++li) {
    const GradedLabel& l = m.labels[li];
    if (l.is_torus) continue;
    GradedLabel nl;
    nl.is_torus = false;
    nl.i = aw.w[l.i];
    nl.j = aw.w[l.j];
    nl.c = l.c + Rat(aw.lambda[l.i] - aw.lambda[l.j]);
    int idx = m2.index_of(nl);
    if (idx < 0) throw invariant_error("act_affine_weyl: transported label missing");
    out[idx] = coeffs[li];
  }
  return {x2, m2, out};
}

std::vector<Torsion> weyl_orbit(const RootDatum& rd, const Torsion& t) {
  int n = rd.n;
  if (static_cast<int>(t.size()) != rd.rank())
    throw domain_error("weyl_orbit: torsion vector has the wrong rank");
  // Enumerate all of S_n directly (n is tiny).
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::set<Torsion> orb;
  do {
    std::vector<Rat> lift(n, Rat(0));
    for (int k = 0; k < rd.rank(); ++k) lift[k] = t[k];
    std::vector<Rat> moved(n);
    for (int i = 0; i < n; ++i) moved[perm[i]] = lift[i];
    Torsion res;
    if (rd.type == RootDatum::Type::GL) {
      res.assign(moved.begin(), moved.end());
    } else {
      // normalize modulo the diagonal: subtract the last entry
      res.resize(n - 1);
      for (int k = 0; k + 1 < n; ++k) res[k] = qmod1(moved[k] - moved[n - 1]);
    }
    for (auto& v : res) v = qmod1(v);
    orb.insert(res);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::vector<Torsion>(orb.begin(), orb.end());
}

Torsion torsion_scale(const Torsion& t, std::int64_t q) {
  Torsion out = t;
  for (auto& v : out) v = qmod1(v * Rat(q));
  return out;
}

std::optional<Torsion> torsion_canonical(const RootDatum& rd, const Torsion& t, std::int64_t q) {
  auto orb = weyl_orbit(rd, t);
  Torsion qt = torsion_scale(t, q);
  bool fixed = std::find(orb.begin(), orb.end(), qt) != orb.end();
  if (!fixed) return std::nullopt;
  return orb.front();  // orbit is sorted; lex-least member
}

std::vector<Torsion> depth_zero_space(const RootDatum& rd, std::int64_t q,
                                      std::int64_t denominator_bound) {
  if (denominator_bound == 0) {
    // Exponent of W = S_n is lcm(1..n); any solution satisfies
    // (q^d - 1) x = 0 for some element order d | exponent, and
    // q^d - 1 divides q^exponent - 1.
    std::int64_t expo = 1;
    for (int k = 2; k <= rd.n; ++k) expo = lcm64(expo, k);
    denominator_bound = 1;
    for (int k = 0; k < expo; ++k) denominator_bound *= q;
    denominator_bound -= 1;
  }
  std::set<Torsion> classes;
  int r = rd.rank();
  std::vector<std::int64_t> idx(r, 0);
  while (true) {
    Torsion t(r);
    for (int k = 0; k < r; ++k) t[k] = qmod1(Rat(idx[k], denominator_bound));
    auto can = torsion_canonical(rd, t, q);
    if (can) classes.insert(*can);
    int k = 0;
    while (k < r) {
      if (++idx[k] < denominator_bound) break;
      idx[k] = 0;
      ++k;
    }
    if (k == r) break;
  }
  return std::vector<Torsion>(classes.begin(), classes.end());
}

std::string torsion_str(const Torsion& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + rat_str(t[i]);
  return s + ")";
}

}  // namespace lfp::rd
