#include "tower.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "errors.hpp"

namespace lfp::lf {

namespace {

std::string step_str(const StepSpec& s) {
  switch (s.kind) {
    case StepSpec::Kind::Unramified:
      return "u" + std::to_string(s.param);
    case StepSpec::Kind::Tame:
      return "t" + std::to_string(s.param);
    case StepSpec::Kind::ArtinSchreier:
      return "a" + std::to_string(s.param);
  }
  return "?";
}

// Exponent stretch x(pi_old) -> x(pi_new^m); exact.
Series stretch(const Series& x, int m, std::int64_t prec_cap) {
  Series s;
  s.F = x.F;
  s.lo = x.lo * m;
  s.prec = x.prec * m;
  s.c.assign(s.prec - s.lo, 0);
  for (size_t i = 0; i < x.c.size(); ++i) s.c[m * static_cast<std::int64_t>(i)] = x.c[i];
  s.normalize();
  return s.truncated(std::min(s.prec, prec_cap));
}

void ext_euclid(std::int64_t m, std::int64_t p, std::int64_t& a, std::int64_t& b) {
  // a*m + b*p = gcd(m, p) = 1
  std::int64_t r0 = m, r1 = p, a0 = 1, a1 = 0, b0 = 0, b1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t;
    t = r0 - q * r1; r0 = r1; r1 = t;
    t = a0 - q * a1; a0 = a1; a1 = t;
    t = b0 - q * b1; b0 = b1; b1 = t;
  }
  if (r0 != 1) throw domain_error("artin_schreier: m must be coprime to p");
  a = a0;
  b = b0;
}

}  // namespace

std::string TowerDescriptor::key() const {
  std::string s = "p" + std::to_string(p) + "r" + std::to_string(residue_deg);
  for (const auto& st : steps) s += "." + step_str(st);
  return s;
}

std::string descriptor_to_string(const TowerDescriptor& d) { return d.key(); }

std::shared_ptr<const Tower> Tower::realize(const TowerDescriptor& d, std::int64_t prec) {
  if (prec == 0) prec = kDefaultPrec;
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Tower>> cache;
  std::string key = d.key() + "@" + std::to_string(prec);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto tw = std::shared_ptr<Tower>(new Tower());
  tw->build(d, prec);
  {
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = tw;
  }
  return tw;
}

void Tower::build(const TowerDescriptor& d, std::int64_t prec) {
  desc_ = d;
  prec_ = prec;
  if (d.p < 2) throw domain_error("tower: p must be prime");
  const FqCtx* k0 = FqCtx::get(d.p, d.residue_deg);
  levels_.push_back({k0, Series::monomial(k0, 1, 1, prec)});
  gal_.push_back({0, Series::monomial(k0, 1, 1, prec)});
  int expected = 1;

  for (const StepSpec& st : d.steps) {
    const FqCtx* K = levels_.back().k;
    switch (st.kind) {
      case StepSpec::Kind::Unramified: {
        int k = st.param;
        if (k < 1) throw domain_error("unramified step: need k >= 1");
        const FqCtx* K2 = FqCtx::get(d.p, K->deg * k);
        for (auto& lv : levels_) {
          lv.pi_in_top = s_embed(lv.pi_in_top, K2);
          lv.k = lv.k;  // residue of the level itself is unchanged
        }
        for (auto& a : gal_) a.pi_img = s_embed(a.pi_img, K2);
        levels_.push_back({K2, Series::monomial(K2, 1, 1, prec)});
        if (k > 1) gal_.push_back({K->deg, Series::monomial(K2, 1, 1, prec)});
        expected *= k;
        break;
      }
      case StepSpec::Kind::Tame: {
        int m = st.param;
        if (m < 1 || m % d.p == 0) throw domain_error("tame step: need m >= 1 coprime to p");
        if (m > 1 && (K->q - 1) % m != 0)
          throw domain_error("tame step: residue field lacks the m-th roots of unity");
        for (auto& lv : levels_) lv.pi_in_top = stretch(lv.pi_in_top, m, prec);
        std::vector<Aut> old = std::move(gal_);
        gal_.clear();
        for (const auto& a : old) {
          Series H = stretch(a.pi_img, m, prec);
          gal_.push_back({a.frob, s_nth_root(H, m)});
        }
        levels_.push_back({K, Series::monomial(K, 1, 1, prec)});
        if (m > 1) {
          fq_t zeta = K->pow(K->generator(), (K->q - 1) / m);
          gal_.push_back({0, Series::monomial(K, zeta, 1, prec)});
        }
        expected *= m;
        break;
      }
      case StepSpec::Kind::ArtinSchreier: {
        int m = st.param;
        if (m < 1 || m % d.p == 0)
          throw domain_error("artin_schreier step: need m >= 1 coprime to p");
        std::int64_t a, b;
        ext_euclid(m, d.p, a, b);
        // Solve u = pi^m (1 - u^{p-1})^b; then the old uniformizer is
        // pi^p (1 - u^{p-1})^{-a} and the root y = pi^{-m} (1 - u^{p-1})^{-b}.
        Series one = Series::one(K, prec);
        Series u = Series::monomial(K, 1, m, prec);
        std::int64_t iters = prec / ((d.p - 1) * m) + 3;
        for (std::int64_t it = 0; it < iters; ++it) {
          Series nu = s_mul(Series::monomial(K, 1, m, prec),
                            s_pow(s_sub(one, s_pow(u, d.p - 1)), b));
          if (s_eq(nu, u)) {
            u = nu;
            break;
          }
          u = nu;
        }
        Series unit = s_sub(one, s_pow(u, d.p - 1));
        Series w = s_mul(Series::monomial(K, 1, d.p, prec), s_pow(unit, -a));
        Series y = s_mul(Series::monomial(K, 1, -m, prec), s_pow(unit, -b));
        if (!s_eq(s_sub(s_pow(y, d.p), y), s_pow(w, -m)))
          throw invariant_error("artin_schreier step: defining relation failed");
        for (auto& lv : levels_) lv.pi_in_top = s_subst(lv.pi_in_top, w);
        std::vector<Aut> old = std::move(gal_);
        gal_.clear();
        for (const auto& aut : old) {
          Series h_new = s_subst(aut.pi_img, w);
          Series z = s_artin_schreier_root(s_pow(h_new, -m));
          gal_.push_back({aut.frob, s_mul(s_pow(z, -a), s_pow(h_new, b))});
        }
        levels_.push_back({K, Series::monomial(K, 1, 1, prec)});
        Series z1 = s_add(y, Series::one(K, prec));
        gal_.push_back({0, s_mul(s_pow(z1, -a), s_pow(w, b))});
        expected *= d.p;
        break;
      }
    }
    close_group(expected);
  }
  if (levels_.size() == 1) {
    // trivial tower: identity only
    mul_table_ = {{0}};
    return;
  }
}

int Tower::find_aut(const Aut& a) const {
  int deg = top()->deg;
  for (size_t i = 0; i < gal_.size(); ++i) {
    if (((gal_[i].frob - a.frob) % deg + deg) % deg != 0) continue;
    if (s_eq(gal_[i].pi_img, a.pi_img)) return static_cast<int>(i);
  }
  return -1;
}

Series Tower::apply(int aut_idx, const Series& x) const {
  const Aut& a = gal_[aut_idx];
  return s_subst(s_frob(x, a.frob), a.pi_img);
}

void Tower::close_group(int expected_order) {
  int deg = top()->deg;
  for (auto& a : gal_) a.frob = ((a.frob % deg) + deg) % deg;
  // Deduplicate, then close under composition.
  std::vector<Aut> uniq;
  for (const auto& a : gal_) {
    bool seen = false;
    for (const auto& b : uniq)
      if ((a.frob - b.frob) % deg == 0 && s_eq(a.pi_img, b.pi_img)) seen = true;
    if (!seen) uniq.push_back(a);
  }
  gal_ = std::move(uniq);
  size_t frontier = 0;
  while (frontier < gal_.size()) {
    size_t upto = gal_.size();
    if (static_cast<int>(upto) > expected_order)
      throw invariant_error("tower: automorphism closure exceeded the expected order");
    for (size_t i = 0; i < upto; ++i) {
      for (size_t j = (i < frontier ? frontier : 0); j < upto; ++j) {
        Aut comp;
        comp.frob = (gal_[i].frob + gal_[j].frob) % deg;
        comp.pi_img = apply(static_cast<int>(i), gal_[j].pi_img);
        if (find_aut(comp) == -1) gal_.push_back(std::move(comp));
      }
    }
    frontier = upto;
  }
  if (static_cast<int>(gal_.size()) != expected_order)
    throw domain_error("tower: extension is not Galois over its base (order " +
                       std::to_string(gal_.size()) + " != " + std::to_string(expected_order) +
                       ")");
  // Identity first, then build the composition table.
  Aut id{0, Series::monomial(top(), 1, 1, prec_)};
  int idi = find_aut(id);
  if (idi < 0) throw invariant_error("tower: identity automorphism missing");
  std::swap(gal_[0], gal_[idi]);
  mul_table_.assign(gal_.size(), std::vector<int>(gal_.size(), -1));
  for (size_t i = 0; i < gal_.size(); ++i)
    for (size_t j = 0; j < gal_.size(); ++j) {
      Aut comp;
      comp.frob = (gal_[i].frob + gal_[j].frob) % deg;
      comp.pi_img = apply(static_cast<int>(i), gal_[j].pi_img);
      int k = find_aut(comp);
      if (k < 0) throw invariant_error("tower: composition left the group");
      mul_table_[i][j] = k;
    }
}

std::int64_t Tower::e(int base_level) const {
  return levels_[base_level].pi_in_top.valuation();
}

int Tower::degree(int base_level) const {
  std::int64_t res_ratio = top()->deg / levels_[base_level].k->deg;
  return static_cast<int>(e(base_level) * res_ratio);
}

Rat Tower::val(const Series& x) const { return Rat(x.valuation(), e(0)); }

int Tower::aut_inverse(int i) const {
  for (size_t j = 0; j < gal_.size(); ++j)
    if (mul_table_[i][j] == 0) return static_cast<int>(j);
  throw invariant_error("tower: automorphism has no inverse");
}

bool Tower::aut_in_inertia(int i) const { return gal_[i].frob % top()->deg == 0; }

std::vector<int> Tower::gal_fixing(int level) const {
  std::vector<int> out;
  int ldeg = levels_[level].k->deg;
  const Series& pi = levels_[level].pi_in_top;
  for (int i = 0; i < gal_size(); ++i) {
    if (gal_[i].frob % ldeg != 0) continue;
    if (s_eq(apply(i, pi), pi)) out.push_back(i);
  }
  return out;
}

bool Tower::is_galois_over(int level) const {
  return static_cast<int>(gal_fixing(level).size()) == degree(level);
}

RatOrInf Tower::depth_of_aut(int aut_idx, int base_level) const {
  (void)base_level;  // the normalized depth does not depend on the base
  if (aut_idx == 0) return RatOrInf::infinity();
  if (!aut_in_inertia(aut_idx))
    throw domain_error("depth_of_aut: automorphism is not in the inertia subgroup");
  const Series pi = Series::monomial(top(), 1, 1, prec_);
  Series rel = s_div(s_sub(gal_[aut_idx].pi_img, pi), pi);
  return RatOrInf::of(val(rel));
}

ram::RamDatum Tower::ramdatum(int base_level) const {
  std::vector<int> ids = gal_fixing(base_level);
  if (static_cast<int>(ids.size()) != degree(base_level))
    throw domain_error("ramdatum: tower is not Galois over the requested level");
  // Identity (index 0 in gal_) sorts first.
  std::sort(ids.begin(), ids.end());
  std::map<int, int> reindex;
  for (size_t i = 0; i < ids.size(); ++i) reindex[ids[i]] = static_cast<int>(i);
  ram::RamDatum d;
  d.elements.resize(ids.size());
  d.mul.assign(ids.size(), std::vector<int>(ids.size()));
  for (size_t i = 0; i < ids.size(); ++i) {
    d.elements[i] = "g" + std::to_string(ids[i]);
    for (size_t j = 0; j < ids.size(); ++j)
      d.mul[i][j] = reindex.at(mul_table_[ids[i]][ids[j]]);
  }
  for (size_t i = 0; i < ids.size(); ++i) {
    if (!aut_in_inertia(ids[i])) continue;
    d.inertia.push_back(static_cast<int>(i));
    if (ids[i] != 0) {
      RatOrInf dep = depth_of_aut(ids[i], base_level);
      d.depth[static_cast<int>(i)] = *dep.v;
    }
  }
  d.e = static_cast<std::int64_t>(d.inertia.size());
  d.e_base = e(0) / e(base_level);
  if (d.e != e(base_level))
    throw invariant_error("ramdatum: inertia order does not match the ramification index");
  d.validate();
  return d;
}

Series Tower::lift(const Series& x, int level) const {
  Series xe = s_embed(x, top());
  return s_subst(xe, levels_[level].pi_in_top);
}

Series Tower::to_level(const Series& x, int level) const {
  const FqCtx* kj = levels_[level].k;
  const Series& img = levels_[level].pi_in_top;
  std::int64_t erel = img.valuation();
  if (level == num_levels() - 1 && kj == top()) return x;
  std::map<std::int64_t, Series> pow_cache;
  auto img_pow = [&](std::int64_t n) -> const Series& {
    auto it = pow_cache.find(n);
    if (it == pow_cache.end()) it = pow_cache.emplace(n, s_pow(img, n)).first;
    return it->second;
  };
  Series residual = x;
  std::int64_t out_prec = x.prec / erel;
  Series out = Series::zero(kj, out_prec);
  while (!residual.is_zero_to_prec()) {
    std::int64_t v = residual.valuation();
    if (v % erel != 0)
      throw domain_error("to_level: element is not in the requested subfield");
    std::int64_t vj = v / erel;
    fq_t lead = residual.lead();
    fq_t c = top()->mul(lead, top()->inv(top()->pow(img.lead(), vj)));
    if (!top()->in_subfield(c, kj->deg))
      throw domain_error("to_level: coefficient lies outside the subfield");
    fq_t cj = kj->project_from(top(), c);
    if (vj < out_prec) out = s_add(out, Series::monomial(kj, cj, vj, out_prec));
    residual = s_sub(residual, s_scale(img_pow(vj), c));
  }
  return out;
}

Series Tower::trace(const Series& x, int base_level) const {
  std::vector<int> ids = gal_fixing(base_level);
  if (static_cast<int>(ids.size()) != degree(base_level))
    throw domain_error("trace: tower is not Galois over the requested level");
  Series acc = Series::zero(top(), prec_);
  for (int i : ids) acc = s_add(acc, apply(i, x));
  return to_level(acc, base_level);
}

Series Tower::norm(const Series& x, int base_level) const {
  std::vector<int> ids = gal_fixing(base_level);
  if (static_cast<int>(ids.size()) != degree(base_level))
    throw domain_error("norm: tower is not Galois over the requested level");
  Series acc = Series::one(top(), prec_);
  for (int i : ids) acc = s_mul(acc, apply(i, x));
  return to_level(acc, base_level);
}

Rat Tower::character_value(const AdditiveCharacter& chr, const Series& z, int level) const {
  if (chr.p != desc_.p) throw domain_error("character_value: character/field mismatch");
  Series zl = lift(z, level);
  // Tr_{E_level/E_0} as a sum over coset representatives of Gal(L/E_level)
  // inside Gal(L/E_0).
  std::vector<int> sub = gal_fixing(level);
  std::vector<int> all = gal_fixing(0);
  if (static_cast<int>(all.size()) != degree(0))
    throw domain_error("character_value: tower is not Galois over its base");
  std::vector<bool> covered(gal_size(), false);
  Series acc = Series::zero(top(), prec_);
  for (int g : all) {
    if (covered[g]) continue;
    for (int h : sub) covered[mul_table_[g][h]] = true;
    acc = s_add(acc, apply(g, zl));
  }
  Series base = to_level(acc, 0);
  fq_t c0 = base.coeff(0);
  int tr = levels_[0].k->trace_to_fp(c0);
  return qmod1(Rat(static_cast<std::int64_t>(chr.unit) * tr, chr.p));
}

TraceImageReport trace_image_level(const Tower& tw, const Rat& s, int base_level) {
  std::int64_t etot = tw.e(0);
  Rat scaled = s * Rat(etot);
  if (!is_integer(scaled)) throw domain_error("trace_image_level: s is not on the grade grid");
  std::int64_t vtop = scaled.numerator();
  const FqCtx* ktop = tw.top();
  const FqCtx* kj = tw.field(base_level);
  int rel = ktop->deg / kj->deg;
  std::int64_t ej = etot / tw.e(base_level);  // e(E_j/E_0)

  bool any = false;
  Rat shift(0);
  bool surjective = false;
  for (int i = 0; i < rel; ++i) {
    fq_t b = (i == 0) ? 1 : ktop->pow(ktop->generator(), i);
    Series x = Series::monomial(ktop, b, vtop, tw.prec());
    Series t = tw.trace(x, base_level);
    if (t.is_zero_to_prec()) continue;
    Rat tv = Rat(t.valuation(), ej);
    Rat sh = tv - s;
    if (!any || sh < shift) shift = sh;
    any = true;
  }
  if (!any) throw precision_error("trace_image_level: all traces vanished to precision");
  // Surjectivity: the k_j-span of the graded image is all of E_{=(s+shift)}
  // iff some basis trace has valuation exactly s+shift, which is how shift
  // was produced.
  surjective = true;
  return {shift, surjective};
}

NormGradedReport norm_graded(const Tower& tw, const Rat& s, int base_level) {
  if (s <= Rat(0)) throw domain_error("norm_graded: s must be positive");
  std::int64_t etot = tw.e(0);
  Rat scaled = s * Rat(etot);
  if (!is_integer(scaled)) throw domain_error("norm_graded: s is not on the grade grid");
  std::int64_t vtop = scaled.numerator();

  ram::RamDatum datum = tw.ramdatum(base_level);
  ram::Breaks bk = ram::breaks(datum);
  ram::PLFun phi = ram::hh_phi(datum);
  Rat target = phi(s);

  const FqCtx* ktop = tw.top();
  const FqCtx* kj = tw.field(base_level);
  std::int64_t ej = etot / tw.e(base_level);
  Rat tscaled = target * Rat(ej);
  if (!is_integer(tscaled))
    throw invariant_error("norm_graded: target grade is off the base grid");
  std::int64_t vtarget = tscaled.numerator();

  std::vector<bool> hit(kj->q, false);
  bool additive = true;
  for (std::int64_t ai = 0; ai < ktop->q; ++ai) {
    fq_t a = static_cast<fq_t>(ai);
    Series x = Series::monomial(ktop, a, vtop, tw.prec());
    Series one = Series::one(ktop, tw.prec());
    Series nm = tw.norm(s_add(one, x), base_level);
    Series diff = s_sub(nm, Series::one(kj, nm.prec));
    fq_t res = 0;
    if (!diff.is_zero_to_prec()) {
      std::int64_t v = diff.valuation();
      if (v < vtarget)
        throw invariant_error("norm_graded: norm image below the target grade");
      if (v == vtarget) res = diff.coeff(v);
    } else if (diff.prec <= vtarget) {
      throw precision_error("norm_graded: cannot resolve the norm residue");
    }
    hit[res] = true;

    Series tr = tw.trace(x, base_level);
    fq_t tres = 0;
    if (!tr.is_zero_to_prec()) {
      std::int64_t v = tr.valuation();
      if (v == vtarget) tres = tr.coeff(v);
      else if (v < vtarget)
        tres = static_cast<fq_t>(-1);  // trace below target: cannot match
    } else if (tr.prec <= vtarget) {
      throw precision_error("norm_graded: cannot resolve the trace residue");
    }
    if (res != tres) additive = false;
  }
  bool surjective = true;
  for (std::int64_t v = 0; v < kj->q; ++v)
    if (!hit[v]) surjective = false;
  bool meaningful = s > bk.ell;
  return {target, surjective, meaningful && additive, meaningful};
}

bool check_tfae_field(const Tower& tw, const Rat& s, int base_level) {
  if (s < Rat(0)) throw domain_error("check_tfae_field: s must be >= 0");
  ram::RamDatum datum = tw.ramdatum(base_level);
  ram::PLFun psi = ram::hh_psi(datum);
  std::int64_t ej = tw.e(0) / tw.e(base_level);
  std::int64_t etot = tw.e(0);
  // Clause (3) at graded level: every base grade v in (s, s+2] must be hit
  // surjectively from the grade psi(v) piece upstairs.
  for (std::int64_t k = floor_rat(s * Rat(ej)) + 1;; ++k) {
    Rat v(k, ej);
    if (v <= s) continue;
    if (v > s + Rat(2)) break;
    Rat g = psi(v);
    if (!is_integer(g * Rat(etot))) return false;  // empty graded piece upstairs
    if (!norm_graded(tw, g, base_level).surjective) return false;
  }
  return true;
}

Rat character_pair(const Tower& tw, const AdditiveCharacter& chr, const Series& v,
                   const Series& x, int level) {
  Series prod = s_mul(v, x);
  return tw.character_value(chr, prod, level);
}

Rat character_conductor(const Tower& tw, const AdditiveCharacter& chr, int level) {
  const FqCtx* kl = tw.field(level);
  std::int64_t el = tw.e(0) / tw.e(level);  // e(E_level / E_0)
  // Scan grades downward; conductor = max grade carrying a nontrivial value.
  std::int64_t lo_guard = -4 * el - 4;
  for (std::int64_t k = 2 * el; k >= lo_guard; --k) {
    for (std::int64_t bi = 0; bi < kl->q; ++bi) {
      if (bi == 0) continue;
      Series z = Series::monomial(kl, static_cast<fq_t>(bi), k, tw.prec() / (tw.e(0) / el) + 1);
      if (tw.character_value(chr, z, level) != Rat(0)) return Rat(k, el);
    }
  }
  throw invariant_error("character_conductor: no nontrivial pairing found in range");
}

std::vector<TowerDescriptor> builtin_catalog() {
  using K = StepSpec::Kind;
  auto T = [](int m) { return StepSpec{K::Tame, m}; };
  auto U = [](int k) { return StepSpec{K::Unramified, k}; };
  auto A = [](int m) { return StepSpec{K::ArtinSchreier, m}; };
  std::vector<TowerDescriptor> v;
  auto add = [&](int p, std::vector<StepSpec> steps, const std::string& name) {
    v.push_back(TowerDescriptor{p, 1, std::move(steps), name});
  };
  add(3, {}, "trivial");
  add(3, {U(2)}, "unram2");
  add(3, {U(3)}, "unram3");
  add(3, {U(4)}, "unram4");
  add(3, {T(2)}, "tame2");
  add(3, {A(1)}, "as_cubic");
  add(3, {A(2)}, "as_cubic_m2");
  add(3, {U(2), T(2)}, "unram2_tame2");
  add(3, {U(2), T(4)}, "unram2_tame4");
  add(3, {U(2), T(8)}, "unram2_tame8");
  add(3, {U(3), T(2)}, "unram3_tame2");
  add(3, {T(2), A(1)}, "tame2_as1");
  add(3, {T(2), A(2)}, "tame2_as2");
  add(3, {U(2), A(1)}, "unram2_as1");
  add(3, {A(1), T(2)}, "as1_tame2");
  add(3, {U(2), T(4), A(1)}, "unram2_tame4_as1");
  add(2, {A(1)}, "p2_as1");
  add(2, {A(3)}, "p2_as3");
  add(2, {U(2)}, "p2_unram2");
  add(2, {U(2), T(3)}, "p2_unram2_tame3");
  add(2, {U(2), T(3), A(1)}, "p2_unram2_tame3_as1");
  add(5, {A(1)}, "as_quintic");
  add(5, {A(2)}, "p5_as2");
  add(5, {A(3)}, "p5_as3");
  add(5, {T(2)}, "p5_tame2");
  add(5, {T(4)}, "p5_tame4");
  add(5, {U(2)}, "p5_unram2");
  add(5, {T(2), A(1)}, "p5_tame2_as1");
  return v;
}

TowerDescriptor catalog_lookup(const std::string& name) {
  std::string want = name;
  if (want == "AS3") want = "as_cubic";
  if (want == "AS5") want = "as_quintic";
  for (const auto& d : builtin_catalog())
    if (d.name == want) return d;
  throw not_found_error("catalog_lookup: no tower named '" + name + "'");
}

TowerDescriptor compositum_with_tame(const TowerDescriptor& d, int m) {
  // Supported chains: unram* [tame] [artin_schreier].
  std::vector<StepSpec> unram;
  int tame_m = 1;
  int as_m = 0;
  int state = 0;
  for (const auto& st : d.steps) {
    switch (st.kind) {
      case StepSpec::Kind::Unramified:
        if (state > 0) throw domain_error("compositum_with_tame: unsupported chain shape");
        unram.push_back(st);
        break;
      case StepSpec::Kind::Tame:
        if (state > 1) throw domain_error("compositum_with_tame: unsupported chain shape");
        state = 1;
        tame_m = st.param;
        break;
      case StepSpec::Kind::ArtinSchreier:
        if (state > 1) throw domain_error("compositum_with_tame: unsupported chain shape");
        state = 2;
        as_m = st.param;
        break;
    }
  }
  int l = static_cast<int>(lcm64(tame_m, m));
  TowerDescriptor out;
  out.p = d.p;
  out.residue_deg = d.residue_deg;
  out.steps = unram;
  if (l > 1) out.steps.push_back({StepSpec::Kind::Tame, l});
  if (as_m > 0) out.steps.push_back({StepSpec::Kind::ArtinSchreier, as_m * (l / tame_m)});
  out.name = d.name + "_x_tame" + std::to_string(m);
  return out;
}

TowerDescriptor find_adapted_extension(const std::vector<TowerDescriptor>& catalog,
                                       std::int64_t n, const Rat& eps) {
  if (catalog.empty()) throw domain_error("find_adapted_extension: empty catalog");
  if (n <= 0 || eps <= Rat(0))
    throw domain_error("find_adapted_extension: need n > 0 and eps > 0");
  for (const auto& d : catalog) {
    bool ok = false;
    try {
      ok = with_precision_retry(d, [&](const Tower& tw) {
        if (tw.e(0) % n != 0) return false;
        ram::Breaks bk = ram::breaks(tw.ramdatum(0));
        return bk.u < eps;
      });
    } catch (const Error&) {
      continue;  // non-realizable catalog entries are skipped
    }
    if (!ok) continue;
    // Last claim of the existence lemma: composing with a tame extension of
    // the base keeps both properties.  Verified on one compositum when one
    // is expressible in the catalog's chain shapes.
    try {
      const FqCtx* k0 = FqCtx::get(d.p, d.residue_deg);
      for (int m = 2; m <= 12; ++m) {
        if (m % d.p == 0 || (k0->q - 1) % m != 0) continue;
        TowerDescriptor comp = compositum_with_tame(d, m);
        bool stable = with_precision_retry(comp, [&](const Tower& tw) {
          ram::Breaks bk = ram::breaks(tw.ramdatum(0));
          return tw.e(0) % n == 0 && bk.u < eps;
        });
        if (!stable)
          throw invariant_error("find_adapted_extension: tame compositum broke adaptedness");
        break;
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Invariant) throw;
      // unsupported chain shape: skip the stability side-check
    }
    return d;
  }
  throw not_found_error("find_adapted_extension: no catalog member satisfies the bounds");
}

}  // namespace lfp::lf
