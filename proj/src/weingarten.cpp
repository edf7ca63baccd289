#include "qeorbit/weingarten.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qeorbit {

namespace {

long long llgcd(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::vector<long long> poly_mul(const std::vector<long long>& a,
                                const std::vector<long long>& b) {
  std::vector<long long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void poly_add_scaled(std::vector<long long>& a, const std::vector<long long>& b,
                     long long s) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
}

int128 checked_mul128(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("polynomial evaluation overflow");
  return r;
}

int128 checked_add128(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("polynomial evaluation overflow");
  return r;
}

int128 horner(const std::vector<long long>& coeffs, long long d) {
  int128 acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;)
    acc = checked_add128(checked_mul128(acc, d), coeffs[i]);
  return acc;
}

Partition cycle_type_of(const std::vector<int>& p) {
  const int k = static_cast<int>(p.size());
  std::vector<int> lens;
  std::vector<char> seen(k, 0);
  for (int x = 0; x < k; ++x) {
    if (seen[x]) continue;
    int len = 0, y = x;
    while (!seen[y]) {
      seen[y] = 1;
      y = p[y];
      ++len;
    }
    lens.push_back(len);
  }
  return Partition(lens);
}

}  // namespace

// ---------------------------------------------------------------------------
// SymmetricGroup

SymmetricGroup::SymmetricGroup(int k) : k_(k) {
  if (k < 1 || k > 4) throw std::invalid_argument("SymmetricGroup: k must be 1..4");
  types_ = partitions_of(k);

  std::vector<int> base(k);
  std::iota(base.begin(), base.end(), 0);
  std::map<std::vector<int>, int> index;
  do {
    index.emplace(base, static_cast<int>(perms_.size()));
    perms_.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));

  const int n = size();
  compose_.assign(n, std::vector<int>(n, 0));
  inverse_.assign(n, 0);
  type_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    std::vector<int> inv(k);
    for (int x = 0; x < k; ++x) inv[perms_[a][x]] = x;
    inverse_[a] = index.at(inv);
    const Partition t = cycle_type_of(perms_[a]);
    type_[a] = static_cast<int>(std::find(types_.begin(), types_.end(), t) -
                                types_.begin());
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(k);
      for (int x = 0; x < k; ++x) c[x] = perms_[a][perms_[b][x]];
      compose_[a][b] = index.at(c);
    }
  }
}

const SymmetricGroup& SymmetricGroup::get(int k) {
  static const SymmetricGroup g1(1), g2(2), g3(3), g4(4);
  switch (k) {
    case 1: return g1;
    case 2: return g2;
    case 3: return g3;
    case 4: return g4;
    default: throw std::invalid_argument("SymmetricGroup::get: k must be 1..4");
  }
}

// ---------------------------------------------------------------------------
// CharacterTable

CharacterTable::CharacterTable(int k) : k_(k) {
  labels_ = partitions_of(k);
  switch (k) {
    case 1:
      chi_ = {{1}};
      break;
    case 2:
      // classes: (2), (1,1)
      chi_ = {{1, 1},    // trivial
              {-1, 1}};  // sign
      break;
    case 3:
      // classes: (3), (2,1), (1,1,1)
      chi_ = {{1, 1, 1},    // trivial
              {-1, 0, 2},   // standard
              {1, -1, 1}};  // sign
      break;
    case 4:
      // classes: (4), (3,1), (2,2), (2,1,1), (1,1,1,1)
      chi_ = {{1, 1, 1, 1, 1},      // trivial
              {-1, 0, -1, 1, 3},    // standard
              {0, -1, 2, 0, 2},     // two-dimensional
              {1, 0, -1, -1, 3},    // standard (x) sign
              {-1, 1, 1, -1, 1}};   // sign
      break;
    default:
      throw std::invalid_argument("CharacterTable: k must be 1..4");
  }
  class_size_.resize(labels_.size());
  for (std::size_t c = 0; c < labels_.size(); ++c)
    class_size_[c] = conjugacy_class_size(labels_[c]);
  verify();
}

void CharacterTable::verify() const {
  const long long kfact = factorial(k_);
  const int n = count();
  long long census = 0;
  for (int c = 0; c < n; ++c) census += class_size_[c];
  if (census != kfact) throw std::logic_error("character table: class size census");
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = 0; r2 < n; ++r2) {
      long long s = 0;
      for (int c = 0; c < n; ++c) s += class_size_[c] * chi_[r1][c] * chi_[r2][c];
      if (s != (r1 == r2 ? kfact : 0))
        throw std::logic_error("character table: row orthogonality");
    }
  for (int r = 0; r < n; ++r) {
    long long hooks = 1;
    for (int h : labels_[r].hook_lengths()) hooks *= h;
    if (dim(r) * hooks != kfact)
      throw std::logic_error("character table: hook length dimension");
  }
}

const CharacterTable& CharacterTable::get(int k) {
  static const CharacterTable t1(1), t2(2), t3(3), t4(4);
  switch (k) {
    case 1: return t1;
    case 2: return t2;
    case 3: return t3;
    case 4: return t4;
    default: throw std::invalid_argument("CharacterTable::get: k must be 1..4");
  }
}

// ---------------------------------------------------------------------------
// RationalFunction

Rational RationalFunction::eval_at(long long d) const {
  if (d < -10000 || d > 10000)
    throw std::domain_error("RationalFunction::eval_at: |d| capped at 10000");
  return Rational(horner(num, d), horner(den, d));
}

// ---------------------------------------------------------------------------
// Character-sum evaluation (valid for every d >= 1)

Rational schur_at_ones(const Partition& lambda, long long d) {
  if (d < 1) throw std::invalid_argument("schur_at_ones: d must be >= 1");
  Rational out(1);
  const auto contents = lambda.contents();
  const auto hooks = lambda.hook_lengths();
  for (std::size_t i = 0; i < contents.size(); ++i)
    out *= Rational(d + contents[i], hooks[i]);
  return out;
}

Rational wg_general(const Partition& cycle_type, long long d) {
  const int k = cycle_type.weight();
  if (k < 1 || k > 4) throw std::invalid_argument("wg_general: degree must be 1..4");
  if (d < 1) throw std::invalid_argument("wg_general: d must be >= 1");
  const CharacterTable& ct = CharacterTable::get(k);
  int cls = -1;
  for (int c = 0; c < ct.count(); ++c)
    if (ct.labels()[c] == cycle_type) cls = c;
  if (cls < 0) throw std::invalid_argument("wg_general: bad cycle type");
  Rational sum(0);
  for (int r = 0; r < ct.count(); ++r) {
    const Partition& lambda = ct.labels()[r];
    if (lambda.length() > d) continue;  // schur_at_ones vanishes: irrep absent
    const long long f = ct.dim(r);
    sum += Rational(f * f * ct.value(r, cls)) / schur_at_ones(lambda, d);
  }
  const long long kfact = factorial(k);
  return sum / Rational(kfact * kfact);
}

// ---------------------------------------------------------------------------
// WeingartenTable

WeingartenTable::WeingartenTable(int k) : k_(k) {
  if (k < 1 || k > 4) throw std::invalid_argument("WeingartenTable: k must be 1..4");
  types_ = partitions_of(k);
  const CharacterTable& ct = CharacterTable::get(k);

  // Content multiplicity census over all shapes of weight k.
  std::map<int, int> maxmult;
  std::vector<std::map<int, int>> shape_mult(types_.size());
  for (std::size_t r = 0; r < types_.size(); ++r) {
    for (int c : ct.labels()[r].contents()) ++shape_mult[r][c];
    for (const auto& [c, m] : shape_mult[r]) {
      auto it = maxmult.find(c);
      if (it == maxmult.end() || it->second < m) maxmult[c] = m;
    }
  }

  // Shared denominator k! * prod_c (d + c)^maxmult(c).
  std::vector<long long> den = {factorial(k)};
  for (const auto& [c, m] : maxmult)
    for (int i = 0; i < m; ++i) den = poly_mul(den, {c, 1});

  fns_.resize(types_.size());
  for (std::size_t cls = 0; cls < types_.size(); ++cls) {
    std::vector<long long> num = {0};
    for (std::size_t r = 0; r < types_.size(); ++r) {
      // Cofactor polynomial: denominator factors not used by this shape.
      std::vector<long long> q = {1};
      for (const auto& [c, m] : maxmult) {
        const auto it = shape_mult[r].find(c);
        const int used = (it == shape_mult[r].end()) ? 0 : it->second;
        for (int i = used; i < m; ++i) q = poly_mul(q, {c, 1});
      }
      poly_add_scaled(num, q, ct.dim(r) * ct.value(r, static_cast<int>(cls)));
    }
    long long g = 0;
    for (long long x : num) g = llgcd(g, x);
    for (long long x : den) g = llgcd(g, x);
    if (g > 1) {
      for (long long& x : num) x /= g;
      std::vector<long long> den_r = den;
      for (long long& x : den_r) x /= g;
      fns_[cls] = {std::move(num), std::move(den_r)};
    } else {
      fns_[cls] = {std::move(num), den};
    }
  }

  // Self-check: the rational forms must agree with the character sum at the
  // first few dimensions past the pole region.
  for (std::size_t cls = 0; cls < types_.size(); ++cls)
    for (long long d = k; d < k + 4; ++d)
      if (fns_[cls].eval_at(d) != wg_general(types_[cls], d))
        throw std::logic_error("WeingartenTable: rational form disagrees with character sum");
}

const RationalFunction& WeingartenTable::fn(const Partition& cycle_type) const {
  for (std::size_t i = 0; i < types_.size(); ++i)
    if (types_[i] == cycle_type) return fns_[i];
  throw std::invalid_argument("WeingartenTable::fn: bad cycle type");
}

Rational WeingartenTable::wg(const Partition& cycle_type, long long d) const {
  if (d < k_)
    throw std::invalid_argument("WeingartenTable::wg: rational form has poles at d < k");
  return fn(cycle_type).eval_at(d);
}

const WeingartenTable& WeingartenTable::get(int k) {
  static const WeingartenTable w1(1), w2(2), w3(3), w4(4);
  switch (k) {
    case 1: return w1;
    case 2: return w2;
    case 3: return w3;
    case 4: return w4;
    default: throw std::invalid_argument("WeingartenTable::get: k must be 1..4");
  }
}

// ---------------------------------------------------------------------------
// Entry moments

namespace {

std::vector<Rational> wg_by_type(int k, long long d) {
  const auto& types = SymmetricGroup::get(k).types();
  std::vector<Rational> v(types.size());
  for (std::size_t i = 0; i < types.size(); ++i) v[i] = wg_general(types[i], d);
  return v;
}

// sum over sigma stabilizing the row tuple and tau stabilizing the column
// tuple of Wg(type(tau sigma^{-1})).
Rational stabilizer_sum(const SymmetricGroup& g, std::span<const int> rows,
                        std::span<const int> cols, const std::vector<Rational>& wgv) {
  const int n = g.size();
  const int k = g.k();
  std::vector<char> row_ok(n), col_ok(n);
  for (int a = 0; a < n; ++a) {
    const auto& p = g.perm(a);
    bool r = true, c = true;
    for (int x = 0; x < k; ++x) {
      r = r && rows[x] == rows[p[x]];
      c = c && cols[x] == cols[p[x]];
    }
    row_ok[a] = r;
    col_ok[a] = c;
  }
  Rational total(0);
  for (int sa = 0; sa < n; ++sa) {
    if (!row_ok[sa]) continue;
    const int inv = g.inverse(sa);
    for (int ta = 0; ta < n; ++ta) {
      if (!col_ok[ta]) continue;
      total += wgv[g.type_index(g.compose(ta, inv))];
    }
  }
  return total;
}

}  // namespace

Rational entry_moment(std::span<const int> r, std::span<const int> c,
                      std::span<const int> s, std::span<const int> t, long long d) {
  const int k = static_cast<int>(r.size());
  if (k < 1 || k > 4 || c.size() != r.size() || s.size() != r.size() ||
      t.size() != r.size())
    throw std::invalid_argument("entry_moment: spans must have equal length 1..4");
  for (int a = 0; a < k; ++a)
    if (r[a] < 0 || r[a] >= d || c[a] < 0 || c[a] >= d || s[a] < 0 || s[a] >= d ||
        t[a] < 0 || t[a] >= d)
      throw std::invalid_argument("entry_moment: index out of range");

  const SymmetricGroup& g = SymmetricGroup::get(k);
  const std::vector<Rational> wgv = wg_by_type(k, d);
  const int n = g.size();
  std::vector<char> row_ok(n), col_ok(n);
  for (int a = 0; a < n; ++a) {
    const auto& p = g.perm(a);
    bool rok = true, cok = true;
    for (int x = 0; x < k; ++x) {
      rok = rok && r[x] == s[p[x]];
      cok = cok && c[x] == t[p[x]];
    }
    row_ok[a] = rok;
    col_ok[a] = cok;
  }
  Rational total(0);
  for (int sa = 0; sa < n; ++sa) {
    if (!row_ok[sa]) continue;
    const int inv = g.inverse(sa);
    for (int ta = 0; ta < n; ++ta) {
      if (!col_ok[ta]) continue;
      total += wgv[g.type_index(g.compose(ta, inv))];
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Exact moments of Y = sum_j ( sum_i mu_i |U_ij|^2 )^2
//
// The index-tuple sums run over an integer rescaling of the centered
// spectrum, accumulated as 128-bit integers over one shared structural
// denominator, so the rational arithmetic cannot blow up mid-sum; the
// rescaling is divided back out at the end.

namespace {

std::vector<Rational> centered(std::span<const Rational> spectrum) {
  const int d = static_cast<int>(spectrum.size());
  if (d < 1) throw std::invalid_argument("spectrum must be nonempty");
  Rational mean(0);
  for (const Rational& x : spectrum) mean += x;
  mean /= Rational(d);
  std::vector<Rational> mu(spectrum.begin(), spectrum.end());
  for (Rational& x : mu) x -= mean;
  return mu;
}

int128 gcd128i(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int128 lcm128(int128 a, int128 b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul128(a / gcd128i(a, b), b);
}

int128 ipow128(int128 b, int e) {
  int128 r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul128(r, b);
  return r;
}

struct IntegerSpectrum {
  std::vector<int128> nu;  // nu_i = scale * (spectrum_i - mean), integers
  int128 scale;
};

IntegerSpectrum integerize(std::span<const Rational> spectrum) {
  const std::vector<Rational> mu = centered(spectrum);
  int128 scale = 1;
  for (const Rational& x : mu) scale = lcm128(scale, x.den());
  IntegerSpectrum out;
  out.scale = scale;
  out.nu.reserve(mu.size());
  for (const Rational& x : mu) {
    const Rational v = x * Rational(scale, 1);
    if (v.den() != 1) throw std::logic_error("integerize: rescaling failed");
    out.nu.push_back(v.num());
  }
  return out;
}

// Represent each rational weight as an integer over the shared denominator D.
std::vector<int128> over_common_denominator(const std::vector<Rational>& w,
                                            int128& d_out) {
  int128 den = 1;
  for (const Rational& x : w) den = lcm128(den, x.den());
  std::vector<int128> out;
  out.reserve(w.size());
  for (const Rational& x : w)
    out.push_back(checked_mul128(x.num(), den / x.den()));
  d_out = den;
  return out;
}

}  // namespace

Rational exact_m2(std::span<const Rational> spectrum) {
  const IntegerSpectrum is = integerize(spectrum);
  const long long d = static_cast<long long>(is.nu.size());
  const SymmetricGroup& g = SymmetricGroup::get(2);
  const std::vector<Rational> wgv = wg_by_type(2, d);
  const std::array<int, 2> cols = {0, 0};
  const std::array<int, 2> rows_same = {0, 0};
  const std::array<int, 2> rows_dist = {0, 1};
  // One identical contribution per column: weight d * stabilizer sum.
  const std::vector<Rational> weights = {
      Rational(d) * stabilizer_sum(g, rows_same, cols, wgv),
      Rational(d) * stabilizer_sum(g, rows_dist, cols, wgv)};
  int128 den = 1;
  const std::vector<int128> iw = over_common_denominator(weights, den);
  int128 total = 0;
  for (std::size_t i = 0; i < is.nu.size(); ++i)
    for (std::size_t j = 0; j < is.nu.size(); ++j)
      total = checked_add128(
          total, checked_mul128(checked_mul128(is.nu[i], is.nu[j]), iw[i == j ? 0 : 1]));
  return Rational(total, den) / Rational(ipow128(is.scale, 2), 1);
}

Rational exact_m4(std::span<const Rational> spectrum) {
  const IntegerSpectrum is = integerize(spectrum);
  const int d = static_cast<int>(is.nu.size());
  const SymmetricGroup& g = SymmetricGroup::get(4);
  const std::vector<Rational> wgv = wg_by_type(4, d);
  const std::array<int, 4> cols_merged = {0, 0, 0, 0};
  const std::array<int, 4> cols_split = {0, 0, 1, 1};
  const Rational n_merged(d), n_split(static_cast<long long>(d) * (d - 1));

  // Entry moments depend on index tuples only through their coincidence
  // pattern; enumerate the patterns of 4 indices once, weighting each by the
  // number of (column, column) pairs realizing it.
  std::map<std::array<int, 4>, int> pattern_slot;
  std::vector<Rational> weights;
  std::array<int, 4> t{};
  for (t[0] = 0; t[0] < 4; ++t[0])
    for (t[1] = 0; t[1] < 4; ++t[1])
      for (t[2] = 0; t[2] < 4; ++t[2])
        for (t[3] = 0; t[3] < 4; ++t[3]) {
          std::array<int, 4> pat{};
          int next = 0;
          for (int a = 0; a < 4; ++a) {
            int lbl = next;
            for (int b = 0; b < a; ++b)
              if (t[b] == t[a]) {
                lbl = pat[b];
                break;
              }
            if (lbl == next) ++next;
            pat[a] = lbl;
          }
          if (pattern_slot.contains(pat)) continue;
          pattern_slot.emplace(pat, static_cast<int>(weights.size()));
          weights.push_back(n_merged * stabilizer_sum(g, pat, cols_merged, wgv) +
                            n_split * stabilizer_sum(g, pat, cols_split, wgv));
        }
  int128 den = 1;
  const std::vector<int128> iw = over_common_denominator(weights, den);

  // Pattern lookup table indexed by the tuple's coincidence structure.
  int128 total = 0;
  std::array<int, 4> idx{};
  for (idx[0] = 0; idx[0] < d; ++idx[0]) {
    const int128 f0 = is.nu[idx[0]];
    for (idx[1] = 0; idx[1] < d; ++idx[1]) {
      const int128 f1 = checked_mul128(f0, is.nu[idx[1]]);
      for (idx[2] = 0; idx[2] < d; ++idx[2]) {
        const int128 f2 = checked_mul128(f1, is.nu[idx[2]]);
        for (idx[3] = 0; idx[3] < d; ++idx[3]) {
          std::array<int, 4> pat{};
          int next = 0;
          for (int a = 0; a < 4; ++a) {
            int lbl = next;
            for (int b = 0; b < a; ++b)
              if (idx[b] == idx[a]) {
                lbl = pat[b];
                break;
              }
            if (lbl == next) ++next;
            pat[a] = lbl;
          }
          total = checked_add128(
              total, checked_mul128(checked_mul128(f2, is.nu[idx[3]]),
                                    iw[pattern_slot.at(pat)]));
        }
      }
    }
  }
  return Rational(total, den) / Rational(ipow128(is.scale, 4), 1);
}

Rational exact_m4_unreduced(std::span<const Rational> spectrum) {
  const std::vector<Rational> mu = centered(spectrum);
  const int d = static_cast<int>(mu.size());
  Rational total(0);
  std::array<int, 4> rows{}, cols{};
  for (rows[0] = 0; rows[0] < d; ++rows[0])
    for (rows[1] = 0; rows[1] < d; ++rows[1])
      for (rows[2] = 0; rows[2] < d; ++rows[2])
        for (rows[3] = 0; rows[3] < d; ++rows[3]) {
          const Rational f = mu[rows[0]] * mu[rows[1]] * mu[rows[2]] * mu[rows[3]];
          for (int j1 = 0; j1 < d; ++j1)
            for (int j2 = 0; j2 < d; ++j2) {
              cols = {j1, j1, j2, j2};
              total += f * entry_moment(rows, cols, rows, cols, d);
            }
        }
  return total;
}

}  // namespace qeorbit
