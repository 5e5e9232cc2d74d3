#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pspace/bj.hpp"
#include "pspace/specfun.hpp"
#include "pspace/threading.hpp"

namespace pspace {

namespace {

// One raising step of the first index: c^{ap,b} -> c^{ap+1,b}.
std::vector<mpz_class> raise_c(const std::vector<mpz_class>& cur, int ap, int b) {
  const int len = ap + b;  // current vector length
  std::vector<mpz_class> next(static_cast<size_t>(len) + 1);
  for (int j = 0; j <= len; ++j) {
    mpz_class t = 0;
    if (j >= 1 && j - 1 < len) t += cur[j - 1] * (4 * ap + 2 * b + 1 - 2 * j);
    if (j < len) t -= 2 * cur[j] * (j - ap);
    next[j] = t;
  }
  return next;
}

// c_j^{ab} as raw integers; the recursion increments the first index, the
// (a, b) symmetry supplies the starting row.
std::vector<mpz_class> coeff_c_raw(int a, int b) {
  if (a < 0 || b < 0) throw std::domain_error("coeff_c: negative index");
  if (a + b < 1) throw std::domain_error("coeff_c: a + b >= 1 required");
  if (a < b) std::swap(a, b);
  std::vector<mpz_class> cur;
  int ap;
  if (b == 0) {
    cur = {mpz_class(1)};  // c^{1,0}
    ap = 1;
  } else {
    cur = coeff_c_raw(b, 0);  // c^{0,b} = c^{b,0}
    ap = 0;
  }
  for (; ap < a; ++ap) cur = raise_c(cur, ap, b);
  return cur;
}

// One raising step in k: xi^{ab,kp} -> xi^{ab,kp+1}.
std::vector<mpz_class> raise_xi(const std::vector<mpz_class>& cur, int a, int b, int kp) {
  const int len = a + b + kp;
  std::vector<mpz_class> next(static_cast<size_t>(len) + 1);
  for (int j = 0; j <= len; ++j) {
    mpz_class t = 0;
    if (j >= 1 && j - 1 < len) t += cur[j - 1] * (2 * j - 1 - 3 * a - 3 * b - 3 * kp);
    if (j < len) t += cur[j] * (2 * j - a - b - kp);
    next[j] = t;
  }
  return next;
}

// xi_j^{abk} raw; seeded from c^{ab} (k = 0) or xi^{001} = {-1}.
std::vector<mpz_class> coeff_xi_raw(int a, int b, int k) {
  if (a < 0 || b < 0 || k < 0) throw std::domain_error("coeff_xi: negative index");
  if (a + b + k < 1) throw std::domain_error("coeff_xi: a + b + k >= 1 required");
  if (a < b) std::swap(a, b);  // xi symmetric in (a, b)
  std::vector<mpz_class> cur;
  int k0;
  if (a + b >= 1) {
    cur = coeff_c_raw(a, b);
    k0 = 0;
  } else {
    cur = {mpz_class(-1)};  // xi^{0,0,1}
    k0 = 1;
  }
  for (int kp = k0; kp < k; ++kp) cur = raise_xi(cur, a, b, kp);
  return cur;
}

// Frozen table of xi-sums S_{abk} = sum_j xi_j^{abk}, a + b <= max_ab,
// k <= max_k. Built by a single writer, then read-only.
class XiSumTable {
 public:
  XiSumTable(int max_ab, int max_k) : max_ab_(max_ab), max_k_(max_k) {
    sums_.assign((static_cast<size_t>(max_ab) + 1) * (max_ab + 1) * (max_k + 1), mpz_class(0));
    for (int a = 0; a <= max_ab; ++a) {
      for (int b = 0; b <= std::min(a, max_ab - a); ++b) {
        std::vector<mpz_class> cur;
        int k0;
        if (a + b >= 1) {
          cur = coeff_c_raw(a, b);
          k0 = 0;
        } else {
          if (max_k_ < 1) continue;
          cur = {mpz_class(-1)};  // xi^{0,0,1}
          k0 = 1;
        }
        store_sum(a, b, k0, cur);
        for (int kp = k0; kp < max_k_; ++kp) {
          cur = raise_xi(cur, a, b, kp);
          store_sum(a, b, kp + 1, cur);
        }
      }
    }
  }

  const mpz_class& sum(int a, int b, int k) const {
    if (a < b) std::swap(a, b);
    return sums_[index(a, b, k)];
  }

 private:
  size_t index(int a, int b, int k) const {
    return (static_cast<size_t>(a) * (max_ab_ + 1) + b) * (max_k_ + 1) + k;
  }
  void store_sum(int a, int b, int k, const std::vector<mpz_class>& v) {
    mpz_class s = 0;
    for (const auto& x : v) s += x;
    sums_[index(a, b, k)] = std::move(s);
  }
  int max_ab_;
  int max_k_;
  std::vector<mpz_class> sums_;
};

// Exact element with sums provided by a frozen table.
BJExactEntry element_from_sums(int m, int n, const XiSumTable& sums) {
  BJExactEntry e;
  e.m = m;
  e.n = n;
  if ((m - n) % 4 != 0) return e;  // selection rule
  const int q = (m - n) / 2;  // a + b for every term
  mpq_class r_s2 = 0;
  mpq_class r_ash = 0;
  const BigRational pow2 = BigRational::pow2(-q);
  for (int k = 0; k <= n; ++k) {
    mpz_class binom_mk;
    mpz_bin_uiui(binom_mk.get_mpz_t(), m, n - k);
    mpz_class kfact;
    mpz_fac_ui(kfact.get_mpz_t(), k);
    for (int l = 0; l <= m - n; l += 2) {
      const int a = (m - n - l) / 2;
      const int b = l / 2;
      if (a == 0 && b == 0 && k == 0) {
        r_ash += mpq_class(binom_mk) / kfact;  // d-coefficient reduces to 1 here
        continue;
      }
      mpz_class binom_l;
      mpz_bin_uiui(binom_l.get_mpz_t(), m - n, l);
      mpq_class term(binom_mk * binom_l * sums.sum(a, b, k), kfact);
      if ((b % 2) != 0) term = -term;  // (-1)^{l/2}
      r_s2 += term;
    }
  }
  r_s2.canonicalize();
  r_ash.canonicalize();
  e.r_sqrt2 = BigRational(r_s2) * pow2;
  e.r_arcsinh = BigRational(r_ash);
  return e;
}

}  // namespace

CoeffC coeff_c(int a, int b) {
  CoeffC out;
  out.a = a;
  out.b = b;
  auto raw = coeff_c_raw(a, b);
  out.values.reserve(raw.size());
  for (auto& z : raw) out.values.emplace_back(z);
  return out;
}

CoeffXi coeff_xi(int a, int b, int k) {
  CoeffXi out;
  out.a = a;
  out.b = b;
  out.k = k;
  auto raw = coeff_xi_raw(a, b, k);
  out.values.reserve(raw.size());
  for (auto& z : raw) out.values.emplace_back(z);
  return out;
}

Phi phi(int a, int b, int k) {
  if (a < 0 || b < 0 || k < 0) throw std::domain_error("phi: negative index");
  Phi out;
  if (a == 0 && b == 0 && k == 0) {
    out.arcsinh_case = true;
    return out;
  }
  auto raw = coeff_xi_raw(a, b, k);
  mpz_class s = 0;
  for (const auto& v : raw) s += v;
  if ((a + b) % 2 != 0) s = -s;
  out.coeff = BigRational(s);
  out.pow2 = -2 * a - 2 * b - k;
  return out;
}

double Phi::value() const {
  if (arcsinh_case) return arcsinh(1.0);
  if (coeff.is_zero()) return 0.0;
  const double lg = coeff.log_abs() + pow2 * M_LN2 + 0.5 * M_LN2;
  return coeff.sign() * std::exp(lg);
}

double BJExactEntry::value() const {
  if (is_zero()) return 0.0;
  const double lf_half = 0.5 * (log_factorial(n) - log_factorial(m));
  double v = 0.0;
  if (!r_sqrt2.is_zero())
    v += r_sqrt2.sign() * std::exp(lf_half + r_sqrt2.log_abs() + 0.5 * M_LN2);
  if (!r_arcsinh.is_zero())
    v += r_arcsinh.sign() * std::exp(lf_half + r_arcsinh.log_abs()) * arcsinh(1.0);
  return v;
}

BJExactEntry bj_element_exact(int m, int n) {
  if (m < 0 || n < 0) throw std::domain_error("bj_element_exact: negative index");
  if (m < n) std::swap(m, n);  // symmetric
  if ((m - n) % 4 != 0) {
    BJExactEntry e;
    e.m = m;
    e.n = n;
    return e;
  }
  XiSumTable sums((m - n) / 2, n);
  return element_from_sums(m, n, sums);
}

BJExactEntry bj_diagonal(int n) {
  if (n < 0) throw std::domain_error("bj_diagonal: n >= 0 required");
  BJExactEntry e;
  e.m = e.n = n;
  e.r_arcsinh = BigRational(1);
  mpq_class acc = 0;
  mpq_class inner = 0;  // sum_{m<=floor(k/2)} binom(2m,m) (-1/4)^m, updated as k grows
  for (int k = 0; k < n; ++k) {
    if (k % 2 == 0) {
      const int mm = k / 2;
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), 2 * mm, mm);
      mpz_class denom;
      mpz_ui_pow_ui(denom.get_mpz_t(), 4, mm);
      mpq_class t(c, denom);
      if (mm % 2 != 0) t = -t;
      inner += t;
    }
    mpq_class term = inner / (k + 1);
    if (k % 2 != 0) term = -term;
    acc += term;
  }
  acc = -acc;
  acc.canonicalize();
  e.r_sqrt2 = BigRational(acc);
  return e;
}

// ---- disk cache ----

BJExactCache::BJExactCache(std::string path) : path_(std::move(path)) {}

void BJExactCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  std::lock_guard<std::mutex> lock(mutex_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int m, n;
    std::string s2, ash;
    if (!(ss >> m >> n >> s2 >> ash)) throw std::runtime_error("bad cache line: " + line);
    entries_[{m, n}] = {BigRational::from_string(s2), BigRational::from_string(ash)};
  }
}

void BJExactCache::save() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::ofstream out(path_);
  if (!out) throw std::runtime_error("cannot write cache file: " + path_);
  for (const auto& [key, val] : entries_)
    out << key.first << " " << key.second << " " << val.first.str() << " " << val.second.str()
        << "\n";
}

bool BJExactCache::try_get(int m, int n, BJExactEntry* out) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find({m, n});
  if (it == entries_.end()) return false;
  out->m = m;
  out->n = n;
  out->r_sqrt2 = it->second.first;
  out->r_arcsinh = it->second.second;
  return true;
}

void BJExactCache::put(const BJExactEntry& e) {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_[{e.m, e.n}] = {e.r_sqrt2, e.r_arcsinh};
}

size_t BJExactCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

// ---- exact table ----

namespace {
size_t lower_index(int m, int n) {
  // packed lower triangle, m >= n
  return static_cast<size_t>(m) * (m + 1) / 2 + n;
}
}  // namespace

BJExactTable::BJExactTable(int dim, int threads, BJExactCache* cache) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("BJExactTable: dim must be >= 1");
  lower_.resize(lower_index(dim - 1, dim - 1) + 1);
  // Single-writer coefficient build, then entries in parallel (read-only sums).
  // Largest a+b is (m-n)/2 with m-n the largest multiple of 4 below dim.
  const int max_ab = 2 * ((dim - 1) / 4);
  const XiSumTable sums(max_ab, dim - 1);
  parallel_for(0, dim, threads, [&](int m) {
    for (int n = m % 4; n <= m; n += 4) {
      BJExactEntry e;
      if (cache != nullptr && cache->try_get(m, n, &e)) {
        lower_[lower_index(m, n)] = std::move(e);
        continue;
      }
      e = element_from_sums(m, n, sums);
      if (cache != nullptr) cache->put(e);
      lower_[lower_index(m, n)] = std::move(e);
    }
  });
  // fill the zero (selection-rule) slots with tagged indices
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n <= m; ++n)
      if ((m - n) % 4 != 0) {
        auto& e = lower_[lower_index(m, n)];
        e.m = m;
        e.n = n;
      }
}

const BJExactEntry& BJExactTable::at(int m, int n) const {
  if (m < n) std::swap(m, n);
  if (m >= dim_ || n < 0) throw std::out_of_range("BJExactTable::at");
  return lower_[lower_index(m, n)];
}

Eigen::MatrixXd BJExactTable::to_matrix() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int m = 0; m < dim_; ++m)
    for (int n = m % 4; n <= m; n += 4) {
      const double v = lower_[lower_index(m, n)].value();
      out(m, n) = v;
      out(n, m) = v;
    }
  return out;
}

}  // namespace pspace
