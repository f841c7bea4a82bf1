#include "rjcf/schur.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "rjcf/errors.hpp"

namespace rjcf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

struct ReflectorCoeffs {
  double tau = 0.0;
  double beta = 0.0;
};

// Turns x into the Householder vector v (v[0] = 1) such that
// (I - tau v v^T) x_original = beta e_1.
ReflectorCoeffs make_reflector(std::span<double> x) {
  double xnorm = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) xnorm = std::hypot(xnorm, x[i]);
  if (xnorm == 0.0) {
    const double beta = x[0];
    x[0] = 1.0;
    return {0.0, beta};
  }
  const double beta = -std::copysign(std::hypot(x[0], xnorm), x[0]);
  const double tau = (beta - x[0]) / beta;
  const double scal = 1.0 / (x[0] - beta);
  for (std::size_t i = 1; i < x.size(); ++i) x[i] *= scal;
  x[0] = 1.0;
  return {tau, beta};
}

// m[row0 + i, j] for j in [col_begin, col_end) <- (I - tau v v^T) m
void apply_left(Matrix& m, std::span<const double> v, double tau, std::size_t row0,
                std::size_t col_begin, std::size_t col_end) {
  for (std::size_t j = col_begin; j < col_end; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * m(row0 + i, j);
    s *= tau;
    for (std::size_t i = 0; i < v.size(); ++i) m(row0 + i, j) -= s * v[i];
  }
}

// m[i, col0 + k] for i in [row_begin, row_end) <- m (I - tau v v^T)
void apply_right(Matrix& m, std::span<const double> v, double tau, std::size_t col0,
                 std::size_t row_begin, std::size_t row_end) {
  for (std::size_t i = row_begin; i < row_end; ++i) {
    auto r = m.row(i);
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) s += r[col0 + k] * v[k];
    s *= tau;
    for (std::size_t k = 0; k < v.size(); ++k) r[col0 + k] -= s * v[k];
  }
}

struct Rotation {
  double cs = 1.0;
  double sn = 0.0;
};

// Standardizes the 2x2 block [[a, b], [c, d]] in place: on return either
// c == 0 (real eigenvalues a, d) or a == d with b*c < 0 (complex pair).
// The input equals R * out * R^T with R = [[cs, -sn], [sn, cs]].
Rotation standardize(double& a, double& b, double& c, double& d) {
  constexpr double kMultiple = 4.0;
  Rotation rot;
  if (c == 0.0) {
    return rot;
  }
  if (b == 0.0) {
    rot = {0.0, 1.0};
    std::swap(a, d);
    b = -c;
    c = 0.0;
    return rot;
  }
  if (a - d == 0.0 && std::signbit(b) != std::signbit(c)) {
    return rot;
  }
  double temp = a - d;
  double p = 0.5 * temp;
  const double bcmax = std::max(std::fabs(b), std::fabs(c));
  const double bcmis =
      std::min(std::fabs(b), std::fabs(c)) * std::copysign(1.0, b) * std::copysign(1.0, c);
  double scale = std::max(std::fabs(p), bcmax);
  double z = (p / scale) * p + (bcmax / scale) * bcmis;
  if (z >= kMultiple * kEps) {
    // Clearly real eigenvalues.
    z = p + std::copysign(std::sqrt(scale) * std::sqrt(z), p);
    a = d + z;
    d = d - (bcmax / z) * bcmis;
    const double tau = std::hypot(c, z);
    rot = {z / tau, c / tau};
    b = b - c;
    c = 0.0;
    return rot;
  }
  // Complex or nearly equal real eigenvalues: equalize the diagonal first.
  const double sigma = b + c;
  const double tau = std::hypot(sigma, temp);
  double cs = std::sqrt(0.5 * (1.0 + std::fabs(sigma) / tau));
  double sn = -(p / (tau * cs)) * std::copysign(1.0, sigma);
  const double aa = a * cs + b * sn;
  const double bb = -a * sn + b * cs;
  const double cc = c * cs + d * sn;
  const double dd = -c * sn + d * cs;
  a = aa * cs + cc * sn;
  b = bb * cs + dd * sn;
  c = -aa * sn + cc * cs;
  d = -bb * sn + dd * cs;
  temp = 0.5 * (a + d);
  a = temp;
  d = temp;
  if (c != 0.0) {
    if (b != 0.0) {
      if (std::signbit(b) == std::signbit(c)) {
        // Real after all: rotate to upper triangular.
        const double sab = std::sqrt(std::fabs(b));
        const double sac = std::sqrt(std::fabs(c));
        p = std::copysign(sab * sac, c);
        const double t = 1.0 / std::sqrt(std::fabs(b + c));
        a = temp + p;
        d = temp - p;
        b = b - c;
        c = 0.0;
        const double cs1 = sab * t;
        const double sn1 = sac * t;
        const double ncs = cs * cs1 - sn * sn1;
        sn = cs * sn1 + sn * cs1;
        cs = ncs;
      }
    } else {
      b = -c;
      c = 0.0;
      const double t = cs;
      cs = -sn;
      sn = t;
    }
  }
  return {cs, sn};
}

void validate_square(const Matrix& a, const char* who) {
  if (a.empty()) throw InputError(std::string(who) + ": empty matrix");
  if (!a.is_square()) {
    throw InputError(std::string(who) + ": matrix not square (" + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ")");
  }
  if (!a.all_finite()) throw InputError(std::string(who) + ": non-finite entry");
}

class FrancisEngine {
 public:
  FrancisEngine(Matrix& t, Matrix& q, const SchurOptions& opts)
      : t_(t), q_(q), n_(t.rows()), opts_(opts), norm_(frobenius_norm(t)) {}

  void run() {
    if (n_ < 2) return;
    const std::size_t cap = opts_.max_sweeps * n_;
    std::size_t iter = 0;
    // iu is one past the last active row, so the loop never goes negative.
    std::size_t end = n_;
    while (end > 0) {
      const std::size_t iu = end - 1;
      const std::size_t il = find_small_subdiagonal(iu);
      if (il == iu) {
        end -= 1;
        iter = 0;
        continue;
      }
      if (il + 1 == iu) {
        standardize_block(il);
        end -= 2;
        iter = 0;
        continue;
      }
      if (opts_.aggressive_deflation && iu - il + 1 >= opts_.aed_min_size &&
          early_deflation(il, iu)) {
        iter = 0;
        continue;
      }
      if (iter >= cap) {
        throw ConvergenceError("real_schur: no deflation after " + std::to_string(iter) +
                                   " iterations on active window [" + std::to_string(il) + ", " +
                                   std::to_string(iu) + "]",
                               il, iu, iter);
      }
      ++iter;
      double s = 0.0;
      double p = 0.0;
      shifts(il, iu, iter, s, p);
      sweep(il, iu, s, p);
    }
  }

 private:
  std::size_t find_small_subdiagonal(std::size_t iu) {
    for (std::size_t k = iu; k > 0; --k) {
      double s = std::fabs(t_(k - 1, k - 1)) + std::fabs(t_(k, k));
      if (s == 0.0) s = norm_;
      const double sub = std::fabs(t_(k, k - 1));
      if (sub <= kEps * s || sub < kSafeMin) {
        t_(k, k - 1) = 0.0;
        return k;
      }
    }
    return 0;
  }

  // Shift pair as (sum, product); exceptional shifts after 10 and 20 stalled
  // iterations, alternating between the top and bottom of the window.
  void shifts(std::size_t il, std::size_t iu, std::size_t iter, double& sum, double& prod) const {
    double h11, h12, h21, h22;
    if (iter % 20 == 10) {
      const double s = std::fabs(t_(il + 1, il)) + std::fabs(t_(il + 2, il + 1));
      h11 = 0.75 * s + t_(il, il);
      h12 = -0.4375 * s;
      h21 = s;
      h22 = h11;
    } else if (iter % 20 == 0) {
      const double s = std::fabs(t_(iu, iu - 1)) + std::fabs(t_(iu - 1, iu - 2));
      h11 = 0.75 * s + t_(iu, iu);
      h12 = -0.4375 * s;
      h21 = s;
      h22 = h11;
    } else {
      h11 = t_(iu - 1, iu - 1);
      h12 = t_(iu - 1, iu);
      h21 = t_(iu, iu - 1);
      h22 = t_(iu, iu);
    }
    const double half_diff = 0.5 * (h11 - h22);
    const double disc = half_diff * half_diff + h12 * h21;
    if (disc >= 0.0) {
      // Real shifts: use the one nearer h22 twice.
      const double root = std::sqrt(disc);
      const double mid = 0.5 * (h11 + h22);
      const double r1 = mid + root;
      const double r2 = mid - root;
      const double r = std::fabs(r1 - h22) <= std::fabs(r2 - h22) ? r1 : r2;
      sum = 2.0 * r;
      prod = r * r;
    } else {
      sum = h11 + h22;
      prod = h11 * h22 - h12 * h21;
    }
  }

  // One implicit double-shift bulge chase over rows/cols [il, iu].
  void sweep(std::size_t il, std::size_t iu, double s, double p) {
    std::size_t m = iu - 2;
    std::array<double, 3> x{};
    for (;;) {
      const double hmm = t_(m, m);
      const double h10 = t_(m + 1, m);
      const double h01 = t_(m, m + 1);
      const double h11 = t_(m + 1, m + 1);
      x[0] = hmm * hmm + h01 * h10 - s * hmm + p;
      x[1] = h10 * (hmm + h11 - s);
      x[2] = h10 * t_(m + 2, m + 1);
      const double scale = std::fabs(x[0]) + std::fabs(x[1]) + std::fabs(x[2]);
      if (scale != 0.0) {
        x[0] /= scale;
        x[1] /= scale;
        x[2] /= scale;
      }
      if (m == il) break;
      const double lhs = std::fabs(t_(m, m - 1)) * (std::fabs(x[1]) + std::fabs(x[2]));
      const double rhs = kEps * std::fabs(x[0]) *
                         (std::fabs(t_(m - 1, m - 1)) + std::fabs(hmm) + std::fabs(h11));
      if (lhs <= rhs) break;
      --m;
    }

    for (std::size_t k = m; k + 2 <= iu; ++k) {
      std::array<double, 3> v{};
      if (k == m) {
        v = x;
      } else {
        v = {t_(k, k - 1), t_(k + 1, k - 1), t_(k + 2, k - 1)};
      }
      const auto [tau, beta] = make_reflector(v);
      if (k > m) {
        t_(k, k - 1) = beta;
        t_(k + 1, k - 1) = 0.0;
        t_(k + 2, k - 1) = 0.0;
      } else if (m > il) {
        t_(k, k - 1) *= (1.0 - tau);
      }
      if (tau == 0.0) continue;
      apply_left(t_, v, tau, k, k, n_);
      apply_right(t_, v, tau, k, 0, std::min(k + 4, iu + 1));
      apply_right(q_, v, tau, k, 0, n_);
    }

    const std::size_t k = iu - 1;
    std::array<double, 2> v{t_(k, k - 1), t_(k + 1, k - 1)};
    const auto [tau, beta] = make_reflector(v);
    t_(k, k - 1) = beta;
    t_(k + 1, k - 1) = 0.0;
    if (tau == 0.0) return;
    apply_left(t_, v, tau, k, k, n_);
    apply_right(t_, v, tau, k, 0, iu + 1);
    apply_right(q_, v, tau, k, 0, n_);
  }

  // Rotates the converged 2x2 block at (i, i) into standard form.
  void standardize_block(std::size_t i) {
    double a = t_(i, i), b = t_(i, i + 1), c = t_(i + 1, i), d = t_(i + 1, i + 1);
    const Rotation r = standardize(a, b, c, d);
    t_(i, i) = a;
    t_(i, i + 1) = b;
    t_(i + 1, i) = c;
    t_(i + 1, i + 1) = d;
    if (r.cs == 1.0 && r.sn == 0.0) return;
    for (std::size_t j = i + 2; j < n_; ++j) {
      const double x = t_(i, j), y = t_(i + 1, j);
      t_(i, j) = r.cs * x + r.sn * y;
      t_(i + 1, j) = r.cs * y - r.sn * x;
    }
    for (std::size_t row = 0; row < i; ++row) {
      const double x = t_(row, i), y = t_(row, i + 1);
      t_(row, i) = r.cs * x + r.sn * y;
      t_(row, i + 1) = r.cs * y - r.sn * x;
    }
    for (std::size_t row = 0; row < n_; ++row) {
      const double x = q_(row, i), y = q_(row, i + 1);
      q_(row, i) = r.cs * x + r.sn * y;
      q_(row, i + 1) = r.cs * y - r.sn * x;
    }
  }

  // Deflation window at the bottom of [il, iu]: Schur-reduce the window,
  // drop negligible spike entries from the bottom up, restore Hessenberg
  // form on the rest. Returns true if at least one eigenvalue deflated.
  bool early_deflation(std::size_t il, std::size_t iu) {
    const std::size_t active = iu - il + 1;
    const std::size_t want = opts_.aed_window != 0 ? opts_.aed_window : 2 + active / 12;
    const std::size_t w = std::clamp<std::size_t>(want, 2, active - 1);
    const std::size_t kw = iu + 1 - w;
    const double spike = t_(kw, kw - 1);

    SchurOptions inner = opts_;
    inner.aggressive_deflation = false;
    RealSchurForm win;
    try {
      win = real_schur(t_.block(kw, kw, w, w), inner);
    } catch (const ConvergenceError&) {
      return false;
    }

    std::size_t deflated = 0;
    std::size_t i = w;  // one past the candidate block
    while (i > 0) {
      const bool pair = i >= 2 && win.t(i - 1, i - 2) != 0.0;
      if (!pair) {
        double scale = std::fabs(win.t(i - 1, i - 1));
        if (scale == 0.0) scale = std::fabs(spike);
        if (std::fabs(spike * win.q(0, i - 1)) > std::max(kSafeMin, kEps * scale)) break;
        deflated += 1;
        i -= 1;
      } else {
        const double scale = std::fabs(win.t(i - 1, i - 1)) +
                           std::sqrt(std::fabs(win.t(i - 1, i - 2))) *
                               std::sqrt(std::fabs(win.t(i - 2, i - 1)));
        const double s = std::max(std::fabs(spike * win.q(0, i - 1)),
                                  std::fabs(spike * win.q(0, i - 2)));
        if (s > std::max(kSafeMin, kEps * scale)) break;
        deflated += 2;
        i -= 2;
      }
    }
    if (deflated == 0) return false;
    const std::size_t kept = w - deflated;

    t_.set_block(kw, kw, win.t);
    if (iu + 1 < n_) {
      t_.set_block(kw, iu + 1, matmul(win.q.transpose(), t_.block(kw, iu + 1, w, n_ - iu - 1)));
    }
    t_.set_block(0, kw, matmul(t_.block(0, kw, kw, w), win.q));
    q_.set_block(0, kw, matmul(q_.block(0, kw, n_, w), win.q));
    for (std::size_t r = 0; r < w; ++r) t_(kw + r, kw - 1) = r < kept ? spike * win.q(0, r) : 0.0;

    // Back to Hessenberg on the undeflated rows kw .. kw+kept-1.
    const std::size_t last = kw + kept - 1;
    std::vector<double> v;
    for (std::size_t c = kw - 1; c + 2 <= last; ++c) {
      v.assign(last - c, 0.0);
      for (std::size_t r = 0; r < v.size(); ++r) v[r] = t_(c + 1 + r, c);
      const auto [tau, beta] = make_reflector(v);
      t_(c + 1, c) = beta;
      for (std::size_t r = 2; r <= v.size(); ++r) t_(c + r, c) = 0.0;
      if (tau == 0.0) continue;
      apply_left(t_, v, tau, c + 1, c + 1, n_);
      apply_right(t_, v, tau, c + 1, 0, iu + 1);
      apply_right(q_, v, tau, c + 1, 0, n_);
    }
    return true;
  }

  Matrix& t_;
  Matrix& q_;
  std::size_t n_;
  const SchurOptions& opts_;
  double norm_;
};

}  // namespace

HessenbergForm hessenberg(const Matrix& a) {
  validate_square(a, "hessenberg");
  const std::size_t n = a.rows();
  HessenbergForm out{Matrix::identity(n), a};
  Matrix& h = out.h;
  std::vector<double> v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    bool reduced = true;
    for (std::size_t i = k + 2; i < n; ++i)
      if (h(i, k) != 0.0) {
        reduced = false;
        break;
      }
    if (reduced) continue;
    v.assign(n - k - 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = h(k + 1 + i, k);
    const auto [tau, beta] = make_reflector(v);
    h(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    apply_left(h, v, tau, k + 1, k + 1, n);
    apply_right(h, v, tau, k + 1, 0, n);
    apply_right(out.q, v, tau, k + 1, 0, n);
  }
  return out;
}

std::size_t RealSchurForm::real_block_count() const noexcept {
  return static_cast<std::size_t>(std::count(block_sizes.begin(), block_sizes.end(), 1u));
}

std::size_t RealSchurForm::pair_block_count() const noexcept {
  return static_cast<std::size_t>(std::count(block_sizes.begin(), block_sizes.end(), 2u));
}

RealSchurForm real_schur(const Matrix& a, const SchurOptions& opts) {
  validate_square(a, "real_schur");
  if (opts.max_sweeps == 0) throw InputError("real_schur: max_sweeps must be positive");
  auto [q, t] = hessenberg(a);
  FrancisEngine(t, q, opts).run();

  RealSchurForm out;
  const std::size_t n = t.rows();
  out.block_sizes.reserve(n);
  out.eigenvalues.reserve(n);
  for (std::size_t i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double im = std::sqrt(std::fabs(t(i, i + 1))) * std::sqrt(std::fabs(t(i + 1, i)));
      out.block_sizes.push_back(2);
      out.eigenvalues.emplace_back(t(i, i), im);
      out.eigenvalues.emplace_back(t(i + 1, i + 1), -im);
      i += 2;
    } else {
      out.block_sizes.push_back(1);
      out.eigenvalues.emplace_back(t(i, i), 0.0);
      i += 1;
    }
  }
  out.q = std::move(q);
  out.t = std::move(t);
  return out;
}

void canonical_sort(std::vector<ComplexScalar>& values) {
  std::sort(values.begin(), values.end(), [](const ComplexScalar& x, const ComplexScalar& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
}

std::vector<ComplexScalar> eigenvalues(const Matrix& a, const SchurOptions& opts) {
  auto values = real_schur(a, opts).eigenvalues;
  canonical_sort(values);
  return values;
}

double orthogonality_residual(const Matrix& q) {
  Matrix g = matmul(q.transpose(), q);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return frobenius_norm(g);
}

double reconstruction_residual(const Matrix& a, const Matrix& q, const Matrix& t) {
  return frobenius_norm(matmul(matmul(q.transpose(), a), q) - t);
}

}  // namespace rjcf
