#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "intcheb/extremal/bounds.hpp"

namespace intcheb {

struct ExhaustiveOptions {
  int n_max = 6;
  long height = 4;
  std::uint64_t budget = 50'000'000;  // candidate polynomials
  unsigned threads = 1;
  double eps = 1e-40;  // sup-norm enclosure width for survivors
};

/// Best polynomial among integer polynomials of degree <= n with
/// coefficients bounded by the height.
struct ExhaustiveRow {
  int n = 0;
  IntPoly best;
  SupNormResult norm;
  Enclosure root_norm;  // ||best||^{1/n}
  std::uint64_t candidates = 0;  // polynomials of exact degree n enumerated
  std::uint64_t survivors = 0;   // of those, evaluated exactly
};

struct ExhaustiveResult {
  std::vector<ExhaustiveRow> rows;  // n = 1..n_max (only completed degrees)
  bool truncated = false;
  int completed_degree = 0;
  BoundReport report;  // best root norm over the table
};

namespace detail {

/// Canonical sign (positive leading coefficient), padded to length len.
inline std::vector<Integer> canonical_padded(const IntPoly& p, std::size_t len) {
  std::vector<Integer> v(len, Integer(0));
  bool flip = !p.is_zero() && p.leading() < 0;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) v[k] = flip ? Integer(-p.coeffs()[k]) : p.coeffs()[k];
  return v;
}

inline bool lex_less(const IntPoly& a, const IntPoly& b, std::size_t len) {
  auto va = canonical_padded(a, len), vb = canonical_padded(b, len);
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

struct Candidate {
  IntPoly poly;
  SupNormResult norm;
};

/// Strictly better norm, or an overlapping (tied) norm with the smaller
/// canonical coefficient vector.
inline bool better(const Candidate& x, const Candidate& y, std::size_t len) {
  if (x.norm.upper < y.norm.lower) return true;
  if (y.norm.upper < x.norm.lower) return false;
  return lex_less(x.poly, y.poly, len);
}

/// Caller guarantees |z| < 2^126.
inline __int128 to_int128(const Integer& z) {
  Integer m = abs(z);
  unsigned __int128 hi = mpz_get_ui(Integer(m >> 64).get_mpz_t());
  unsigned __int128 lo = mpz_get_ui(Integer(m & Integer("18446744073709551615")).get_mpz_t());
  __int128 v = static_cast<__int128>((hi << 64) | lo);
  return z < 0 ? -v : v;
}

/// Exact integer evaluation at p/q scaled by q^d: sum a_k p^k q^{d-k}.
struct Sample {
  std::vector<__int128> weight;  // p^k q^{d-k}
  long double scale;             // q^d
};

inline std::vector<Sample> make_samples(const Interval& I, int d, long height) {
  const int K = std::max(16, 4 * d);
  std::vector<Rational> xs{I.a(), I.b()};
  for (int j = 1; j < K; ++j) xs.push_back((I.a() * (K - j) + I.b() * j) / K);
  std::vector<Sample> out;
  for (const auto& x : xs) {
    Integer p = x.get_num(), q = x.get_den();
    double bits = d * std::log2(std::max(abs(p), q).get_d() + 1) + std::log2(static_cast<double>(height) * (d + 1)) + 2;
    if (bits > 120) continue;  // exact int128 evaluation would overflow
    Sample s;
    for (int k = 0; k <= d; ++k)
      s.weight.push_back(to_int128(pow(p, static_cast<unsigned long>(k)) * pow(q, static_cast<unsigned long>(d - k))));
    s.scale = std::pow(static_cast<long double>(q.get_d()), static_cast<long double>(d));
    out.push_back(std::move(s));
  }
  return out;
}

/// Enumerates polynomials of exact degree d whose leading coefficient lies in
/// [lead_lo, lead_hi]; prunes against `bound` (an upper bound on the best
/// norm so far) and returns the best survivor.
inline std::optional<Candidate> search_block(const Interval& I, int d, long height, long lead_lo, long lead_hi,
                                             const std::vector<Sample>& samples, std::optional<Candidate> best,
                                             std::size_t len, double eps, std::uint64_t& survivors) {
  const std::size_t S = samples.size();
  std::vector<long> c(static_cast<std::size_t>(d + 1), -height);
  std::vector<__int128> val(S, 0);
  long double bound = best ? best->norm.upper.get_d() * (1 + 1e-9) + 1e-300 : INFINITY;
  std::vector<std::size_t> order(S);
  for (std::size_t s = 0; s < S; ++s) order[s] = s;
  for (long lead = lead_lo; lead <= lead_hi; ++lead) {
    c.assign(static_cast<std::size_t>(d + 1), -height);
    c[static_cast<std::size_t>(d)] = lead;
    for (std::size_t s = 0; s < S; ++s) {
      __int128 v = 0;
      for (int k = 0; k <= d; ++k) v += static_cast<__int128>(c[static_cast<std::size_t>(k)]) * samples[s].weight[static_cast<std::size_t>(k)];
      val[s] = v;
    }
    while (true) {
      // Prune: |P(x_s)| > bound at a sample point rules the candidate out.
      bool pruned = false;
      for (std::size_t t = 0; t < S; ++t) {
        std::size_t s = order[t];
        __int128 v = val[s] < 0 ? -val[s] : val[s];
        if (static_cast<long double>(v) > bound * samples[s].scale) {
          pruned = true;
          if (t > 0) std::swap(order[t], order[t - 1]);  // move useful samples forward
          break;
        }
      }
      if (!pruned) {
        std::vector<Integer> coeffs;
        for (long v : c) coeffs.emplace_back(v);
        Candidate cand{IntPoly(std::move(coeffs)), {}};
        cand.norm = sup_norm_detail(cand.poly, I, eps);
        ++survivors;
        if (!best || better(cand, *best, len)) {
          best = std::move(cand);
          bound = best->norm.upper.get_d() * (1 + 1e-9) + 1e-300;
        }
      }
      // Odometer over c[0..d-1], updating sample values incrementally.
      int k = 0;
      while (k < d && c[static_cast<std::size_t>(k)] == height) {
        for (std::size_t s = 0; s < S; ++s) val[s] -= static_cast<__int128>(2 * height) * samples[s].weight[static_cast<std::size_t>(k)];
        c[static_cast<std::size_t>(k)] = -height;
        ++k;
      }
      if (k == d) break;
      ++c[static_cast<std::size_t>(k)];
      for (std::size_t s = 0; s < S; ++s) val[s] += samples[s].weight[static_cast<std::size_t>(k)];
    }
  }
  return best;
}

}  // namespace detail

/// For each n <= n_max, the nonzero integer polynomial of degree <= n with
/// coefficients in [-height, height] minimizing the sup-norm on I. Ties are
/// broken by the lexicographically smallest coefficient vector (low-to-high,
/// leading coefficient made positive). Stops with a truncated table when the
/// candidate budget would be exceeded.
inline ExhaustiveResult exhaustive_integer_chebyshev(const Interval& I, const ExhaustiveOptions& opt) {
  if (opt.n_max < 1 || opt.height < 1) throw PreconditionError("invalid_parameter", "n_max and height must be >= 1");
  if (opt.height > 1'000'000) throw PreconditionError("invalid_parameter", "height too large");
  ExhaustiveResult res;
  const std::size_t len = static_cast<std::size_t>(opt.n_max + 1);
  std::uint64_t used = 0;

  // Degree 0: the constant 1.
  std::optional<detail::Candidate> best;
  {
    detail::Candidate one{IntPoly::constant(1), sup_norm_detail(IntPoly::constant(1), I)};
    best = one;
    used += static_cast<std::uint64_t>(opt.height);
  }
  const unsigned threads = std::max(1u, opt.threads);
  for (int d = 1; d <= opt.n_max; ++d) {
    // Exact-degree count: height * (2 height + 1)^d.
    long double count = static_cast<long double>(opt.height) * std::pow(2.0L * opt.height + 1, d);
    if (static_cast<long double>(used) + count > static_cast<long double>(opt.budget)) {
      res.truncated = true;
      break;
    }
    used += static_cast<std::uint64_t>(count);
    auto samples = detail::make_samples(I, d, opt.height);
    // Leading coefficients are split into contiguous blocks, one per worker;
    // each block starts from the same incumbent and the merge is ordered,
    // so the result does not depend on scheduling.
    const unsigned W = static_cast<unsigned>(std::min<long>(threads, opt.height));
    std::vector<std::optional<detail::Candidate>> local(W);
    std::vector<std::uint64_t> surv(W, 0);
    auto work = [&](unsigned w) {
      long lo = 1 + opt.height * w / W, hi = opt.height * (w + 1) / W;
      local[w] = detail::search_block(I, d, opt.height, lo, hi, samples, best, len, opt.eps, surv[w]);
    };
    if (W == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < W; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    ExhaustiveRow row;
    row.n = d;
    row.candidates = static_cast<std::uint64_t>(count);
    for (unsigned w = 0; w < W; ++w) {
      row.survivors += surv[w];
      if (local[w] && detail::better(*local[w], *best, len)) best = local[w];
    }
    row.best = best->poly;
    row.norm = best->norm;
    Enclosure e = best->norm.enclosure();
    row.root_norm = Enclosure(e.root(static_cast<unsigned long>(d)));
    res.rows.push_back(std::move(row));
    res.completed_degree = d;
  }

  res.report.kind = "upper_tZ";
  if (!res.rows.empty()) {
    const ExhaustiveRow* top = &res.rows.front();
    for (const auto& r : res.rows)
      if (r.root_norm.upper() < top->root_norm.upper()) top = &r;
    res.report.value = top->root_norm;
    res.report.certificate = {{"polynomial", to_string(top->best)},
                              {"degree_bound", top->n},
                              {"norm", {{"lower", to_string(top->norm.lower)}, {"upper", to_string(top->norm.upper)}}}};
  } else {
    res.report.value = Enclosure::exact(Rational(1));
    res.report.certificate = {{"polynomial", "1"}};
  }
  res.report.params = {{"interval", I.str()}, {"nmax", opt.n_max}, {"height", opt.height},
                       {"budget", opt.budget}, {"truncated", res.truncated}};
  return res;
}

}  // namespace intcheb
