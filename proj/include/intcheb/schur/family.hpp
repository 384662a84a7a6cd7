#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "intcheb/core/chebyshev.hpp"
#include "intcheb/core/cyclotomic.hpp"
#include "intcheb/core/modular.hpp"
#include "intcheb/core/polynomial.hpp"

namespace intcheb {

enum class FamilyKind { chebyshev04, chebyshev04_trace, prime_cyclotomic, user_list };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::chebyshev04: return "chebyshev04";
    case FamilyKind::chebyshev04_trace: return "chebyshev04_trace";
    case FamilyKind::prime_cyclotomic: return "prime_cyclotomic";
    case FamilyKind::user_list: return "user_list";
  }
  return "?";
}

inline FamilyKind parse_family_kind(const std::string& s) {
  for (auto k : {FamilyKind::chebyshev04, FamilyKind::chebyshev04_trace, FamilyKind::prime_cyclotomic,
                 FamilyKind::user_list})
    if (to_string(k) == s) return k;
  throw PreconditionError("unknown_family", "unknown family kind '" + s + "'");
}

/// params: degrees n (chebyshev04), odd primes p (chebyshev04_trace, member
/// t_p/(x-2)), prime counts k (prime_cyclotomic). user_list ignores params.
struct FamilySpec {
  FamilyKind kind = FamilyKind::chebyshev04;
  std::vector<long> params;
  std::vector<IntPoly> user;
};

struct FamilyMember {
  long param = 0;
  IntPoly poly;
  int degree() const { return poly.degree(); }
};

/// "25,50,100,200" or "1..12" or a mix ("3,5..7").
inline std::vector<long> parse_param_list(const std::string& text) {
  std::vector<long> out;
  std::size_t pos = 0;
  auto to_long = [&](const std::string& tok) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw PreconditionError("invalid_parameter", "bad parameter '" + tok + "'");
    return v;
  };
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto dots = tok.find("..");
    if (dots != std::string::npos) {
      long lo = to_long(tok.substr(0, dots)), hi = to_long(tok.substr(dots + 2));
      if (hi < lo || hi - lo > 100000) throw PreconditionError("invalid_parameter", "bad range '" + tok + "'");
      for (long v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(to_long(tok));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

namespace detail {

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

/// Members in parameter order; every member is checked squarefree.
inline std::vector<FamilyMember> generate_family(const FamilySpec& F) {
  std::vector<FamilyMember> out;
  if (F.kind == FamilyKind::user_list) {
    for (std::size_t i = 0; i < F.user.size(); ++i) out.push_back({static_cast<long>(i), F.user[i]});
  } else {
    if (F.params.empty()) throw PreconditionError("invalid_parameter", "family needs at least one parameter");
    for (long v : F.params) {
      if (v < 1 || v > 5000) throw PreconditionError("invalid_parameter", "family parameter out of range 1..5000");
      switch (F.kind) {
        case FamilyKind::chebyshev04:
          out.push_back({v, chebyshev_04(static_cast<unsigned>(v))});
          break;
        case FamilyKind::chebyshev04_trace: {
          // t_p(2) = 2 cos(p pi/2) vanishes only for odd p.
          if (v == 2 || !detail::is_prime(v))
            throw PreconditionError("not_odd_prime", "chebyshev04_trace needs an odd prime, got " + std::to_string(v));
          out.push_back({v, exact_quotient(chebyshev_04(static_cast<unsigned>(v)), IntPoly{Integer(-2), Integer(1)})});
          break;
        }
        case FamilyKind::prime_cyclotomic:
          out.push_back({v, prime_cyclotomic_product(static_cast<unsigned>(v))});
          break;
        case FamilyKind::user_list:
          break;
      }
    }
  }
  for (const auto& m : out) {
    if (m.poly.degree() < 1) throw PreconditionError("constant_polynomial", "family members must be nonconstant");
    if (!is_squarefree(m.poly))
      throw PreconditionError("not_squarefree", "family member " + to_string(m.poly) + " has a repeated root");
  }
  return out;
}

/// Applies f to each item on up to `threads` workers; results keep input order.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, unsigned threads, F f) -> std::vector<decltype(f(items[0]))> {
  using R = decltype(f(items[0]));
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  auto run = [&](std::size_t i) {
    try {
      slots[i].emplace(f(items[i]));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned W = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items.size())));
  if (W <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < W; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < items.size(); i += W) run(i);
      });
    for (auto& t : pool) t.join();
  }
  // First failure in input order, so errors are schedule-independent too.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace intcheb
