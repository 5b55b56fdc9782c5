#include "hofa/polymap.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "hofa/error.hpp"

namespace hofa {

BigInt binomial(std::int64_t x, unsigned n) {
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < n; ++i) {
    num *= BigInt(x) - i;
    den *= i + 1;
  }
  return num / den;
}

BinomialPolyMap::BinomialPolyMap(unsigned dim, FiniteAbelianGroup target, std::vector<BinomialTerm> terms)
    : dim_(dim), target_(std::move(target)), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.exponents.size() != dim_) throw InvalidArgument("binomial term exponent count differs from the dimension");
    if (t.coefficient >= target_.order()) throw InvalidArgument("binomial term coefficient outside the target group");
  }
}

unsigned BinomialPolyMap::degree() const {
  unsigned deg = 0;
  for (const auto& t : terms_) {
    if (t.coefficient == 0) continue;
    unsigned d = 0;
    for (auto e : t.exponents) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

std::size_t BinomialPolyMap::operator()(const IntVec& x) const {
  if (x.size() != dim_) throw InvalidArgument("evaluation point dimension differs from the map");
  std::size_t acc = 0;
  for (const auto& t : terms_) {
    BigInt scalar = 1;
    for (unsigned i = 0; i < dim_; ++i) scalar *= binomial(x[i], t.exponents[i]);
    // the scalar only matters modulo the exponent of the target
    BigInt reduced = scalar % target_.exponent_lcm();
    if (reduced < 0) reduced += target_.exponent_lcm();
    acc = target_.add(acc, target_.multiply(t.coefficient, reduced.convert_to<std::int64_t>()));
  }
  return acc;
}

std::size_t eval_binomial_poly(const BinomialPolyMap& phi, const IntVec& x) { return phi(x); }

TargetGroup<std::size_t> abelian_target(const FiniteAbelianGroup& group) {
  return TargetGroup<std::size_t>{
      [group](const std::size_t& a, const std::size_t& b) { return group.add(a, b); },
      [group](const std::size_t& a) { return group.negate(a); },
      [](const std::size_t& a) { return a == 0; }};
}

std::vector<IntVec> integer_box(unsigned dim, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) return {};
  std::vector<IntVec> out;
  IntVec cur(dim, lo);
  while (true) {
    out.push_back(cur);
    std::size_t i = dim;
    while (i > 0) {
      --i;
      if (cur[i] < hi) {
        ++cur[i];
        break;
      }
      cur[i] = lo;
      if (i == 0) return out;
    }
    if (dim == 0) return out;
  }
}

TestBox TestBox::uniform(unsigned dim, std::int64_t lo, std::int64_t hi) {
  return with_shifts(dim, lo, hi, lo, hi);
}

TestBox TestBox::with_shifts(unsigned dim, std::int64_t lo, std::int64_t hi, std::int64_t shift_lo,
                             std::int64_t shift_hi) {
  return TestBox{integer_box(dim, lo, hi), integer_box(dim, shift_lo, shift_hi)};
}

namespace {

// Exponent vectors with total degree <= k, in lexicographic order.
std::vector<std::vector<unsigned>> exponent_vectors(unsigned dim, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(dim, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i == dim) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(0, k);
  return out;
}

}  // namespace

SpanningReport binomial_spanning_check(const FiniteAbelianGroup& target, unsigned dim, unsigned k, std::int64_t lo,
                                       std::int64_t hi, std::size_t cap) {
  const auto points = integer_box(dim, lo, hi);
  const std::size_t order = target.order();
  std::size_t total = 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (total > cap / order) throw CapExceeded("spanning check exceeds the enumeration cap");
    total *= order;
  }
  const auto side = static_cast<std::size_t>(hi - lo + 1);
  auto index_of = [&](const IntVec& x) -> std::optional<std::size_t> {
    std::size_t idx = 0;
    for (unsigned i = 0; i < dim; ++i) {
      if (x[i] < lo || x[i] > hi) return std::nullopt;
      idx = idx * side + static_cast<std::size_t>(x[i] - lo);
    }
    return idx;
  };

  // Each local test is a signed list of box indices whose alternating sum must vanish.
  std::vector<std::vector<std::pair<std::size_t, bool>>> tests;
  std::vector<unsigned> dirs(k + 1, 0);
  while (true) {
    if (std::is_sorted(dirs.begin(), dirs.end())) {
      for (const auto& g : points) {
        std::vector<std::pair<std::size_t, bool>> test;
        bool inside = true;
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (k + 1)) && inside; ++mask) {
          IntVec x = g;
          for (unsigned j = 0; j <= k; ++j)
            if (mask >> j & 1) ++x[dirs[j]];
          const auto idx = index_of(x);
          if (!idx) inside = false;
          else test.emplace_back(*idx, (__builtin_popcount(mask) & 1) != 0);
        }
        if (inside) tests.push_back(std::move(test));
      }
    }
    std::size_t i = 0;
    while (i <= k && ++dirs[i] == dim) dirs[i++] = 0;
    if (i > k) break;
  }

  SpanningReport report;
  std::set<std::vector<std::size_t>> survivors;
  std::vector<std::size_t> values(points.size());
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (std::size_t p = 0; p < points.size(); ++p) {
      values[p] = rest % order;
      rest /= order;
    }
    ++report.maps_tested;
    const bool ok = std::all_of(tests.begin(), tests.end(), [&](const auto& test) {
      std::size_t acc = 0;
      for (const auto& [idx, odd] : test) acc = odd ? target.subtract(acc, values[idx]) : target.add(acc, values[idx]);
      return acc == 0;
    });
    if (ok) survivors.insert(values);
  }

  const auto exps = exponent_vectors(dim, k);
  std::size_t combos = 1;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (combos > cap / order) throw CapExceeded("spanning check exceeds the enumeration cap");
    combos *= order;
  }
  std::set<std::vector<std::size_t>> span;
  std::vector<BinomialTerm> terms(exps.size());
  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t rest = code;
    for (std::size_t j = 0; j < exps.size(); ++j) {
      terms[j] = {rest % order, exps[j]};
      rest /= order;
    }
    const BinomialPolyMap phi(dim, target, terms);
    std::vector<std::size_t> restriction(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) restriction[p] = phi(points[p]);
    span.insert(std::move(restriction));
  }
  report.survivors = survivors.size();
  report.span_size = span.size();
  report.equal = survivors == span;
  return report;
}

}  // namespace hofa
