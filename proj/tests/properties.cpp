#include "properties.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "smallparts/hecke.hpp"
#include "smallparts/number_theory.hpp"
#include "smallparts/qseries.hpp"
#include "smallparts/run_config.hpp"

using namespace smallparts;

namespace props {

namespace {

constexpr std::int64_t U = QSeries::kUnit;

/// Runs `check` once per case; a thrown error counts as a failure.
Outcome run(const std::string& name, int cases, std::uint64_t seed,
            const std::function<std::string(std::mt19937_64&, int)>& check) {
  Outcome o{name, 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    std::string failure;
    try {
      failure = check(rng, i);
    } catch (const std::exception& e) {
      failure = std::string("threw ") + e.what();
    }
    ++o.cases;
    if (!failure.empty()) {
      ++o.failures;
      if (o.first_failure.empty()) o.first_failure = "case " + std::to_string(i) + ": " + failure;
    }
  }
  return o;
}

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

QSeries random_laurent(std::mt19937_64& rng) {
  const std::int64_t lo = uniform(rng, -4, 3);
  const std::int64_t hi = lo + uniform(rng, 1, 60);
  return oracle::random_series(rng, lo, hi, 0.6, 12, true);
}

/// Random series whose leading coefficient is nonzero at its lowest exponent.
QSeries random_invertible(std::mt19937_64& rng) {
  QSeries s = random_laurent(rng);
  const std::int64_t lead = uniform(rng, -3, 2) * U;
  Rational head(uniform(rng, 1, 5), uniform(rng, 1, 4));
  head.canonicalize();
  std::vector<QSeries::Term> terms{{lead, head}};
  for (const auto& t : s.terms())
    if (t.index > lead) terms.push_back(t);
  return QSeries(std::move(terms), std::max(s.precision(), lead + 30 * U));
}

}  // namespace

Outcome ring_laws(int cases, std::uint64_t seed) {
  return run("ring and derivation laws", cases, seed, [](std::mt19937_64& rng, int) -> std::string {
    const QSeries a = random_laurent(rng);
    const QSeries b = random_laurent(rng);
    const QSeries c = random_laurent(rng);
    if (mul(a, b) != mul(b, a)) return "mul not commutative";
    if (add(a, b) != add(b, a)) return "add not commutative";
    if (!agree(mul(mul(a, b), c), mul(a, mul(b, c)))) return "mul not associative";
    if (!agree(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))) return "distributivity";
    if (!add(a, negate(a)).is_zero()) return "additive inverse";
    if (mul(a, QSeries::one()) != a) return "multiplicative identity";
    if (!agree(q_derivative(mul(a, b)), add(mul(q_derivative(a), b), mul(a, q_derivative(b)))))
      return "q d/dq is not a derivation";
    const std::int64_t t = uniform(rng, 2, 8);
    if (!agree(dilate(mul(a, b), t), mul(dilate(a, t), dilate(b, t)))) return "dilate not multiplicative";
    if (rescale_exponents(dilate(a, t), t) != a) return "rescale does not undo dilate";
    const QSeries u = random_invertible(rng);
    const QSeries prod = mul(u, invert(u));
    if (!agree(prod, QSeries::one()) || prod.precision() <= 0) return "invert(u) * u != 1";
    const std::int64_t k = uniform(rng, -3, 4);
    QSeries power = QSeries::one();
    for (int i = 0; i < std::abs(k); ++i) power = mul(power, u);
    if (k < 0) power = invert(power);
    if (!agree(pow(u, k), power)) return "pow disagrees with repeated multiplication";
    return {};
  });
}

Outcome precision_soundness(int cases, std::uint64_t seed) {
  return run("precision soundness", cases, seed, [](std::mt19937_64& rng, int) -> std::string {
    // Exact polynomials give ground truth; truncations must never claim a
    // coefficient the exact product contradicts.
    const QSeries a = oracle::random_series(rng, uniform(rng, -3, 2), 40, 0.7, 9, true);
    const QSeries b = oracle::random_series(rng, uniform(rng, -3, 2), 40, 0.7, 9, true);
    const QSeries exact_a = QSeries(std::vector<QSeries::Term>(a.terms()), QSeries::kExact);
    const QSeries exact_b = QSeries(std::vector<QSeries::Term>(b.terms()), QSeries::kExact);
    const QSeries truth = mul(exact_a, exact_b);
    const QSeries ta = exact_a.truncate(uniform(rng, -2, 45) * U);
    const QSeries tb = exact_b.truncate(uniform(rng, -2, 45) * U);
    const QSeries approx = mul(ta, tb);
    if (!agree(approx, truth)) return "truncated product contradicts exact product";
    if (!agree(add(ta, tb), add(exact_a, exact_b))) return "truncated sum contradicts exact sum";
    if (!agree(q_derivative(ta), q_derivative(exact_a))) return "derivative precision";
    if (!ta.is_zero() && ta.min_index() < ta.precision()) {
      const QSeries inv_t = invert(ta);
      const QSeries inv_e = invert(exact_a, inv_t.precision() + 10 * U);
      if (!agree(inv_t, inv_e)) return "truncated inverse contradicts the longer inverse";
    }
    return {};
  });
}

Outcome json_round_trip(int cases, std::uint64_t seed) {
  return run("json round trip", cases, seed, [](std::mt19937_64& rng, int) -> std::string {
    std::vector<QSeries::Term> terms;
    const int count = static_cast<int>(uniform(rng, 0, 30));
    for (int i = 0; i < count; ++i) {
      mpz_class num(static_cast<long>(uniform(rng, -1000000, 1000000)));
      if (uniform(rng, 0, 3) == 0) num *= mpz_class("98765432109876543210987654321");
      terms.push_back({uniform(rng, -500, 5000), Rational(num, mpz_class(static_cast<long>(uniform(rng, 1, 99))))});
      terms.back().coeff.canonicalize();
    }
    const std::int64_t precision = uniform(rng, 0, 4) == 0 ? QSeries::kExact : uniform(rng, -100, 6000);
    const QSeries s(std::move(terms), precision);
    if (series_from_json(to_json(s)) != s) return "round trip changed the series";
    return {};
  });
}

Outcome kronecker_multiplicativity(int cases, std::uint64_t seed) {
  return run("kronecker multiplicativity", cases, seed, [](std::mt19937_64& rng, int) -> std::string {
    const std::int64_t a = uniform(rng, -2000, 2000);
    const std::int64_t b = uniform(rng, -2000, 2000);
    const std::int64_t m = uniform(rng, 1, 3000);
    const std::int64_t n = uniform(rng, 1, 3000);
    if (kronecker(a * b, n) != kronecker(a, n) * kronecker(b, n)) return "not multiplicative in the top argument";
    if (kronecker(a, m * n) != kronecker(a, m) * kronecker(a, n)) return "not multiplicative in the bottom argument";
    // Euler's criterion at an odd prime.
    std::int64_t p = uniform(rng, 3, 2000) | 1;
    while (!is_prime(p)) p += 2;
    const std::int64_t r = ((a % p) + p) % p;
    mpz_class e;
    mpz_class base(static_cast<long>(r));
    mpz_powm_ui(e.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2),
                mpz_class(static_cast<long>(p)).get_mpz_t());
    const int euler = (r == 0) ? 0 : (e == 1 ? 1 : -1);
    if (kronecker(a, p) != euler) return "disagrees with Euler's criterion";
    return {};
  });
}

Outcome hecke_linearity_commutation(int cases, std::uint64_t seed) {
  return run("hecke linearity and commutation", cases, seed, [](std::mt19937_64& rng, int) -> std::string {
    const std::int64_t primes[] = {3, 5, 7};
    const std::int64_t discs[] = {1, -4, 8, 12, -3};
    const std::int64_t ell = primes[uniform(rng, 0, 2)];
    std::int64_t p = primes[uniform(rng, 0, 2)];
    if (p == ell) p = (ell == 3) ? 5 : 3;
    Character chi{discs[uniform(rng, 0, 4)]};
    while (chi(ell) == 0 || chi(p) == 0) chi = Character{discs[uniform(rng, 0, 4)]};

    const QSeries f = oracle::random_series(rng, uniform(rng, -2, 1), 2500, 0.5, 30, true);
    const QSeries g = oracle::random_series(rng, uniform(rng, -2, 1), 2500, 0.5, 30, true);
    Rational c(uniform(rng, -9, 9), uniform(rng, 1, 7));
    c.canonicalize();
    const QSeries lhs = apply_T_ell_squared(add(scale(f, c), g), ell, chi);
    const QSeries rhs = add(scale(apply_T_ell_squared(f, ell, chi), c), apply_T_ell_squared(g, ell, chi));
    if (lhs != rhs) return "T(ell^2) is not linear";

    const QSeries lp = apply_T_ell_squared(apply_T_ell_squared(f, ell, chi), p, chi);
    const QSeries pl = apply_T_ell_squared(apply_T_ell_squared(f, p, chi), ell, chi);
    if (!agree(lp, pl) || lp.q_precision() < 1) return "T(ell^2) and T(p^2) do not commute";

    const HeckeSpec spec{3, static_cast<int>(uniform(rng, 2, 3)), chi.d == 12 || chi.d == -3 ? Character{1} : chi};
    HeckeTriple triple(f, spec.ell, spec.chi);
    if (!agree(apply_T_power(triple, spec.m), apply_T_power_reversed(f, spec)))
      return "the two recursion orders differ";
    return {};
  });
}

Outcome closed_form_equivalence(int cases, std::uint64_t seed) {
  return run("closed-form equivalence", cases, seed, [](std::mt19937_64& rng, int i) -> std::string {
    const std::int64_t ell = std::array<std::int64_t, 3>{3, 5, 7}[i % 3];
    const int m = 1 + (i / 3) % 3;
    const std::int64_t discs[] = {1, -4, 8, 5, -7};
    Character chi{discs[uniform(rng, 0, 4)]};
    while (chi(ell) == 0) chi = Character{discs[uniform(rng, 0, 4)]};
    const HeckeSpec spec{ell, m, chi};

    // Part I reads a_m at ell^2 n, so the output must reach ell^2 * n_max.
    const std::int64_t n_max = (ell == 7 && m == 3) ? 4 : 12;
    const std::int64_t out_q = ell * ell * n_max;
    const std::int64_t l2m = checked_pow(ell, 2 * m);
    const std::int64_t source_q = l2m * out_q;

    // Sparse source: random values on every exponent ell^{2j} n the closed
    // forms and the operator touch, plus a dense random head.
    std::uniform_int_distribution<int> value(-40, 40);
    std::map<std::int64_t, Rational> coeffs;
    for (std::int64_t e = -1; e < 400; ++e) coeffs[e] = value(rng);
    for (std::int64_t scale_ = 1; scale_ <= l2m * ell * ell; scale_ *= ell * ell)
      for (std::int64_t n = -1; n * scale_ < source_q && n <= out_q; ++n) coeffs[n * scale_] = value(rng);
    std::vector<QSeries::Term> terms;
    for (const auto& [e, c] : coeffs)
      if (e < source_q) terms.push_back({e * U, c});
    const QSeries f0(std::move(terms), source_q * U);

    HeckeTriple triple(f0, ell, chi);
    const QSeries fm = build_F_m(triple, m, out_q);
    const QSeries fm1 = m >= 2 ? build_F_m(triple, m - 1, out_q) : f0;
    auto a0 = [&](std::int64_t n) { return f0.coeff_q(n); };

    for (std::int64_t n = 1; n < n_max; ++n) {
      const Rational part1_lhs = fm.coeff_q(ell * ell * n) - Rational(ell) * fm1.coeff_q(n);
      if (part1_lhs != prop22_closed_form(a0, spec, n, Prop22Part::I)) return "part I at n = " + std::to_string(n);
      if (n % ell != 0) {
        if (fm.coeff_q(n) != prop22_closed_form(a0, spec, n, Prop22Part::II))
          return "part II at n = " + std::to_string(n);
      } else if ((n / ell) % ell != 0) {
        if (fm.coeff_q(n) != prop22_closed_form(a0, spec, n, Prop22Part::III))
          return "part III at n = " + std::to_string(n);
      }
    }
    return {};
  });
}

Outcome config_round_trip(int cases, std::uint64_t seed) {
  return run("config round trip", cases, seed, [](std::mt19937_64& rng, int) -> std::string {
    const char* suites[] = {"paper-all", "spt", "overpartition", "m2", "sturm"};
    const char* names[] = {"mstar", "spt", "gbar", "m2", "hbar_lm"};
    RunConfig c;
    c.suite = suites[uniform(rng, 0, 4)];
    if (uniform(rng, 0, 1)) c.out = "/tmp/report " + std::to_string(uniform(rng, 0, 99)) + ".json";
    c.format = uniform(rng, 0, 1) ? "json" : "csv";
    c.jobs = static_cast<int>(uniform(rng, 1, 16));
    c.oracle_ceiling = uniform(rng, 1, 80);
    if (uniform(rng, 0, 1)) {
      const std::int64_t lo = uniform(rng, -50, 500);
      c.range = IndexRange{lo, lo + uniform(rng, 0, 10000)};
    }
    if (uniform(rng, 0, 1)) c.ell = std::array<std::int64_t, 4>{3, 5, 7, 11}[uniform(rng, 0, 3)];
    if (uniform(rng, 0, 1)) c.m = static_cast<int>(uniform(rng, 1, 3));
    if (uniform(rng, 0, 1)) c.cache_dir = "/var/tmp/cache=" + std::to_string(uniform(rng, 0, 9));
    for (int k = 0; k < uniform(rng, 0, 4); ++k) c.precision[names[uniform(rng, 0, 4)]] = uniform(rng, 1, 100000);
    if (parse_config_text(to_config_text(c)) != c) return "config changed in the round trip";
    return {};
  });
}

std::vector<Outcome> all(std::uint64_t seed) {
  return {
      ring_laws(250, seed),
      precision_soundness(200, seed + 1),
      json_round_trip(200, seed + 2),
      kronecker_multiplicativity(500, seed + 3),
      hecke_linearity_commutation(40, seed + 4),
      closed_form_equivalence(54, seed + 5),
      config_round_trip(200, seed + 6),
  };
}

}  // namespace props
