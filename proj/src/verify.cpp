#include "vostokov/verify.hpp"

#include <chrono>
#include <functional>
#include <map>

#include "vostokov/error.hpp"
#include "vostokov/oracles.hpp"
#include "vostokov/sampling.hpp"
#include "vostokov/shafarevich.hpp"

namespace vostokov {

namespace {

struct Config {
  unsigned p, m, n;
};

std::string config_str(Config c) {
  return std::to_string(c.p) + "," + std::to_string(c.m) + "," + std::to_string(c.n);
}

FieldSpecPtr field_of(Config c) { return FieldSpec::cyclotomic(c.p, c.m, c.n); }

std::uint64_t with_sign(std::uint64_t v, std::uint64_t mod) {
  v %= mod;
  return kGlobalSign > 0 ? v : (mod - v) % mod;
}

std::vector<std::string> show(const std::vector<FieldElement>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

class Runner {
 public:
  Runner(const std::string& name, const SuiteOptions& o) : opts(o), rng(o.seed) {
    report.name = name;
    report.trials = o.trials;
  }

  void check(bool ok, Counterexample ce) {
    ++report.checks;
    if (!ok) report.failures.push_back(std::move(ce));
  }

  void check_eq(std::uint64_t got, std::uint64_t want, const std::string& name, Config c,
                std::vector<std::string> inputs) {
    check(got == want, {name, config_str(c), std::move(inputs), std::to_string(got), std::to_string(want)});
  }

  // Runs one trial; library errors become failures instead of aborting the suite.
  void trial(const std::string& name, Config c, const std::function<void()>& body) {
    try {
      body();
    } catch (const PrecisionError& e) {
      ++report.checks;
      report.nonstabilized = true;
      report.failures.push_back({name, config_str(c), {}, std::string("precision: ") + e.what(), ""});
    } catch (const Error& e) {
      ++report.checks;
      report.failures.push_back({name, config_str(c), {}, std::string("error: ") + e.what(), ""});
    }
  }

  std::uint64_t symbol(const std::vector<FieldElement>& args) {
    const SymbolExponent r = vostokov_exponent(args);
    if (opts.log) opts.log->add({args[0].spec(), canonical_sources(args), show(args), r});
    return r.value;
  }

  std::uint64_t symbol_sources(const FieldSpecPtr& spec, const std::vector<LiftSource>& sources,
                               std::vector<std::string> inputs) {
    const SymbolExponent r = vostokov_exponent(spec, sources);
    if (opts.log) opts.log->add({spec, sources, std::move(inputs), r});
    return r.value;
  }

  SuiteReport finish() {
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  SuiteOptions opts;
  Rng rng;
  SuiteReport report;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

const std::vector<Config> kAxiomConfigs{{3, 1, 1}, {5, 1, 1}, {3, 1, 2}};

// ---- oracle agreement -------------------------------------------------------

void suite_kummer(Runner& R) {
  for (unsigned p : {3u, 5u}) {
    const Config c{p, 1, 1};
    const FieldSpecPtr K = field_of(c);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("kummer", c, [&] {
        const FieldElement eps = random_principal_unit(K, R.rng);
        const FieldElement eta = random_principal_unit(K, R.rng);
        const std::uint64_t v = R.symbol({eps, eta});
        const std::uint64_t k = kummer_exponent(lift_element(eps), lift_element(eta));
        R.check_eq(v, with_sign(k, p), "kummer", c, show({eps, eta}));
      });
  }
}

void suite_artin_hasse(Runner& R) {
  for (Config c : {Config{3, 1, 1}, Config{3, 2, 1}, Config{5, 1, 1}}) {
    const FieldSpecPtr K = field_of(c);
    const FieldElement zeta = FieldElement::zeta(K), pi = FieldElement::pi(K);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("artin-hasse", c, [&] {
        const FieldElement eps = random_principal_unit(K, R.rng);
        R.check_eq(R.symbol({eps, zeta}), with_sign(artin_hasse_zeta(eps), K->pm()),
                   "artin-hasse-zeta", c, show({eps, zeta}));
        R.check_eq(R.symbol({pi, eps}), with_sign(artin_hasse_pi(eps), K->pm()), "artin-hasse-pi",
                   c, show({pi, eps}));
      });
  }
}

void suite_pinned(Runner& R) {
  const Config c{3, 1, 1};
  const FieldSpecPtr K = field_of(c);
  R.trial("pinned", c, [&] {
    const FieldElement z = FieldElement::zeta(K);
    const FieldElement a = FieldElement::from_int(K, 1) - FieldElement::pi(K);
    R.check_eq(R.symbol({z, a}), with_sign(2, 3), "pinned V(z,1-pi)", c, show({z, a}));
    // the two hand derivations
    R.check_eq(kummer_exponent(lift_element(z), lift_element(a)), 2, "pinned kummer", c, show({z, a}));
    R.check_eq((3 - artin_hasse_zeta(a)) % 3, 2, "pinned artin-hasse", c, show({a}));
  });
}

// ---- symbol axioms ------------------------------------------------------------

std::vector<FieldElement> draw(Runner& R, const FieldSpecPtr& K, std::size_t k) {
  std::vector<FieldElement> xs;
  for (std::size_t i = 0; i < k; ++i) xs.push_back(random_element(K, R.rng));
  return xs;
}

void suite_multilinearity(Runner& R) {
  for (Config c : kAxiomConfigs) {
    const FieldSpecPtr K = field_of(c);
    const std::uint64_t pm = K->pm();
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("multilinearity", c, [&] {
        std::vector<FieldElement> args = draw(R, K, c.n + 1);
        const FieldElement extra = random_element(K, R.rng);
        for (std::size_t slot = 0; slot < args.size(); ++slot) {
          std::vector<FieldElement> a2 = args, prod = args;
          a2[slot] = extra;
          prod[slot] = args[slot] * extra;
          const std::uint64_t lhs = R.symbol(prod);
          const std::uint64_t rhs = (R.symbol(args) + R.symbol(a2)) % pm;
          std::vector<std::string> in = show(args);
          in.push_back(extra.to_string());
          R.check_eq(lhs, rhs, "multilinearity slot " + std::to_string(slot + 1), c, in);
        }
      });
  }
}

void suite_steinberg(Runner& R) {
  for (Config c : kAxiomConfigs) {
    const FieldSpecPtr K = field_of(c);
    const FieldElement one = FieldElement::from_int(K, 1);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("steinberg", c, [&] {
        FieldElement a = random_element(K, R.rng);
        while ((one - a).is_zero()) a = random_element(K, R.rng);
        std::vector<FieldElement> args{a, one - a};
        if (c.n == 2) args.push_back(random_element(K, R.rng));
        R.check_eq(R.symbol(args), 0, "steinberg", c, show(args));
      });
  }
}

void suite_minus(Runner& R) {
  for (Config c : kAxiomConfigs) {
    const FieldSpecPtr K = field_of(c);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("minus", c, [&] {
        const FieldElement a = random_element(K, R.rng);
        std::vector<FieldElement> args{a, -a};
        if (c.n == 2) args.push_back(random_element(K, R.rng));
        R.check_eq(R.symbol(args), 0, "V(a,-a)", c, show(args));
      });
  }
}

void suite_antisymmetry(Runner& R) {
  for (Config c : kAxiomConfigs) {
    if (c.n != 1) continue;
    const FieldSpecPtr K = field_of(c);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("antisymmetry", c, [&] {
        const auto xs = draw(R, K, 2);
        const std::uint64_t s = (R.symbol({xs[0], xs[1]}) + R.symbol({xs[1], xs[0]})) % K->pm();
        R.check_eq(s, 0, "antisymmetry", c, show(xs));
      });
  }
}

void suite_kslot(Runner& R) {
  for (Config c : kAxiomConfigs) {
    if (c.n != 2) continue;
    const FieldSpecPtr K = field_of(c);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("kslot-antisymmetry", c, [&] {
        const auto xs = draw(R, K, 3);
        const std::uint64_t s =
            (R.symbol({xs[0], xs[1], xs[2]}) + R.symbol({xs[1], xs[0], xs[2]})) % K->pm();
        R.check_eq(s, 0, "kslot-antisymmetry", c, show(xs));
      });
  }
}

void suite_axioms(Runner& R) {
  suite_multilinearity(R);
  suite_steinberg(R);
  suite_minus(R);
  suite_antisymmetry(R);
  suite_kslot(R);
}

void suite_well_defined(Runner& R) {
  for (Config c : {Config{3, 1, 1}, Config{5, 1, 1}, Config{3, 2, 1}}) {
    const FieldSpecPtr K = field_of(c);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("well-defined", c, [&] {
        const auto xs = draw(R, K, 2);
        const std::uint64_t base = R.symbol(xs);
        std::vector<LiftSource> sources;
        std::vector<std::string> in = show(xs);
        for (const auto& x : xs) {
          const std::uint64_t seed = R.rng();
          sources.push_back([x, seed](int digits) { return relift_random_sparse(x, seed, digits); });
          in.push_back("relift seed " + std::to_string(seed));
        }
        R.check_eq(R.symbol_sources(K, sources, in), base, "relift", c, in);
      });
  }
}

// ---- Shafarevich basis --------------------------------------------------------

void suite_orthogonality(Runner& R) {
  for (Config c : {Config{3, 1, 1}, Config{5, 1, 1}, Config{3, 2, 1}, Config{3, 1, 2}})
    R.trial("orthogonality", c, [&] {
      const BasisDescription B = build_basis(field_of(c));
      for (const auto& e : verify_orthogonality(B).entries)
        R.check_eq(e.exponent, e.expected, "orthogonality " + e.label, c, {e.label});
    });
}

void suite_dual(Runner& R) {
  for (Config c : {Config{3, 1, 1}, Config{3, 1, 2}}) {
    const FieldSpecPtr K = field_of(c);
    for (const DualCase& dc : admissible_dual_cases(K))
      R.trial("dual", c, [&] {
        const DualResult r = dual_search(K, dc);
        const std::string label = "theta=" + std::to_string(K->ring()->residue_index(dc.theta)) +
                                  " I=(" + std::to_string(dc.I[0]) + "," + std::to_string(dc.I[1]) +
                                  ") l=" + std::to_string(dc.l);
        R.check(r.found, {"dual", config_str(c), {label}, "no partner", "partner with exponent 1"});
      });
  }
}

void suite_decompose(Runner& R) {
  const Config c{3, 1, 1};
  const FieldSpecPtr K = field_of(c);
  const BasisDescription B = build_basis(K);
  const FieldElement pi = FieldElement::pi(K);
  for (int t = 0; t < R.opts.trials; ++t)
    R.trial("decompose", c, [&] {
      const FieldElement a = random_element(K, R.rng);
      const Decomposition d = decompose(a, B);
      R.check(certificate_holds(a, d, B), {"decompose round-trip", config_str(c), {a.to_string()},
                                           "reconstruction differs", "alpha"});
      R.check_eq(R.symbol({pi, a}), with_sign(d.c, K->pm()), "pairing consistency", c,
                 {a.to_string()});
    });
}

// ---- Sen, norms -----------------------------------------------------------------

void suite_sen(Runner& R) {
  const Config c{3, 1, 1};
  const FieldSpecPtr K = field_of(c);
  const WittRing& W = *K->ring();
  const WittPoly h{W.one(), W.one()};
  for (int t = 0; t < R.opts.trials; ++t)
    R.trial("sen", c, [&] {
      const FieldElement a = random_principal_unit(K, R.rng, sen_level(*K));
      const FieldElement u = random_unit(K, R.rng);
      const std::vector<std::pair<FieldElement, WittPoly>> betas{
          {FieldElement::pi(K), {W.zero(), W.one()}},
          {FieldElement::zeta(K), {W.one(), W.one()}},
          {u, polynomial_of(u)}};
      for (const auto& [b, g] : betas)
        R.check_eq(R.symbol({b, a}), with_sign(sen_exponent(a, b, g, h), K->pm()), "sen", c,
                   show({a, b}));
    });
}

void suite_norm(Runner& R) {
  const Config c{3, 1, 1};
  const FieldSpecPtr K = field_of(c);
  for (int t = 0; t < R.opts.trials; ++t)
    R.trial("norm", c, [&] {
      for (;;) {
        const FieldElement a = random_element(K, R.rng, -1, 2);
        const FieldElement b = random_element(K, R.rng, -1, 2);
        NormMembership nm;
        try {
          nm = norm_membership(a, b, R.rng());
        } catch (const DomainError&) {
          continue;  // b is a cube
        }
        const bool trivial = R.symbol({a, b}) == 0;
        R.check(nm.member == trivial, {"norm", config_str(c), show({a, b}),
                                       nm.member ? "norm" : "not a norm",
                                       trivial ? "norm (V = 0)" : "not a norm (V != 0)"});
        return;
      }
    });
}

// ---- kernel invariants ------------------------------------------------------------

IterSeries random_series(const WittRingPtr& W, int n, Exponent origin, int rows, int cols, int slope,
                         Rng& rng) {
  IterSeries s = IterSeries::zero(W, n, origin, rows, cols, slope);
  for (int r = 0; r < s.rows(); ++r)
    for (int k = 0; k < s.cols(); ++k) s.cell(r, k) = random_coords(*W, rng);
  return s;
}

IterSeries times_p_power(const IterSeries& s, unsigned k) {
  return s.scaled(s.ring()->from_int(static_cast<std::int64_t>(modarith::ipow(s.ring()->p(), k))));
}

void suite_witt(Runner& R) {
  struct RingCfg {
    unsigned p, f, N;
  };
  for (RingCfg rc : {RingCfg{3, 1, 6}, RingCfg{3, 2, 4}, RingCfg{5, 2, 3}, RingCfg{3, 4, 3},
                     RingCfg{7, 3, 3}}) {
    const WittRingPtr W = make_ring(rc.p, rc.f, rc.N);
    const WittRingPtr lo = W->at_precision(rc.N - 1);
    const Config c{rc.p, rc.f, rc.N};
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("witt", c, [&] {
        const Coords x = random_coords(*W, R.rng), y = random_coords(*W, R.rng);
        auto eq = [&](bool ok, const std::string& what) {
          R.check(ok, {what, "p,f,N=" + config_str(c), {WittElement(W, x).to_string(),
                                                        WittElement(W, y).to_string()}, "", ""});
        };
        eq(W->frobenius(W->mul(x, y)) == W->mul(W->frobenius(x), W->frobenius(y)), "frob mult");
        eq(W->frobenius(W->add(x, y)) == W->add(W->frobenius(x), W->frobenius(y)), "frob add");
        eq(W->residue_is_zero(W->sub(W->frobenius(x), W->pow(x, rc.p))), "frob = p-power mod p");
        eq(W->frobenius_power(x, rc.f) == x, "frob^f = id");
        const Coords th = W->teichmuller(W->residue(x));
        eq(W->pow(th, W->residue_size()) == th, "teich^q = teich");
        eq(W->residue(th) == W->residue(x), "teich reduces to c");
        eq(W->trace(W->frobenius(x)) == W->trace(x), "trace frob-invariant");
        eq(W->trace(W->add(x, y)) == (W->trace(x) + W->trace(y)) % W->modulus(), "trace additive");
        const Coords xl = W->reduce_to(x, rc.N - 1), yl = W->reduce_to(y, rc.N - 1);
        eq(lo->mul(xl, yl) == W->reduce_to(W->mul(x, y), rc.N - 1), "reduction: mul");
        eq(lo->frobenius(xl) == W->reduce_to(W->frobenius(x), rc.N - 1), "reduction: frob");
        eq(lo->teichmuller(W->residue(x)) == W->reduce_to(th, rc.N - 1), "reduction: teich");
      });
  }
}

struct SeriesCfg {
  unsigned p, f, N;
  int n;
};
const std::vector<SeriesCfg> kSeriesCfgs{{3, 1, 5, 1}, {3, 2, 4, 1}, {5, 1, 3, 1}, {3, 1, 4, 2},
                                         {3, 2, 3, 2}};

Config as_config(SeriesCfg s) { return {s.p, s.f, static_cast<unsigned>(s.n)}; }

void suite_delta(Runner& R) {
  for (SeriesCfg sc : kSeriesCfgs) {
    const WittRingPtr W = make_ring(sc.p, sc.f, sc.N);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("delta", as_config(sc), [&] {
        const int slope = sc.n == 2 ? 1 : 0, cols = sc.n == 2 ? 7 : 1;
        const IterSeries a = random_series(W, sc.n, {0, 0}, 6, cols, slope, R.rng);
        const IterSeries b = random_series(W, sc.n, {0, 0}, 6, cols, slope, R.rng);
        auto ok = [&](bool v, const std::string& what) {
          R.check(v, {what, config_str(as_config(sc)), {a.to_string(), b.to_string()}, "", ""});
        };
        ok((a + b).delta_twist().agrees_with(a.delta_twist() + b.delta_twist()), "delta additive");
        ok((a * b).delta_twist().agrees_with(a.delta_twist() * b.delta_twist()), "delta multiplicative");
        ok(a.delta_twist().with_prec(1).agrees_with(a.pow(sc.p).with_prec(1)), "delta = p-power mod p");
      });
  }
}

void suite_log(Runner& R) {
  for (SeriesCfg sc : kSeriesCfgs) {
    const WittRingPtr W = make_ring(sc.p, sc.f, sc.N);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("log", as_config(sc), [&] {
        const int slope = sc.n == 2 ? 1 : 0, cols = sc.n == 2 ? 7 : 1;
        // alternate between X-small and p-small units
        const bool xsmall = t % 2 == 0;
        const Exponent o = xsmall ? (sc.n == 2 ? Exponent{1, 0} : Exponent{0, 1}) : Exponent{0, 0};
        auto unit = [&] {
          IterSeries u = random_series(W, sc.n, o, 6, cols, slope, R.rng);
          if (!xsmall) u = times_p_power(u, 1);
          return u + u.one_like();
        };
        const IterSeries a = unit(), b = unit();
        const LogSeries la = log_unit(a), lb = log_unit(b), lab = log_unit(a * b);
        const unsigned D = std::max({la.denominator_exp, lb.denominator_exp, lab.denominator_exp});
        const IterSeries lhs = times_p_power(lab.numerator, D - lab.denominator_exp);
        const IterSeries rhs = times_p_power(la.numerator, D - la.denominator_exp) +
                               times_p_power(lb.numerator, D - lb.denominator_exp);
        R.check(lhs.agrees_with(rhs), {xsmall ? "log additive (X-small)" : "log additive (p-small)",
                                       config_str(as_config(sc)), {a.to_string(), b.to_string()}, "", ""});
      });
  }
}

void suite_exp(Runner& R) {
  for (SeriesCfg sc : kSeriesCfgs) {
    const WittRingPtr W = make_ring(sc.p, sc.f, sc.N);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("exp", as_config(sc), [&] {
        const int slope = sc.n == 2 ? 1 : 0, cols = sc.n == 2 ? 6 : 1;
        const Exponent o = sc.n == 2 ? Exponent{0, 1} : Exponent{0, 1};
        const IterSeries f = random_series(W, sc.n, o, 5, cols, slope, R.rng);
        const IterSeries g = random_series(W, sc.n, o, 5, cols, slope, R.rng);
        const IterSeries Ef = shafarevich_exp(f);
        const std::vector<std::string> in{f.to_string(), g.to_string()};
        R.check((Ef * shafarevich_exp(g)).agrees_with(shafarevich_exp(f + g)),
                {"E additive", config_str(as_config(sc)), in, "", ""});
        // log E(f) = sum_k Delta^k f / p^k, compared after clearing denominators
        const LogSeries L = log_unit(Ef);
        const unsigned p = sc.p;
        unsigned S = L.denominator_exp;
        for (std::uint64_t pk = p; pk < static_cast<std::uint64_t>(Ef.rows() + Ef.cols()); pk *= p) ++S;
        const IterSeries lhs = times_p_power(L.numerator, S - L.denominator_exp);
        IterSeries rhs = lhs.scaled(W->zero());
        std::uint64_t pk = 1;
        for (unsigned k = 0; k <= S; ++k, pk *= p) {
          f.for_each([&](Exponent e, const Coords& c) {
            const Exponent ek{static_cast<int>(pk) * e[0], static_cast<int>(pk) * e[1]};
            if (rhs.in_window(ek))
              rhs.add_to(ek, W->scale(W->frobenius_power(c, k), modarith::ipow(p, S - k)));
          });
        }
        R.check(lhs.agrees_with(rhs), {"E integral with log E = sum Delta^k f / p^k",
                                       config_str(as_config(sc)), in, "", ""});
      });
  }
}

void suite_residue(Runner& R) {
  for (SeriesCfg sc : kSeriesCfgs) {
    const WittRingPtr W = make_ring(sc.p, sc.f, sc.N);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("residue", as_config(sc), [&] {
        if (sc.n == 1) {
          const IterSeries g = random_series(W, 1, {0, -5}, 12, 1, 0, R.rng);
          R.check(W->is_zero(residue({g.partial(1), 1})),
                  {"res(g' dX) = 0", config_str(as_config(sc)), {g.to_string()}, "", ""});
        } else {
          const IterSeries a = random_series(W, 2, {-3, -3}, 8, 12, 1, R.rng);
          R.check(W->is_zero(residue({a.partial(0), 1})),
                  {"res(da ^ dX2) = 0", config_str(as_config(sc)), {a.to_string()}, "", ""});
          R.check(W->is_zero(residue({a.partial(1), -1})),
                  {"res(dX1 ^ da) = 0", config_str(as_config(sc)), {a.to_string()}, "", ""});
        }
      });
  }
}

void suite_invert_s(Runner& R) {
  for (SeriesCfg sc : kSeriesCfgs) {
    if (sc.n != 1) continue;
    const WittRingPtr W = make_ring(sc.p, sc.f, sc.N);
    std::uniform_int_distribution<int> cdist(1, 4);
    for (int t = 0; t < R.opts.trials; ++t)
      R.trial("invert-s", as_config(sc), [&] {
        const int c = t == 0 ? 0 : cdist(R.rng);
        const int rows = c * static_cast<int>(sc.N + 2) + 12;
        IterSeries s = random_series(W, 1, {0, 0}, rows, 1, 0, R.rng);
        for (int e = 0; e < c; ++e) s.set({0, e}, W->scale(s.coeff(e), sc.p));
        s.set({0, c}, W->add(W->teichmuller(W->residue_from_index(1)), W->scale(s.coeff(c), sc.p)));
        const MixedInverse inv = invert_s(s, sc.N);
        int lo = 0, top = 1 << 30;
        for (const auto& term : inv.terms) {
          lo = std::min(lo, term.series.origin()[1]);
          top = std::min(top, term.series.origin()[1] + term.series.rows() - 1);
        }
        const IterSeries prod = s * inv.expanded(top - lo + 1);
        bool ok = prod.in_window({0, 0});
        for (int e = lo; ok && e <= top && prod.in_window({0, e}); ++e) {
          const Coords want = e == 0 ? W->one() : W->zero();
          ok = W->equal_mod(prod.coeff(e), want, inv.prec);
        }
        R.check(ok, {"s * (1/s) = 1", config_str(as_config(sc)), {s.to_string()}, "", ""});
      });
  }
}

void suite_kernel(Runner& R) {
  suite_witt(R);
  suite_delta(R);
  suite_log(R);
  suite_exp(R);
  suite_residue(R);
  suite_invert_s(R);
}

void suite_stability(Runner& R) {
  SymbolLog local;
  SuiteOptions o = R.opts;
  o.log = &local;
  o.trials = std::max(1, R.opts.trials / 5);
  for (const char* name : {"kummer", "artin-hasse", "axioms", "well-defined"}) run_suite(name, o);
  const SuiteReport rep = recheck_stability(local);
  R.report.checks += rep.checks;
  for (const auto& f : rep.failures) R.report.failures.push_back(f);
}

const std::map<std::string, std::function<void(Runner&)>>& registry() {
  static const std::map<std::string, std::function<void(Runner&)>> r{
      {"kummer", suite_kummer},
      {"artin-hasse", suite_artin_hasse},
      {"pinned", suite_pinned},
      {"multilinearity", suite_multilinearity},
      {"steinberg", suite_steinberg},
      {"minus", suite_minus},
      {"antisymmetry", suite_antisymmetry},
      {"kslot-antisymmetry", suite_kslot},
      {"axioms", suite_axioms},
      {"well-defined", suite_well_defined},
      {"stability", suite_stability},
      {"orthogonality", suite_orthogonality},
      {"dual", suite_dual},
      {"decompose", suite_decompose},
      {"sen", suite_sen},
      {"norm", suite_norm},
      {"witt", suite_witt},
      {"delta", suite_delta},
      {"log", suite_log},
      {"exp", suite_exp},
      {"residue", suite_residue},
      {"invert-s", suite_invert_s},
      {"kernel", suite_kernel},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, fn] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw DomainError("unknown suite: " + name);
  Runner r(name, opts);
  it->second(r);
  return r.finish();
}

PrecisionPlan doubled(const PrecisionPlan& plan) { return {plan.N * 2, plan.window * 2}; }

SuiteReport recheck_stability(const SymbolLog& log) {
  SuiteReport rep;
  rep.name = "stability";
  rep.trials = static_cast<int>(log.size());
  const auto start = std::chrono::steady_clock::now();
  for (const auto& rec : log.records()) {
    ++rep.checks;
    const PrecisionPlan d = doubled(rec.result.confirmed);
    const std::string cfg = std::to_string(rec.spec->p()) + "," + std::to_string(rec.spec->m()) +
                            "," + std::to_string(rec.spec->n());
    try {
      std::vector<SparseLift> lifts;
      for (const auto& src : rec.sources) lifts.push_back(src(2 * d.window));
      const std::uint64_t v = pairing_at_plan(*rec.spec, lifts, d);
      if (v != rec.result.value)
        rep.failures.push_back({"doubled plan " + describe(d), cfg, rec.inputs, std::to_string(v),
                                std::to_string(rec.result.value)});
    } catch (const Error& e) {
      rep.nonstabilized = true;
      rep.failures.push_back({"doubled plan " + describe(d), cfg, rec.inputs,
                              std::string("error: ") + e.what(), std::to_string(rec.result.value)});
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace vostokov
