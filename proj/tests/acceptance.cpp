// Acceptance suite: end-to-end checks of the twisted-product engine, one
// criterion per section, every comparison exact over the integers.

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tcp/cli.hpp"
#include "tcp/pipeline.hpp"

using namespace tcp;

namespace {

int failures = 0;

void criterion(int number, const std::string& title,
               const std::function<void()>& body) {
  try {
    body();
    std::cout << "PASS criterion " << number << ": " << title << "\n";
  } catch (const std::exception& e) {
    ++failures;
    std::cout << "FAIL criterion " << number << ": " << title << " -- "
              << e.what() << "\n";
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

std::vector<HomologyGroup> groups(
    std::vector<std::pair<long long, std::vector<int>>> spec) {
  std::vector<HomologyGroup> out;
  for (auto& [rank, tors] : spec) {
    HomologyGroup h;
    h.free_rank = rank;
    for (int d : tors) h.torsion.push_back(d);
    out.push_back(h);
  }
  return out;
}

std::string show(const std::vector<HomologyGroup>& hs) {
  std::string s;
  for (std::size_t i = 0; i < hs.size(); ++i)
    s += (i ? ", " : "") + hs[i].to_string();
  return "(" + s + ")";
}

}  // namespace

int main() {
  criterion(1, "EZ reduction identities on S1 x S1 and circle2 x sphere(2)", [] {
    for (auto [X, Y] : {std::pair{sphere(1), sphere(1)},
                        std::pair{circle2(), sphere(2)}}) {
      EzData ez = ez_reduction(X, Y, 64);
      CheckReport rep = check_reduction(ez.reduction, 0, 3);
      require(rep.ok(), X->name() + " x " + Y->name() + ": " + rep.summary());
    }
  });

  criterion(2, "BPL with zero perturbation reproduces the reduction on 100 "
               "sampled generators", [] {
    Tcp t = klein_tcp();
    TwistedEz tez = twisted_ez(t, 64);
    const Reduction& r = tez.ez.reduction;
    BplOutput out = basic_perturbation_lemma(r, GradedMap::zero(-1), 64);
    Sampler sampler(2024);
    std::vector<std::pair<int, Gen>> pool;
    for (int n = 0; n <= 3; ++n)
      for (const Gen& g : t.c_untwisted->basis(n)) pool.emplace_back(n, g);
    for (int i = 0; i < 100; ++i) {
      auto [n, g] = sampler.pick(pool);
      require(out.reduction.f.apply_gen(g, n) == r.f.apply_gen(g, n),
              "f changed");
      require(out.reduction.h.apply_gen(g, n) == r.h.apply_gen(g, n),
              "h changed");
      FormalSum fx = r.f.apply_gen(g, n);
      require(out.reduction.g(fx, n) == r.g(fx, n), "g changed");
      require(out.delta_bottom(fx, n).is_zero(), "delta' not zero");
    }
  });

  criterion(3, "Shih consistency: twisted differential equals the cap product "
               "on the Klein TCP (both modes)", [] {
    Tcp t = klein_tcp();
    TwistedEz tez = twisted_ez(t, 64);
    TwistingCochain tc(principal_tcp(t), 64);
    GradedMap cap1 = cap_product_map(t, tc, CapMode::Formula1);
    GradedMap cap2 = cap_product_map(t, tc, CapMode::Composite);
    for (int n = 0; n <= 3; ++n)
      for (const Gen& g : tez.bottom->basis(n)) {
        FormalSum expect = tez.delta_t.apply_gen(g, n);
        require(cap1.apply_gen(g, n) == expect,
                "FORMULA1 mismatch on " + to_string(g));
        require(cap2.apply_gen(g, n) == expect,
                "COMPOSITE mismatch on " + to_string(g));
      }
  });

  criterion(4, "twisting cochain base case t(b) = tau(b) - e0 on Klein and "
               "double-cover bases", [] {
    {
      Tcp t = klein_tcp();
      TwistingCochain tc(principal_tcp(t), 64);
      Simplex b({}, Gen::atom("sigma1"), 1);
      FormalSum expect = chain_of(t.tau.apply(b)) - FormalSum(residue_gen(0));
      require(tc(b) == expect, "Klein base edge");
    }
    {
      Tcp t = double_cover_tcp();
      TwistingCochain tc(principal_tcp(t), 64);
      for (long long a = -9; a <= 9; ++a) {
        if (a == 0) continue;
        Simplex b = kz1_simplex({a});
        FormalSum expect =
            chain_of(t.tau.apply(b)) - FormalSum(residue_gen(0));
        require(tc(b) == expect, "double-cover [" + std::to_string(a) + "]");
      }
    }
  });

  criterion(5, "homology oracles: klein (Z, Z+Z/2, 0) and torus (Z, Z^2, Z); "
               "all applicable routes agree with direct SNF of C(E)", [] {
    RouteOptions opt;
    opt.max_dim = 2;
    {
      BuiltinSetup s = builtin_setup("klein");
      auto expect = groups({{1, {}}, {1, {2}}, {0, {}}});
      require(direct_homology(s.tcp, 2) == expect, "klein direct");
      for (auto m : {Method::Thm41, Method::Cor42, Method::Cor44}) {
        auto res = run_route(s.tcp, m, s.fiber_eq, s.base_eq, opt);
        require(res.homology == expect,
                "klein route " + res.diagnostics.route + " gave " +
                    show(res.homology));
      }
    }
    {
      BuiltinSetup s = builtin_setup("torus");
      RouteOptions t3 = opt;
      t3.max_dim = 2;
      auto expect = groups({{1, {}}, {2, {}}, {1, {}}});
      require(direct_homology(s.tcp, 2) == expect, "torus direct");
      for (auto m : {Method::Thm41, Method::Cor42, Method::Cor44}) {
        auto res = run_route(s.tcp, m, s.fiber_eq, s.base_eq, t3);
        require(res.homology == expect,
                "torus route " + res.diagnostics.route + " gave " +
                    show(res.homology));
      }
    }
  });

  criterion(6, "Hopf via cor42: H = (Z, 0, 0, Z) through degree 3, both "
               "branch conditions verified", [] {
    BuiltinSetup s = builtin_setup("hopf");
    require(zero_reduced(s.tcp.group), "K(Z,1) must be 0-reduced");
    require(s.base_eq.trivial, "sphere(2) equipment must be trivial");
    // t vanishes on base 1-simplices (all degenerate on sphere(2))
    TwistingCochain tc(principal_tcp(s.tcp), 64);
    require(tc(apply_degeneracy(0, Simplex({}, Gen::atom("*"), 0))).is_zero(),
            "t nonzero on a degenerate 1-simplex");
    RouteOptions opt;
    opt.max_dim = 3;
    opt.sample_count = 10;
    PipelineResult res = route_cor42(s.tcp, s.fiber_eq, s.base_eq, opt);
    auto expect = groups({{1, {}}, {0, {}}, {0, {}}, {1, {}}});
    require(res.homology == expect, "hopf gave " + show(res.homology));
  });

  criterion(7, "double cover via cor53: H = (Z, Z, 0) through degree 2, all "
               "(h_B d0) witnesses <= 2", [] {
    BuiltinSetup s = builtin_setup("double-cover");
    RouteOptions opt;
    opt.max_dim = 2;
    opt.sample_count = 25;
    PipelineResult res = route_cor53(s.tcp, s.fiber_eq, s.base_eq, opt);
    auto expect = groups({{1, {}}, {1, {}}, {0, {}}});
    require(res.homology == expect, "double cover gave " + show(res.homology));
    require(!res.diagnostics.hd0_witnesses.empty(), "no witnesses recorded");
    for (int w : res.diagnostics.hd0_witnesses)
      require(w <= 2, "witness " + std::to_string(w) + " exceeds 2");
  });

  criterion(8, "filtration drops: >= 1 on 500 Klein samples, >= 2 on 500 Hopf "
               "samples", [] {
    {
      Tcp t = klein_tcp();
      TwistedEz tez = twisted_ez(t, 64);
      TwistingCochain tc(principal_tcp(t), 64);
      GradedMap cap = cap_product_map(t, tc, CapMode::Formula1);
      std::vector<std::pair<int, Gen>> pool;
      for (int n = 0; n <= 3; ++n)
        for (const Gen& g : tez.bottom->basis(n)) pool.emplace_back(n, g);
      Sampler sampler(8);
      std::vector<std::pair<int, Gen>> samples;
      for (int i = 0; i < 500; ++i) samples.push_back(sampler.pick(pool));
      CheckReport rep = filtration_drop_report(cap, samples, 1);
      require(rep.ok() && rep.checked == 500, "klein: " + rep.summary());
    }
    {
      Tcp t = hopf_tcp();
      TwistingCochain tc(principal_tcp(t), 64);
      GradedMap cap = cap_product_map(t, tc, CapMode::Formula1);
      Sampler sampler(9);
      Gen star = Gen::atom("*"), s2 = Gen::atom("sigma2");
      std::vector<std::pair<int, Gen>> samples;
      while (static_cast<int>(samples.size()) < 500) {
        int k = static_cast<int>(sampler.int_in(0, 3));
        Simplex y = k == 0 ? kz1_simplex({}) : sampler.kz1_core(k, 9);
        bool top = sampler.int_in(0, 1) == 1;
        samples.emplace_back(
            k + (top ? 2 : 0),
            Gen::tensor(y.core, k, top ? s2 : star, top ? 2 : 0));
      }
      CheckReport rep = filtration_drop_report(cap, samples, 2);
      require(rep.ok() && rep.checked == 500, "hopf: " + rep.summary());
    }
  });

  criterion(9, "Morse contract for K(Z,1) with the EML field", [] {
    GroupPtr G = kz1();
    VectorField V = eml_vector_field(G);
    MorseData m = morse_reduction(V, 64);
    Sampler sampler(10);
    // identities on samples (entry bound 9, cap 5)
    std::vector<std::pair<int, Gen>> top_samples;
    for (int i = 0; i < 150; ++i) {
      int d = 1 + static_cast<int>(sampler.int_in(0, 4));
      top_samples.emplace_back(d, sampler.kz1_core(d, 9).core);
    }
    top_samples.emplace_back(0, Gen::tuple({}));
    std::vector<std::pair<int, Gen>> bottom_samples = {{0, Gen::tuple({})},
                                                       {1, Gen::tuple({1})}};
    CheckReport rep = check_reduction_on(m.reduction, top_samples,
                                         bottom_samples);
    require(rep.ok(), rep.summary());
    // h lands in Z.T and vanishes on targets and criticals
    for (const auto& [n, g] : top_samples) {
      Simplex s = G->space->from_core(g, n);
      FormalSum h = m.reduction.h.apply_gen(g, n);
      for (const auto& [tg, c] : h.terms())
        require(V.classify(G->space->from_core(tg, n + 1)) ==
                    CellClass::Target,
                "h image leaves Z.T at " + to_string(g));
      if (V.classify(s) != CellClass::Source)
        require(h.is_zero(), "h nonzero on " + to_string(g));
    }
    // (*) on 1000 samples
    std::vector<std::pair<int, Gen>> star_samples;
    while (static_cast<int>(star_samples.size()) < 1000) {
      int d = 1 + static_cast<int>(sampler.int_in(0, 4));
      star_samples.emplace_back(d, sampler.kz1_core(d, 9).core);
    }
    CheckReport star = check_star_condition(V, star_samples);
    require(star.ok() && star.checked == 1000, star.summary());
    // critical complex homology (Z, Z)
    require(homology_group(*m.bottom, 0) == HomologyGroup{1, {}}, "H0");
    require(homology_group(*m.bottom, 1) == HomologyGroup{1, {}}, "H1");
    require(homology_group(*m.bottom, 2).trivial(), "H2");
  });

  criterion(10, "EPL/BPL strong-equivalence route matches cor42 on the Hopf "
                "input degreewise", [] {
    BuiltinSetup s = builtin_setup("hopf");
    RouteOptions opt;
    opt.max_dim = 3;
    opt.sample_count = 10;
    PipelineResult a = route_cor42(s.tcp, s.fiber_eq, s.base_eq, opt);
    PipelineResult b = route_cor44(s.tcp, s.fiber_eq, s.base_eq, opt);
    require(a.homology == b.homology,
            "cor42 " + show(a.homology) + " vs cor44 " + show(b.homology));
    require(b.equivalence.legs().size() == 3, "cor44 zig-zag shape");
  });

  if (failures == 0)
    std::cout << "acceptance: all 10 criteria passed\n";
  else
    std::cout << "acceptance: " << failures << " criterion(s) FAILED\n";
  return failures == 0 ? 0 : 1;
}
