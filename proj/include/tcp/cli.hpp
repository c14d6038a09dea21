#pragma once

#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcp/io.hpp"
#include "tcp/pipeline.hpp"

namespace tcp {

namespace clidetail {

struct TcpFlags {
  std::string builtin;
  std::string fiber, group, base, twist;
  std::string action = "trivial";
};

struct Resolved {
  BuiltinSetup setup;
  // kept alive for parse_element closures
  std::shared_ptr<LoadedSpace> fiber_file, base_file;
  std::shared_ptr<LoadedGroup> group_file;
};

inline SpacePtr builtin_space(const std::string& name) {
  if (name == "point") return point_space();
  if (name == "circle2") return circle2();
  if (name == "circle4") return circle4();
  if (name == "kz1") return kz1()->space;
  if (name.rfind("sphere:", 0) == 0)
    return sphere(std::stoi(name.substr(7)));
  return nullptr;
}

inline EquipmentSide equip_for(const SpacePtr& space, const ComplexPtr& chains,
                               int guard) {
  if (space->name() == "K(Z,1)")
    return morse_equipment(eml_vector_field(space), chains, guard);
  if (!space->nondegenerate(0))
    throw ValidationError("no effective equipment available for OPEN space " +
                          space->name());
  return trivial_equipment(chains);
}

struct GroupBits {
  GroupPtr G;
  GroupCodec codec{GroupCodec::Kind::Kzm0, 0, nullptr};
  std::shared_ptr<LoadedGroup> file;
};

inline GroupBits resolve_group(const std::string& spec) {
  GroupBits out;
  if (spec == "kz1") {
    out.G = kz1();
    out.codec.kind = GroupCodec::Kind::Kz1;
  } else if (spec.rfind("kzm0:", 0) == 0) {
    out.codec.modulus = std::stoi(spec.substr(5));
    out.G = kzm0(out.codec.modulus);
  } else {
    out.file = std::make_shared<LoadedGroup>(load_group_file(spec));
    out.G = out.file->group;
    out.codec.kind = GroupCodec::Kind::File;
    out.codec.loaded = &out.file->underlying;
  }
  return out;
}

struct BaseBits {
  SpacePtr B;
  std::shared_ptr<LoadedSpace> file;
};

inline BaseBits resolve_base(const std::string& spec, bool trivial_twist) {
  if (SpacePtr b = builtin_space(spec); b && trivial_twist)
    return BaseBits{b, nullptr};
  auto file = std::make_shared<LoadedSpace>(load_space_file(spec));
  SpacePtr B = file->space;
  return BaseBits{std::move(B), std::move(file)};
}

inline TwistingOperator resolve_twist(const std::string& spec,
                                      const GroupBits& g, const BaseBits& b) {
  if (spec == "trivial") {
    GroupPtr G = g.G;
    return TwistingOperator{b.B, G, [G](const Gen&, int n) {
                              return G->unit(n - 1);
                            }};
  }
  if (!b.file)
    throw ValidationError("twist files need a file-defined base space");
  return load_twist(load_json(spec), *b.file, g.G, g.codec, spec);
}

inline Resolved resolve_tcp(const TcpFlags& f, int guard) {
  if (!f.builtin.empty())
    return Resolved{builtin_setup(f.builtin, guard), nullptr, nullptr, nullptr};
  if (f.base.empty() || f.group.empty() || f.twist.empty() || f.fiber.empty())
    throw ValidationError(
        "custom TCPs need --fiber, --group, --base and --twist "
        "(or use --builtin)");

  GroupBits g = resolve_group(f.group);
  BaseBits b = resolve_base(f.base, f.twist == "trivial");
  std::shared_ptr<LoadedSpace> fiber_file;
  SpacePtr F;
  if (f.fiber == "group") {
    F = g.G->space;
  } else if ((F = builtin_space(f.fiber)) == nullptr) {
    fiber_file = std::make_shared<LoadedSpace>(load_space_file(f.fiber));
    F = fiber_file->space;
  }
  TwistingOperator tau = resolve_twist(f.twist, g, b);
  GroupAction act = trivial_action();
  if (f.action == "trivial") {
    act = trivial_action();
  } else if (f.action == "principal") {
    if (F != g.G->space)
      throw ValidationError(
          "principal action needs the fiber to be the group (--fiber group)");
    act = principal_action(g.G);
  } else if (f.action == "flip") {
    act = flip_action();
  } else if (f.action == "reflection") {
    act = reflection_action();
  } else {
    if (!fiber_file)
      throw ValidationError("action files need a file-defined fiber space");
    act = load_action(load_json(f.action), *fiber_file, g.codec, f.action);
  }

  Tcp t = make_tcp("custom", F, g.G, act, b.B, std::move(tau));
  EquipmentSide eqF = equip_for(F, t.c_fiber, guard);
  EquipmentSide eqB = equip_for(b.B, t.c_base, guard);
  return Resolved{BuiltinSetup{std::move(t), std::move(eqF), std::move(eqB)},
                  std::move(fiber_file), std::move(b.file), std::move(g.file)};
}

inline std::vector<Simplex> base_axiom_samples(const SpacePtr& B, int max_dim,
                                               int count, unsigned seed) {
  std::vector<Simplex> out;
  bool open = false;
  for (int d = 1; d <= max_dim; ++d) {
    auto cells = all_simplices(B, d);
    if (!cells) {
      open = true;
      break;
    }
    for (const Simplex& s : *cells) out.push_back(s);
  }
  if (!open) return out;
  if (B->name() != "K(Z,1)")
    throw ValidationError("no sampler for OPEN base " + B->name());
  out.clear();
  Sampler sampler(seed);
  while (static_cast<int>(out.size()) < count)
    out.push_back(
        sampler.kz1_any(1 + static_cast<int>(sampler.int_in(0, max_dim - 1))));
  return out;
}

/// Identity check of the twisted EZ reduction: full bases when the product
/// is finite, sampled product cells and tensor generators otherwise.
inline CheckReport check_twisted_reduction(const Tcp& t, int max_dim,
                                           int guard, int count,
                                           unsigned seed) {
  TwistedEz tez = twisted_ez(t, guard);
  bool finite = true;
  for (int n = 0; n <= max_dim; ++n)
    if (!t.c_total->finite(n) || !tez.bottom->finite(n)) finite = false;
  if (finite) return check_reduction(tez.reduction, 0, max_dim);

  Sampler sampler(seed);
  std::vector<std::pair<int, Gen>> top, bottom;
  auto ys = sample_space_gens(t.fiber, max_dim, count, sampler);
  auto bs = sample_space_gens(t.base, max_dim, count, sampler);
  for (std::size_t i = 0; i < ys.size() && top.size() < 2 * static_cast<std::size_t>(count); ++i) {
    const auto& [k, y] = ys[i];
    for (const auto& [n, b] : bs) {
      if (k + n > max_dim) continue;
      bottom.emplace_back(k + n, Gen::tensor(y, k, b, n));
      if (k == n && !make_product_simplex(Simplex({}, y, k), Simplex({}, b, n))
                         .degenerate())
        top.emplace_back(n, make_product_simplex(Simplex({}, y, k),
                                                 Simplex({}, b, n))
                                .core);
    }
  }
  return check_reduction_on(tez.reduction, top, bottom);
}

inline std::string homology_text(const std::vector<HomologyGroup>& hs) {
  std::string out;
  for (std::size_t n = 0; n < hs.size(); ++n) {
    if (n) out += ' ';
    out += "H_" + std::to_string(n) + "=" + hs[n].to_string();
  }
  return out;
}

}  // namespace clidetail

/// Entry point of the `tcp` command-line tool.  Exit codes: 0 success,
/// 1 validation failure, 2 guard exceeded, 3 I/O error.
inline int cli_run(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"effective chain complexes for twisted cartesian products"};
  app.require_subcommand(1);

  clidetail::TcpFlags flags;
  int max_dim = 6;
  int guard = kDefaultGuard;
  unsigned seed = 0;
  int samples = 200;
  std::string method = "auto";
  std::string format = "text";

  auto add_tcp_flags = [&](CLI::App* cmd) {
    cmd->add_option("--builtin", flags.builtin,
                    "builtin TCP: klein|torus|hopf|double-cover");
    cmd->add_option("--fiber", flags.fiber, "fiber space (builtin or file)");
    cmd->add_option("--group", flags.group, "structure group: kz1|kzm0:m|file");
    cmd->add_option("--base", flags.base, "base space (builtin or file)");
    cmd->add_option("--twist", flags.twist, "twist file or 'trivial'");
    cmd->add_option("--action", flags.action,
                    "action: trivial|principal|flip|reflection|file");
    cmd->add_option("--max-dim", max_dim, "top homology degree");
    cmd->add_option("--guard", guard, "per-element series guard");
    cmd->add_option("--seed", seed, "sampling seed for OPEN spaces");
    cmd->add_option("--samples", samples, "sample count for OPEN spaces");
  };

  CLI::App* homology = app.add_subcommand("homology", "effective homology of E");
  add_tcp_flags(homology);
  homology->add_option("--method", method,
                       "auto|thm41|cor42|cor44|cor53|direct");
  homology->add_option("--format", format, "text|json");

  CLI::App* check_twist =
      app.add_subcommand("check-twist", "verify the twisting-operator axioms");
  add_tcp_flags(check_twist);

  CLI::App* check_red = app.add_subcommand(
      "check-reduction", "verify the twisted EZ reduction identities");
  add_tcp_flags(check_red);

  CLI::App* star = app.add_subcommand(
      "vf-check-star", "check condition (*) for a builtin vector field");
  std::string field_name = "kz1-eml";
  star->add_option("--builtin", field_name, "vector field: kz1-eml");
  star->add_option("--samples", samples, "sample count");
  star->add_option("--seed", seed, "sampling seed");

  CLI::App* transport = app.add_subcommand(
      "transport", "homology representatives as cycles in C(E)");
  add_tcp_flags(transport);
  transport->add_option("--method", method,
                        "auto|thm41|cor42|cor44|cor53|direct");
  transport->add_option("--format", format, "text|json");

  std::vector<const char*> argv;
  argv.push_back("tcp");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    RouteOptions opt;
    opt.max_dim = max_dim;
    opt.guard = guard;
    opt.seed = seed;
    opt.sample_count = samples;

    if (homology->parsed() || transport->parsed()) {
      clidetail::Resolved r = clidetail::resolve_tcp(flags, guard);
      PipelineResult res = run_route(r.setup.tcp, method_from_string(method),
                                     r.setup.fiber_eq, r.setup.base_eq, opt);
      if (homology->parsed()) {
        if (format == "json") {
          Json j;
          for (std::size_t n = 0; n < res.homology.size(); ++n)
            j["H" + std::to_string(n)] = res.homology[n].to_string();
          j["method"] = res.diagnostics.route;
          j["space"] = r.setup.tcp.name;
          j["max_series_terms"] = res.diagnostics.max_series_terms;
          out << j.dump() << "\n";
        } else {
          out << clidetail::homology_text(res.homology) << "\n";
        }
        return 0;
      }
      // transport
      Json jclasses = Json::array();
      for (int n = 0; n <= opt.max_dim; ++n) {
        for (const auto& c : transport_representatives(res, n)) {
          if (format == "json") {
            Json j;
            j["degree"] = n;
            j["order"] = c.order == 0 ? "free" : c.order.str();
            j["effective_cycle"] = to_string(c.effective_cycle);
            j["cycle"] = to_string(c.total_cycle);
            jclasses.push_back(j);
          } else {
            out << "degree " << n << " "
                << (c.order == 0 ? std::string("free")
                                 : "order " + c.order.str())
                << ": " << to_string(c.total_cycle) << "\n";
          }
        }
      }
      if (format == "json") out << jclasses.dump() << "\n";
      return 0;
    }

    if (check_twist->parsed()) {
      // a fiber is not needed to verify the axioms
      TwistingOperator tau = [&] {
        if (!flags.builtin.empty())
          return builtin_setup(flags.builtin, guard).tcp.tau;
        if (flags.base.empty() || flags.group.empty() || flags.twist.empty())
          throw ValidationError("check-twist needs --base, --group, --twist");
        clidetail::GroupBits g = clidetail::resolve_group(flags.group);
        clidetail::BaseBits b =
            clidetail::resolve_base(flags.base, flags.twist == "trivial");
        return clidetail::resolve_twist(flags.twist, g, b);
      }();
      auto sample =
          clidetail::base_axiom_samples(tau.base, max_dim, samples, seed);
      CheckReport rep = check_twisting(tau, sample);
      out << (rep.ok() ? "ok: " : "FAIL: ") << rep.summary() << "\n";
      return rep.ok() ? 0 : 1;
    }

    if (check_red->parsed()) {
      clidetail::Resolved r = clidetail::resolve_tcp(flags, guard);
      CheckReport rep = clidetail::check_twisted_reduction(
          r.setup.tcp, max_dim, guard, samples, seed);
      out << (rep.ok() ? "ok: " : "FAIL: ") << rep.summary() << "\n";
      return rep.ok() ? 0 : 1;
    }

    if (star->parsed()) {
      if (field_name != "kz1-eml")
        throw ValidationError("unknown vector field: " + field_name);
      GroupPtr G = kz1();
      VectorField V = eml_vector_field(G);
      Sampler sampler(seed);
      std::vector<std::pair<int, Gen>> cells;
      while (static_cast<int>(cells.size()) < samples) {
        int d = 1 + static_cast<int>(sampler.int_in(0, 4));
        cells.emplace_back(d, sampler.kz1_core(d).core);
      }
      CheckReport pairing = check_vector_field(V, cells);
      CheckReport starrep = check_star_condition(V, cells);
      bool okay = pairing.ok() && starrep.ok();
      out << (okay ? "ok: " : "FAIL: ") << "pairing " << pairing.summary()
          << "; (*) " << starrep.summary() << "\n";
      return okay ? 0 : 1;
    }
    return 1;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 3;
  } catch (const NilpotencyGuardExceeded& e) {
    err << "guard exceeded: " << e.what() << "\n";
    return 2;
  } catch (const AdmissibilityGuardExceeded& e) {
    err << "guard exceeded: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tcp
