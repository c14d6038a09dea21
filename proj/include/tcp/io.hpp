#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcp/twisted.hpp"

namespace tcp {

using Json = nlohmann::json;

struct IoError : Error {
  using Error::Error;
};

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

/// Finite simplicial set loaded from the structured format
///   {"name": str,
///    "simplices": {"<dim>": ["id", ...]},
///    "faces": {"<id>": [{"deg": [...], "core": "id"}, ...]}}
/// Faces are listed d0..dn; degeneracy lists are strictly decreasing.
/// Simplicial identities are verified on load.
class LoadedSpace {
 public:
  SpacePtr space;
  std::map<std::string, int> dim_of;  // id -> dimension
  int top_dim = 0;

  Simplex parse_element(const std::string& expr) const {
    auto [degs, core] = split_expr(expr);
    auto it = dim_of.find(core);
    if (it == dim_of.end())
      throw ValidationError(space->name() + ": unknown simplex id '" + core +
                            "'");
    return canonical_degeneracy(degs, Simplex({}, Gen::atom(core), it->second));
  }

  static std::pair<std::vector<int>, std::string> split_expr(
      const std::string& expr) {
    std::istringstream in(expr);
    std::vector<int> degs;
    std::string tok, last;
    while (in >> tok) {
      if (tok.size() > 1 && tok[0] == 's' &&
          tok.find_first_not_of("0123456789", 1) == std::string::npos) {
        degs.push_back(std::stoi(tok.substr(1)));
        continue;
      }
      if (!last.empty())
        throw ValidationError("bad element expression '" + expr + "'");
      last = tok;
    }
    if (last.empty())
      throw ValidationError("bad element expression '" + expr + "'");
    return {degs, last};
  }
};

inline LoadedSpace load_space(const Json& j, const std::string& what) {
  if (!j.contains("name") || !j.contains("simplices") || !j.contains("faces"))
    throw ValidationError(what + ": space file needs name/simplices/faces");
  LoadedSpace out;
  std::string name = j.at("name").get<std::string>();
  std::vector<std::vector<Gen>> cells;
  for (const auto& [dim_str, ids] : j.at("simplices").items()) {
    int d = std::stoi(dim_str);
    if (d < 0) throw ValidationError(what + ": negative dimension");
    if (static_cast<int>(cells.size()) <= d) cells.resize(d + 1);
    for (const auto& id : ids) {
      std::string s = id.get<std::string>();
      if (!out.dim_of.emplace(s, d).second)
        throw ValidationError(what + ": duplicate simplex id '" + s + "'");
      cells[static_cast<std::size_t>(d)].push_back(Gen::atom(s));
    }
  }
  out.top_dim = static_cast<int>(cells.size()) - 1;
  std::map<Gen, std::vector<Simplex>, GenLess> faces;
  for (const auto& [id, lst] : j.at("faces").items()) {
    auto dit = out.dim_of.find(id);
    if (dit == out.dim_of.end())
      throw ValidationError(what + ": faces given for unknown id '" + id + "'");
    int d = dit->second;
    if (static_cast<int>(lst.size()) != d + 1)
      throw ValidationError(what + ": '" + id + "' needs " +
                            std::to_string(d + 1) + " faces, got " +
                            std::to_string(lst.size()));
    std::vector<Simplex> fs;
    for (const auto& f : lst) {
      std::vector<int> degs;
      if (f.contains("deg"))
        for (const auto& v : f.at("deg")) degs.push_back(v.get<int>());
      for (std::size_t i = 1; i < degs.size(); ++i)
        if (degs[i - 1] <= degs[i])
          throw ValidationError(what + ": degeneracy list of a face of '" +
                                id + "' is not strictly decreasing");
      std::string core = f.at("core").get<std::string>();
      auto cit = out.dim_of.find(core);
      if (cit == out.dim_of.end())
        throw ValidationError(what + ": face core '" + core + "' unknown");
      int cd = cit->second;
      if (cd + static_cast<int>(degs.size()) != d - 1)
        throw ValidationError(what + ": face of '" + id +
                              "' has dimension != dim-1");
      fs.emplace_back(std::move(degs), Gen::atom(core), cd);
    }
    faces.emplace(Gen::atom(id), std::move(fs));
  }
  for (int d = 1; d <= out.top_dim; ++d)
    for (const Gen& g : cells[static_cast<std::size_t>(d)])
      if (!faces.count(g))
        throw ValidationError(what + ": missing face list for '" +
                              to_string(g) + "'");
  out.space = table_space(name, std::move(cells), std::move(faces));
  // simplicial identities d_i d_j = d_{j-1} d_i, i < j
  for (int d = 2; d <= out.top_dim; ++d) {
    const auto& cs = out.space->nondegenerate(d);
    for (const Gen& g : *cs) {
      Simplex s = out.space->from_core(g, d);
      for (int jj = 1; jj <= d; ++jj)
        for (int i = 0; i < jj; ++i)
          if (!(out.space->face(i, out.space->face(jj, s)) ==
                out.space->face(jj - 1, out.space->face(i, s))))
            throw ValidationError(what + ": simplicial identity d" +
                                  std::to_string(i) + " d" +
                                  std::to_string(jj) + " fails on '" +
                                  to_string(g) + "'");
    }
  }
  return out;
}

inline LoadedSpace load_space_file(const std::string& path) {
  return load_space(load_json(path), path);
}

/// Finite-per-degree simplicial group: a space file plus unit/mul/inv tables
///   {"unit": {"<dim>": "expr"} | "expr",
///    "mul": {"<dim>": [[a, b, ab], ...]},
///    "inv": {"<dim>": [[a, a^-1], ...]}}
/// Element expressions are "s3 s1 id".  Units above the listed dimensions
/// are degeneracies of the degree-0 unit.
struct LoadedGroup {
  LoadedSpace underlying;
  GroupPtr group;
};

inline LoadedGroup load_group(const Json& j, const std::string& what) {
  LoadedGroup out;
  out.underlying = load_space(j, what);
  const LoadedSpace& ls = out.underlying;
  if (!j.contains("unit") || !j.contains("mul") || !j.contains("inv"))
    throw ValidationError(what + ": group file needs unit/mul/inv");

  auto key = [](const Simplex& s) { return to_string(s); };
  auto mul_tab = std::make_shared<std::map<std::pair<int, std::string>, Simplex>>();
  auto inv_tab = std::make_shared<std::map<std::pair<int, std::string>, Simplex>>();
  for (const auto& [dim_str, rows] : j.at("mul").items()) {
    int d = std::stoi(dim_str);
    for (const auto& row : rows) {
      if (row.size() != 3)
        throw ValidationError(what + ": mul rows are [a, b, ab]");
      Simplex a = ls.parse_element(row[0].get<std::string>());
      Simplex b = ls.parse_element(row[1].get<std::string>());
      Simplex c = ls.parse_element(row[2].get<std::string>());
      if (a.dim() != d || b.dim() != d || c.dim() != d)
        throw ValidationError(what + ": mul row dimension mismatch at " +
                              row[0].get<std::string>());
      mul_tab->emplace(std::make_pair(d, key(a) + " * " + key(b)), c);
    }
  }
  for (const auto& [dim_str, rows] : j.at("inv").items()) {
    int d = std::stoi(dim_str);
    for (const auto& row : rows) {
      if (row.size() != 2)
        throw ValidationError(what + ": inv rows are [a, a^-1]");
      Simplex a = ls.parse_element(row[0].get<std::string>());
      Simplex b = ls.parse_element(row[1].get<std::string>());
      inv_tab->emplace(std::make_pair(d, key(a)), b);
    }
  }
  auto units = std::make_shared<std::map<int, Simplex>>();
  if (j.at("unit").is_string()) {
    units->emplace(0, ls.parse_element(j.at("unit").get<std::string>()));
  } else {
    for (const auto& [dim_str, expr] : j.at("unit").items())
      units->emplace(std::stoi(dim_str),
                     ls.parse_element(expr.get<std::string>()));
  }
  if (!units->count(0) || units->at(0).dim() != 0)
    throw ValidationError(what + ": unit must include a degree-0 element");

  std::string name = ls.space->name();
  auto g = std::make_shared<SimplicialGroup>();
  g->space = ls.space;
  g->mul = [mul_tab, key, name](int n, const Simplex& a, const Simplex& b) {
    auto it = mul_tab->find(std::make_pair(n, key(a) + " * " + key(b)));
    if (it == mul_tab->end())
      throw ValidationError(name + ": mul table missing " + key(a) + " * " +
                            key(b) + " in degree " + std::to_string(n));
    return it->second;
  };
  g->inv = [inv_tab, key, name](int n, const Simplex& a) {
    auto it = inv_tab->find(std::make_pair(n, key(a)));
    if (it == inv_tab->end())
      throw ValidationError(name + ": inv table missing " + key(a) +
                            " in degree " + std::to_string(n));
    return it->second;
  };
  g->unit = [units, name](int n) {
    auto it = units->find(n);
    if (it != units->end()) return it->second;
    Simplex e = units->at(0);
    for (int i = 0; i < n; ++i) e = apply_degeneracy(i, e);
    return e;
  };
  out.group = g;
  return out;
}

inline LoadedGroup load_group_file(const std::string& path) {
  return load_group(load_json(path), path);
}

// ---------------------------------------------------------------------------
// Group element expressions for twist files: integers for K(Z/m,0), bracket
// tuples for K(Z,1), "s.. id" strings for file-loaded groups.

struct GroupCodec {
  enum class Kind { Kzm0, Kz1, File } kind;
  int modulus = 0;                       // for Kzm0
  const LoadedSpace* loaded = nullptr;   // for File

  Simplex parse(const Json& expr, int expected_dim) const {
    switch (kind) {
      case Kind::Kzm0: {
        long long r;
        if (expr.is_number_integer())
          r = expr.get<long long>();
        else
          r = std::stoll(expr.get<std::string>());
        return residue_simplex(((r % modulus) + modulus) % modulus,
                               expected_dim);
      }
      case Kind::Kz1: {
        std::vector<long long> t;
        if (expr.is_array()) {
          for (const auto& v : expr) t.push_back(v.get<long long>());
        } else {
          std::string s = expr.get<std::string>();
          if (s.empty() || s.front() != '[' || s.back() != ']')
            throw ValidationError("K(Z,1) elements are written [a1,...,an]");
          std::string body = s.substr(1, s.size() - 2);
          std::istringstream in(body);
          std::string tok;
          while (std::getline(in, tok, ','))
            if (!tok.empty()) t.push_back(std::stoll(tok));
        }
        Simplex out = kz1_simplex(std::move(t));
        if (out.dim() != expected_dim)
          throw ValidationError("K(Z,1) element has dimension " +
                                std::to_string(out.dim()) + ", expected " +
                                std::to_string(expected_dim));
        return out;
      }
      case Kind::File: {
        Simplex out = loaded->parse_element(expr.get<std::string>());
        if (out.dim() != expected_dim)
          throw ValidationError("group element '" +
                                expr.get<std::string>() +
                                "' has the wrong dimension");
        return out;
      }
    }
    throw Error("unreachable");
  }
};

/// Twist file {"map": {"<base-id>": <group-expr>}} over a finite base.
/// Every nondegenerate base simplex of dimension >= 1 needs an entry.
inline TwistingOperator load_twist(const Json& j, const LoadedSpace& base,
                                   GroupPtr group, const GroupCodec& codec,
                                   const std::string& what) {
  if (!j.contains("map"))
    throw ValidationError(what + ": twist file needs a \"map\" object");
  auto table = std::make_shared<std::map<Gen, Simplex, GenLess>>();
  for (const auto& [id, expr] : j.at("map").items()) {
    auto dit = base.dim_of.find(id);
    if (dit == base.dim_of.end())
      throw ValidationError(what + ": twist maps unknown base id '" + id + "'");
    if (dit->second < 1)
      throw ValidationError(what + ": twist entries need dimension >= 1");
    table->emplace(Gen::atom(id), codec.parse(expr, dit->second - 1));
  }
  for (int d = 1; d <= base.top_dim; ++d) {
    const auto& cells = base.space->nondegenerate(d);
    for (const Gen& g : *cells)
      if (!table->count(g))
        throw ValidationError(what + ": twist missing entry for '" +
                              to_string(g) + "'");
  }
  std::string name = what;
  return TwistingOperator{base.space, std::move(group),
                          [table, name](const Gen& g, int) -> Simplex {
                            auto it = table->find(g);
                            if (it == table->end())
                              throw ValidationError(
                                  name + ": twist has no entry for " +
                                  to_string(g));
                            return it->second;
                          }};
}

/// Action file {"act": {"<dim>": [[y-expr, g-expr, result-expr], ...]}};
/// expressions live in the fiber and group spaces respectively.
inline GroupAction load_action(const Json& j, const LoadedSpace& fiber,
                               const GroupCodec& codec,
                               const std::string& what) {
  if (!j.contains("act"))
    throw ValidationError(what + ": action file needs an \"act\" object");
  auto table = std::make_shared<std::map<std::pair<int, std::string>, Simplex>>();
  for (const auto& [dim_str, rows] : j.at("act").items()) {
    int d = std::stoi(dim_str);
    for (const auto& row : rows) {
      if (row.size() != 3)
        throw ValidationError(what + ": act rows are [y, g, y.g]");
      Simplex y = fiber.parse_element(row[0].get<std::string>());
      Simplex g = codec.parse(row[1], d);
      Simplex r = fiber.parse_element(row[2].get<std::string>());
      if (y.dim() != d || r.dim() != d)
        throw ValidationError(what + ": act row dimension mismatch");
      table->emplace(std::make_pair(d, to_string(y) + " . " + to_string(g)), r);
    }
  }
  std::string name = what;
  return GroupAction{
      "file", [table, name](int n, const Simplex& y, const Simplex& g) {
        auto it = table->find(std::make_pair(n, to_string(y) + " . " + to_string(g)));
        if (it == table->end())
          throw ValidationError(name + ": action table missing " +
                                to_string(y) + " . " + to_string(g) +
                                " in degree " + std::to_string(n));
        return it->second;
      }};
}

}  // namespace tcp
