#include "stable/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace stable {

namespace {

[[noreturn]] void fail(const std::string& msg, const std::string& path) {
  throw PathError(ErrorKind::ValidationError, msg, path);
}

double number_at(const Json& j, const std::string& path) {
  if (!j.is_number()) fail("expected a number", path);
  return j.get<double>();
}

std::vector<double> number_list(const Json& j, const std::string& path) {
  if (!j.is_array()) fail("expected an array of numbers", path);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number_at(j[i], path + "/" + std::to_string(i)));
  return out;
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'", path);
  return j[key];
}

}  // namespace

MeasureAlgebra algebra_from_json(const Json& j, const std::string& path) {
  if (j.is_object() && j.contains("uniform")) {
    const Json& u = j["uniform"];
    if (!u.is_number_unsigned() || u.get<std::uint64_t>() == 0)
      fail("'uniform' must be a positive atom count", path + "/uniform");
    return MeasureAlgebra::uniform(u.get<std::size_t>());
  }
  if (j.is_object() && j.contains("probs")) {
    try {
      return MeasureAlgebra(number_list(j["probs"], path + "/probs"));
    } catch (const StableError& e) {
      fail(e.what(), path + "/probs");
    }
  }
  fail("algebra needs 'probs' or 'uniform'", path);
}

Event event_from_json(const Json& j, const MeasureAlgebra& alg,
                      const std::string& path) {
  if (!j.is_array()) fail("event must be an array of atom indices", path);
  std::vector<std::size_t> atoms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    if (!j[i].is_number_unsigned()) fail("atom index must be a nonnegative integer", p);
    const std::size_t a = j[i].get<std::size_t>();
    if (a >= alg.atoms()) fail("atom index out of range", p);
    atoms.push_back(a);
  }
  return Event(alg, atoms);
}

Partition partition_from_json(const Json& j, const MeasureAlgebra& alg,
                              const std::string& path) {
  if (!j.is_array()) fail("partition must be an array of blocks", path);
  std::vector<Event> blocks;
  for (std::size_t k = 0; k < j.size(); ++k)
    blocks.push_back(event_from_json(j[k], alg, path + "/" + std::to_string(k)));
  try {
    return Partition(alg, std::move(blocks));
  } catch (const StableError& e) {
    fail(e.what(), path);
  }
}

L0Scalar scalar_from_json(const Json& j, const MeasureAlgebra& alg,
                          const std::string& path) {
  try {
    if (j.is_number()) return L0Scalar::constant(alg, j.get<double>());
    if (j.is_array()) {
      auto v = number_list(j, path);
      if (v.size() != alg.atoms()) fail("scalar needs one value per atom", path);
      return L0Scalar(alg, std::move(v));
    }
  } catch (const PathError&) {
    throw;
  } catch (const StableError& e) {
    fail(e.what(), path);
  }
  fail("scalar must be a number or a per-atom array", path);
}

StepNatural natural_from_json(const Json& j, const MeasureAlgebra& alg,
                              const std::string& path) {
  auto check = [&](const Json& e, const std::string& p) {
    if (!e.is_number_integer() || e.get<std::int64_t>() < 1)
      fail("step natural entries must be integers >= 1", p);
    return e.get<std::int64_t>();
  };
  try {
    if (j.is_number_integer())
      return StepNatural::constant(alg, check(j, path));
    if (j.is_array()) {
      if (j.size() != alg.atoms()) fail("step natural needs one value per atom", path);
      std::vector<std::int64_t> v;
      for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(check(j[i], path + "/" + std::to_string(i)));
      return StepNatural(alg, std::move(v));
    }
  } catch (const PathError&) {
    throw;
  } catch (const StableError& e) {
    fail(e.what(), path);
  }
  fail("step natural must be an integer or a per-atom array", path);
}

L0Vector vector_from_json(const Json& j, const MeasureAlgebra& alg,
                          const std::string& path) {
  if (!j.is_object()) fail("vector must be an object with 'dim'", path);
  const Json& dj = field(j, "dim", path);
  if (!dj.is_number_unsigned() || dj.get<std::uint64_t>() == 0)
    fail("'dim' must be a positive integer", path + "/dim");
  const std::size_t dim = dj.get<std::size_t>();
  try {
    if (j.contains("constant")) {
      auto p = number_list(j["constant"], path + "/constant");
      if (p.size() != dim) fail("'constant' length must equal dim", path + "/constant");
      return L0Vector::constant(alg, p);
    }
    const Json& pa = field(j, "per_atom", path);
    if (!pa.is_array() || pa.size() != alg.atoms())
      fail("'per_atom' needs one point per atom", path + "/per_atom");
    std::vector<double> flat;
    flat.reserve(alg.atoms() * dim);
    for (std::size_t a = 0; a < pa.size(); ++a) {
      auto p = number_list(pa[a], path + "/per_atom/" + std::to_string(a));
      if (p.size() != dim)
        fail("point length must equal dim", path + "/per_atom/" + std::to_string(a));
      flat.insert(flat.end(), p.begin(), p.end());
    }
    return L0Vector(alg, dim, std::move(flat));
  } catch (const PathError&) {
    throw;
  } catch (const StableError& e) {
    fail(e.what(), path);
  }
}

namespace {

AtomRep atom_rep_from_json(const Json& j, std::size_t dim, const std::string& path,
                           bool lenient) {
  AtomRep rep;
  const Json* list = nullptr;
  if (j.is_object() && j.contains("points")) {
    rep.kind = RepKind::Points;
    list = &j["points"];
  } else if (j.is_object() && j.contains("polytope")) {
    rep.kind = RepKind::Polytope;
    list = &j["polytope"];
  } else {
    fail("per-atom set needs 'points' or 'polytope'", path);
  }
  if (!list->is_array()) fail("point list must be an array", path);
  for (std::size_t i = 0; i < list->size(); ++i) {
    auto p = number_list((*list)[i], path + "/" + std::to_string(i));
    if (p.size() != dim) fail("point length must equal dim", path + "/" + std::to_string(i));
    rep.flat.insert(rep.flat.end(), p.begin(), p.end());
  }
  if (!lenient && rep.flat.empty()) fail("per-atom set must be non-empty", path);
  return rep;
}

}  // namespace

StableSet set_from_json(const Json& j, const MeasureAlgebra& alg,
                        const std::string& path, bool lenient) {
  if (!j.is_object()) fail("set must be an object with 'dim'", path);
  const Json& dj = field(j, "dim", path);
  if (!dj.is_number_unsigned() || dj.get<std::uint64_t>() == 0)
    fail("'dim' must be a positive integer", path + "/dim");
  const std::size_t dim = dj.get<std::size_t>();
  std::vector<AtomRep> reps;
  if (j.contains("constant")) {
    AtomRep rep = atom_rep_from_json(j["constant"], dim, path + "/constant", lenient);
    reps.assign(alg.atoms(), rep);
  } else {
    const Json& pa = field(j, "per_atom", path);
    if (!pa.is_array() || pa.size() != alg.atoms())
      fail("'per_atom' needs one entry per atom", path + "/per_atom");
    for (std::size_t a = 0; a < pa.size(); ++a)
      reps.push_back(atom_rep_from_json(pa[a], dim, path + "/per_atom/" + std::to_string(a),
                                        lenient));
  }
  try {
    if (lenient) return StableSet::unchecked(alg, dim, std::move(reps));
    return StableSet(alg, dim, std::move(reps));
  } catch (const StableError& e) {
    fail(e.what(), path);
  }
}

Seminorm seminorm_from_json(const Json& j, const MeasureAlgebra& alg,
                            const std::string& path) {
  if (!j.is_object()) fail("seminorm must be an object with 'kind'", path);
  const Json& kj = field(j, "kind", path);
  if (!kj.is_string()) fail("'kind' must be a string", path + "/kind");
  const std::string kind = kj.get<std::string>();
  try {
    if (kind == "weighted") {
      const Json& dj = field(j, "dim", path);
      if (!dj.is_number_unsigned()) fail("'dim' must be an integer", path + "/dim");
      const std::size_t dim = dj.get<std::size_t>();
      const Json& ej = field(j, "exponent", path);
      double expo = 0.0;
      if (ej.is_string() && ej.get<std::string>() == "inf")
        expo = std::numeric_limits<double>::infinity();
      else if (ej.is_number())
        expo = ej.get<double>();
      else
        fail("'exponent' must be 1, 2 or \"inf\"", path + "/exponent");
      const Json& wj = field(j, "weights", path);
      std::vector<double> weights;
      if (wj.is_array() && !wj.empty() && wj[0].is_array()) {
        for (std::size_t a = 0; a < wj.size(); ++a) {
          auto row = number_list(wj[a], path + "/weights/" + std::to_string(a));
          weights.insert(weights.end(), row.begin(), row.end());
        }
      } else {
        weights = number_list(wj, path + "/weights");
      }
      return Seminorm::weighted(alg, dim, std::move(weights), expo);
    }
    if (kind == "pairing")
      return Seminorm::pairing(vector_from_json(field(j, "y", path), alg, path + "/y"));
    if (kind == "cond_lp") {
      const Json& dj = field(j, "dim", path);
      if (!dj.is_number_unsigned()) fail("'dim' must be an integer", path + "/dim");
      return Seminorm::conditional_lp(
          alg, dj.get<std::size_t>(),
          partition_from_json(field(j, "partition", path), alg, path + "/partition"),
          number_at(field(j, "p", path), path + "/p"));
    }
    if (kind == "sup" || kind == "concat") {
      const Json& mj = field(j, "members", path);
      if (!mj.is_array()) fail("'members' must be an array", path + "/members");
      std::vector<Seminorm> members;
      for (std::size_t i = 0; i < mj.size(); ++i)
        members.push_back(
            seminorm_from_json(mj[i], alg, path + "/members/" + std::to_string(i)));
      if (kind == "sup") return Seminorm::sup_hull(std::move(members));
      return Seminorm::concat(
          partition_from_json(field(j, "partition", path), alg, path + "/partition"),
          std::move(members));
    }
  } catch (const PathError&) {
    throw;
  } catch (const StableError& e) {
    fail(e.what(), path);
  }
  fail("unknown seminorm kind '" + kind + "'", path + "/kind");
}

StableFunction function_from_json(const Json& j, const MeasureAlgebra& alg,
                                  const std::string& path) {
  if (!j.is_object()) fail("function must be an object with 'builtin'", path);
  const Json& bj = field(j, "builtin", path);
  if (!bj.is_string()) fail("'builtin' must be a string", path + "/builtin");
  const Json& dj = field(j, "dim", path);
  if (!dj.is_number_unsigned() || dj.get<std::uint64_t>() == 0)
    fail("'dim' must be a positive integer", path + "/dim");
  std::vector<double> params;
  if (j.contains("params")) params = number_list(j["params"], path + "/params");
  try {
    return StableFunction::builtin(alg, dj.get<std::size_t>(),
                                   bj.get<std::string>(), params);
  } catch (const StableError& e) {
    fail(e.what(), path);
  }
}

Json to_json(const MeasureAlgebra& alg) { return Json{{"probs", alg.probs()}}; }

Json to_json(const Event& e) { return Json(e.atom_list()); }

Json to_json(const Partition& p) {
  Json out = Json::array();
  for (const Event& b : p.blocks()) out.push_back(to_json(b));
  return out;
}

Json to_json(const L0Scalar& x) {
  std::vector<double> v(x.algebra().atoms());
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = x[a];
  return Json(v);
}

Json to_json(const StepNatural& n) {
  std::vector<std::int64_t> v(n.algebra().atoms());
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = n[a];
  return Json(v);
}

Json to_json(const L0Vector& x) {
  Json pa = Json::array();
  for (std::size_t a = 0; a < x.algebra().atoms(); ++a) {
    auto p = x.point(a);
    pa.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return Json{{"dim", x.dim()}, {"per_atom", pa}};
}

Json to_json(const StableSet& k) {
  Json pa = Json::array();
  for (std::size_t a = 0; a < k.atoms(); ++a) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < k.count(a); ++i) {
      auto p = k.point(a, i);
      pts.push_back(std::vector<double>(p.begin(), p.end()));
    }
    pa.push_back(k.rep(a).kind == RepKind::Points ? Json{{"points", pts}}
                                                  : Json{{"polytope", pts}});
  }
  return Json{{"dim", k.dim()}, {"per_atom", pa}};
}

Json to_json(const ModuleMap& m) {
  Json pa = Json::array();
  for (std::size_t a = 0; a < m.algebra().atoms(); ++a) {
    std::vector<double> row;
    row.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.entry(a, i, j));
    pa.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"per_atom", pa}};
}

namespace {

template <class T>
Json family_to_json(const StableFamily<T>& fam) {
  Json blocks = Json::array(), items = Json::array();
  for (std::size_t k = 0; k < fam.block_count(); ++k) {
    blocks.push_back(to_json(fam.block(k)));
    Json row = Json::array();
    for (const T& item : fam.items(k)) row.push_back(to_json(item));
    items.push_back(row);
  }
  return Json{{"counts", fam.counts()}, {"blocks", blocks}, {"items", items}};
}

}  // namespace

Json to_json(const StableFamily<L0Vector>& fam) { return family_to_json(fam); }
Json to_json(const StableFamily<L0Scalar>& fam) { return family_to_json(fam); }

Json to_json(const Seminorm& p) {
  switch (p.kind()) {
    case Seminorm::Kind::Weighted: {
      Json w = Json::array();
      const std::size_t dim = p.dim();
      for (std::size_t a = 0; a < p.algebra().atoms(); ++a)
        w.push_back(std::vector<double>(p.weights().begin() + a * dim,
                                        p.weights().begin() + (a + 1) * dim));
      Json e;
      if (p.exponent() == std::numeric_limits<double>::infinity())
        e = "inf";
      else
        e = p.exponent();
      return Json{{"kind", "weighted"}, {"dim", dim}, {"weights", w}, {"exponent", e}};
    }
    case Seminorm::Kind::Pairing:
      return Json{{"kind", "pairing"}, {"y", to_json(p.pairing_vector())}};
    case Seminorm::Kind::CondLp:
      return Json{{"kind", "cond_lp"},
                  {"dim", p.dim()},
                  {"p", p.exponent()},
                  {"partition", to_json(p.parts())}};
    case Seminorm::Kind::SupHull: {
      Json ms = Json::array();
      for (const Seminorm& m : p.members()) ms.push_back(to_json(m));
      return Json{{"kind", "sup"}, {"members", ms}};
    }
    case Seminorm::Kind::Concat: {
      Json ms = Json::array();
      for (const Seminorm& m : p.members()) ms.push_back(to_json(m));
      return Json{{"kind", "concat"},
                  {"partition", to_json(p.parts())},
                  {"members", ms}};
    }
  }
  return Json();
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object())
    throw PathError(ErrorKind::ValidationError, "scenario must be an object", "/");
  Scenario sc{algebra_from_json(field(j, "algebra", "/"), "/algebra"),
              {}, {}, {}, {}, {}, Json::object()};
  auto each = [&](const char* key, auto&& add) {
    if (!j.contains(key)) return;
    const Json& sec = j[key];
    if (!sec.is_object())
      fail(std::string("'") + key + "' must be an object of named entries",
           std::string("/") + key);
    for (const auto& [name, val] : sec.items())
      add(name, val, std::string("/") + key + "/" + name);
  };
  each("sets", [&](const std::string& n, const Json& v, const std::string& p) {
    sc.sets.emplace(n, set_from_json(v, sc.algebra, p, /*lenient=*/true));
  });
  each("vectors", [&](const std::string& n, const Json& v, const std::string& p) {
    sc.vectors.emplace(n, vector_from_json(v, sc.algebra, p));
  });
  each("scalars", [&](const std::string& n, const Json& v, const std::string& p) {
    sc.scalars.emplace(n, scalar_from_json(v, sc.algebra, p));
  });
  each("functions", [&](const std::string& n, const Json& v, const std::string& p) {
    sc.functions.emplace(n, function_from_json(v, sc.algebra, p));
  });
  each("seminorm_families",
       [&](const std::string& n, const Json& v, const std::string& p) {
         if (!v.is_object()) fail("family must be an object", p);
         const Json& mj = field(v, "members", p);
         if (!mj.is_array() || mj.empty())
           fail("'members' must be a non-empty array", p + "/members");
         std::vector<Seminorm> members;
         for (std::size_t i = 0; i < mj.size(); ++i)
           members.push_back(seminorm_from_json(
               mj[i], sc.algebra, p + "/members/" + std::to_string(i)));
         bool sep = v.value("separated", false);
         try {
           sc.families.emplace(n, SeminormFamily(std::move(members), sep));
         } catch (const StableError& e) {
           fail(e.what(), p);
         }
       });
  if (j.contains("command")) {
    if (!j["command"].is_object())
      fail("'command' must be an object", "/command");
    sc.command = j["command"];
  }
  return sc;
}

Scenario load_scenario(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in)
    throw PathError(ErrorKind::ParseError, "cannot open scenario file", file_path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw PathError(ErrorKind::ParseError, e.what(), file_path);
  }
  return scenario_from_json(j);
}

}  // namespace stable
