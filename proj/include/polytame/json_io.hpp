#pragma once

// JSON interchange for polytopes, ring elements, homomorphisms, discrete
// data and certificates. Parsing failures raise InputError.

#include <json.hpp>

#include <string>
#include <vector>

#include "polytame/decomposition_engine.hpp"
#include "polytame/discrete_form.hpp"
#include "polytame/errors.hpp"
#include "polytame/tame_calculus.hpp"

namespace polytame::json_io {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Int to_int_checked(const json& j) {
  if (!j.is_number_integer()) throw InputError("expected an integer, got " + j.dump());
  return j.get<Int>();
}

}  // namespace detail

/// Indented rendering in which arrays of scalars stay on one line.
inline void pretty_into(const json& j, std::string& out, int indent) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  auto scalar_array = [](const json& a) {
    return std::all_of(a.begin(), a.end(), [](const json& x) { return x.is_primitive(); });
  };
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + json(it.key()).dump() + ": ";
      pretty_into(it.value(), out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty_into(j[i], out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

inline std::string pretty(const json& j) {
  std::string out;
  pretty_into(j, out, 0);
  return out + "\n";
}

inline json to_json(const IntPoint& p) { return json(p.coords); }

inline IntPoint point_from_json(const json& j, std::optional<std::size_t> dim = std::nullopt) {
  if (!j.is_array()) throw InputError("expected a point (array of integers), got " + j.dump());
  IntPoint p;
  for (auto& x : j) p.coords.push_back(detail::to_int_checked(x));
  if (dim && p.dim() != *dim)
    throw InputError("point " + p.str() + " has dimension " + std::to_string(p.dim()) + ", expected " +
                     std::to_string(*dim));
  return p;
}

inline json points_json(const std::vector<IntPoint>& pts) {
  json a = json::array();
  for (auto& p : pts) a.push_back(to_json(p));
  return a;
}

inline json to_json(const Rational& c) {
  if (c.get_den() == 1 && c.get_num().fits_slong_p()) return json(c.get_num().get_si());
  return json(c.get_str());
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(big(j.get<Int>()));
  if (j.is_string()) {
    Rational r;
    if (r.set_str(j.get<std::string>(), 10) != 0 || r.get_den() == 0)
      throw InputError("malformed coefficient '" + j.get<std::string>() + "'");
    r.canonicalize();
    return r;
  }
  throw InputError("coefficient must be an integer or a \"num/den\" string, got " + j.dump());
}

/// {"dim": d, "vertices": [[...], ...]}; extra fields are ignored on input.
inline json to_json(const LatticePolytope& P) {
  json j;
  j["dim"] = P.ambient_dim();
  j["vertices"] = points_json(P.vertices());
  return j;
}

inline json polytope_details(const LatticePolytope& P) {
  json j = to_json(P);
  j["affine_dim"] = P.dim();
  j["lattice_points"] = points_json(P.lattice_points());
  json facets = json::array();
  for (auto& f : P.facets()) facets.push_back({{"normal", f.normal}, {"offset", f.offset}});
  j["facets"] = facets;
  json eqs = json::array();
  for (auto& e : P.equations()) eqs.push_back({{"normal", e.normal}, {"value", e.value}});
  j["equations"] = eqs;
  return j;
}

inline LatticePolytope polytope_from_json(const json& j) {
  const json& d = detail::at(j, "dim");
  if (!d.is_number_integer() || d.get<Int>() < 0) throw InputError("polytope 'dim' must be a nonnegative integer");
  const std::size_t dim = d.get<std::size_t>();
  const json& vs = detail::at(j, "vertices");
  if (!vs.is_array()) throw InputError("polytope 'vertices' must be an array");
  std::vector<IntPoint> pts;
  for (auto& v : vs) pts.push_back(point_from_json(v, dim));
  return hull_or_empty(pts, dim);
}

/// Terms of an element; the degree is implied by context.
inline json terms_json(const RingElement& e) {
  json a = json::array();
  for (auto& [m, c] : e.terms()) a.push_back({{"coeff", to_json(c)}, {"exp", m.exponents}});
  return a;
}

inline RingElement terms_from_json(const json& j, Field k, std::size_t nvars, Int degree) {
  if (!j.is_array()) throw InputError("'terms' must be an array");
  RingElement r(k, nvars);
  for (auto& t : j) {
    IntPoint e = point_from_json(detail::at(t, "exp"), nvars);
    Rational c = rational_from_json(detail::at(t, "coeff"));
    Monomial m{e.coords, degree};
    if (sgn(r.coefficient(m)) != 0) throw InputError("duplicate exponent " + e.str() + " in a term list");
    r.add_term(m, c);
  }
  return r;
}

inline json element_json(const RingElement& e) {
  return {{"field", e.field().name()}, {"nvars", e.nvars()}, {"terms", terms_json(e)}};
}

inline RingElement element_from_json(const json& j, Int degree) {
  Field k = Field::parse(detail::at(j, "field").get<std::string>());
  const json& n = detail::at(j, "nvars");
  if (!n.is_number_integer() || n.get<Int>() < 0) throw InputError("'nvars' must be a nonnegative integer");
  return terms_from_json(detail::at(j, "terms"), k, n.get<std::size_t>(), degree);
}

inline Field field_from_json(const json& j) {
  const json& f = detail::at(j, "field");
  if (!f.is_string()) throw InputError("'field' must be a string");
  return Field::parse(f.get<std::string>());
}

inline json to_json(const GradedHom& f) {
  json j;
  j["domain"] = to_json(f.dom());
  j["codomain"] = to_json(f.cod());
  j["field"] = f.field().name();
  json imgs = json::array();
  for (std::size_t i = 0; i < f.images().size(); ++i)
    imgs.push_back({{"point", to_json(f.dom().lattice_points()[i])}, {"terms", terms_json(f.image(i))}});
  j["images"] = imgs;
  return j;
}

inline GradedHom hom_from_json(const json& j) {
  auto dom = polytope_from_json(detail::at(j, "domain"));
  auto cod = polytope_from_json(detail::at(j, "codomain"));
  Field k = field_from_json(j);
  const json& imgs = detail::at(j, "images");
  if (!imgs.is_array()) throw InputError("'images' must be an array");
  std::vector<std::optional<RingElement>> table(dom.num_points());
  for (auto& entry : imgs) {
    IntPoint x = point_from_json(detail::at(entry, "point"), dom.ambient_dim());
    auto i = dom.index_of(x);
    if (!i) throw InputError("image given for " + x.str() + ", which is not a lattice point of the domain");
    if (table[*i]) throw InputError("duplicate image for " + x.str());
    table[*i] = terms_from_json(detail::at(entry, "terms"), k, cod.ambient_dim(), 1);
  }
  std::vector<RingElement> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!table[i]) throw InputError("missing image for " + dom.lattice_points()[i].str());
    out.push_back(*table[i]);
  }
  try {
    return GradedHom(dom, cod, k, std::move(out));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

inline json report_json(const HomReport& r) {
  json j;
  j["ok"] = r.ok;
  if (!r.ok) {
    json fs = json::array();
    for (auto& f : r.failures) {
      json e = {{"kind", f.kind}};
      if (f.kind == "relation")
        e["vector"] = f.relation;
      else
        e["points"] = points_json(f.points);
      fs.push_back(e);
    }
    j["failures"] = fs;
  }
  return j;
}

inline json to_json(const DiscreteHom& d) {
  json j;
  j["domain"] = to_json(d.domain);
  j["codomain"] = to_json(d.codomain);
  j["field"] = d.field.name();
  json irr = json::array();
  for (auto& p : d.irreducibles) irr.push_back({{"terms", terms_json(p)}});
  j["irreducibles"] = irr;
  json rows = json::array();
  for (std::size_t i = 0; i < d.alpha.size(); ++i)
    rows.push_back({{"point", to_json(d.domain.lattice_points()[i])},
                    {"exponents", d.alpha[i]},
                    {"unit", to_json(d.units[i])}});
  j["alpha"] = rows;
  return j;
}

inline DiscreteHom discrete_from_json(const json& j) {
  DiscreteHom d{polytope_from_json(detail::at(j, "domain")), polytope_from_json(detail::at(j, "codomain")),
                field_from_json(j), {}, {}, {}};
  for (auto& p : detail::at(j, "irreducibles"))
    d.irreducibles.push_back(terms_from_json(detail::at(p, "terms"), d.field, d.codomain.ambient_dim(), 0));
  d.alpha.assign(d.domain.num_points(), {});
  d.units.assign(d.domain.num_points(), 0);
  std::vector<bool> seen(d.domain.num_points(), false);
  for (auto& row : detail::at(j, "alpha")) {
    auto x = point_from_json(detail::at(row, "point"), d.domain.ambient_dim());
    auto i = d.domain.index_of(x);
    if (!i || seen[*i]) throw InputError("bad or duplicate alpha row for " + x.str());
    seen[*i] = true;
    for (auto& e : detail::at(row, "exponents")) d.alpha[*i].push_back(detail::to_int_checked(e));
    d.units[*i] = d.field.normalize(rational_from_json(detail::at(row, "unit")));
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InputError("missing alpha rows");
  return d;
}

inline json to_json(const LatticeMap& m) { return {{"matrix", m.matrix}, {"offset", m.offset}}; }

inline LatticeMap lattice_map_from_json(const json& j) {
  LatticeMap m;
  for (auto& row : detail::at(j, "matrix")) {
    IntVector r;
    for (auto& x : row) r.push_back(detail::to_int_checked(x));
    m.matrix.push_back(std::move(r));
  }
  for (auto& x : detail::at(j, "offset")) m.offset.push_back(detail::to_int_checked(x));
  return m;
}

inline json to_json(const CertPtr& c) {
  json j;
  j["kind"] = c->kind();
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, cert::IdentityK>) {
          j["field"] = n.field.name();
          j["codomain"] = to_json(n.codomain);
          j["domain_ambient"] = n.domain_ambient;
        } else if constexpr (std::is_same_v<N, cert::MonomialMap>) {
          j["field"] = n.field.name();
          j["domain"] = to_json(n.dom);
          j["codomain"] = to_json(n.cod);
          json pm = json::array();
          for (std::size_t i = 0; i < n.point_map.size(); ++i)
            pm.push_back({{"point", to_json(n.dom.lattice_points().at(i))}, {"image", to_json(n.point_map[i])}});
          j["point_map"] = pm;
        } else if constexpr (std::is_same_v<N, cert::AssumedTame>) {
          j["reason"] = n.reason;
          j["hom"] = to_json(n.hom);
        } else if constexpr (std::is_same_v<N, cert::FaceRetraction>) {
          j["field"] = n.field.name();
          j["polytope"] = to_json(n.polytope);
          j["face"] = points_json(n.face_points);
        } else if constexpr (std::is_same_v<N, cert::FreeExtension>) {
          j["apex"] = to_json(n.apex);
          j["apex_image"] = element_json(n.apex_image);
          j["base"] = to_json(n.base);
        } else if constexpr (std::is_same_v<N, cert::MinkowskiStar>) {
          j["working_target"] = to_json(n.working_target);
          j["left"] = to_json(n.left);
          j["right"] = to_json(n.right);
        } else if constexpr (std::is_same_v<N, cert::HomotheticBlowup>) {
          j["c"] = n.c;
          j["child"] = to_json(n.child);
        } else if constexpr (std::is_same_v<N, cert::PolytopeChange>) {
          if (n.new_dom) j["new_domain"] = to_json(*n.new_dom);
          if (n.dom_map) j["domain_map"] = to_json(*n.dom_map);
          if (n.new_cod) j["new_codomain"] = to_json(*n.new_cod);
          if (n.cod_map) j["codomain_map"] = to_json(*n.cod_map);
          j["child"] = to_json(n.child);
        } else if constexpr (std::is_same_v<N, cert::Compose>) {
          j["outer"] = to_json(n.outer);
          j["inner"] = to_json(n.inner);
        }
      },
      c->node);
  return j;
}

inline CertPtr cert_from_json(const json& j, const std::string& path = "") {
  const json& kj = detail::at(j, "kind");
  if (!kj.is_string()) throw InputError(path + ": 'kind' must be a string");
  const std::string kind = kj.get<std::string>();
  const std::string here = path.empty() ? kind : path + ":" + kind;
  try {
    if (kind == "identity_k") {
      std::size_t amb = j.contains("domain_ambient") ? j.at("domain_ambient").get<std::size_t>() : 0;
      auto cod = j.contains("codomain") ? polytope_from_json(j.at("codomain")) : LatticePolytope::empty(0);
      return make_cert(cert::IdentityK{field_from_json(j), cod, amb});
    }
    if (kind == "monomial_map") {
      auto dom = polytope_from_json(detail::at(j, "domain"));
      auto cod = polytope_from_json(detail::at(j, "codomain"));
      std::vector<std::optional<IntPoint>> pm(dom.num_points());
      for (auto& e : detail::at(j, "point_map")) {
        auto x = point_from_json(detail::at(e, "point"), dom.ambient_dim());
        auto i = dom.index_of(x);
        if (!i || pm[*i]) throw InputError("bad or duplicate point_map entry for " + x.str());
        pm[*i] = point_from_json(detail::at(e, "image"), cod.ambient_dim());
      }
      std::vector<IntPoint> table;
      for (auto& p : pm) {
        if (!p) throw InputError("point_map does not cover the domain");
        table.push_back(*p);
      }
      return make_cert(cert::MonomialMap{dom, cod, field_from_json(j), table});
    }
    if (kind == "assumed_tame") {
      std::string reason = j.contains("reason") ? j.at("reason").get<std::string>() : kAssumedReason;
      return make_cert(cert::AssumedTame{hom_from_json(detail::at(j, "hom")), reason});
    }
    if (kind == "face_retraction") {
      auto P = polytope_from_json(detail::at(j, "polytope"));
      std::vector<IntPoint> face;
      for (auto& p : detail::at(j, "face")) face.push_back(point_from_json(p, P.ambient_dim()));
      return make_cert(cert::FaceRetraction{P, face, field_from_json(j)});
    }
    if (kind == "free_extension") {
      auto base = cert_from_json(detail::at(j, "base"), here + "/base");
      return make_cert(cert::FreeExtension{base, point_from_json(detail::at(j, "apex")),
                                           element_from_json(detail::at(j, "apex_image"), 1)});
    }
    if (kind == "minkowski_star") {
      return make_cert(cert::MinkowskiStar{cert_from_json(detail::at(j, "left"), here + "/left"),
                                           cert_from_json(detail::at(j, "right"), here + "/right"),
                                           polytope_from_json(detail::at(j, "working_target"))});
    }
    if (kind == "homothetic_blowup") {
      return make_cert(cert::HomotheticBlowup{cert_from_json(detail::at(j, "child"), here + "/child"),
                                              detail::to_int_checked(detail::at(j, "c"))});
    }
    if (kind == "polytope_change") {
      cert::PolytopeChange n;
      n.child = cert_from_json(detail::at(j, "child"), here + "/child");
      if (j.contains("new_domain")) n.new_dom = polytope_from_json(j.at("new_domain"));
      if (j.contains("domain_map")) n.dom_map = lattice_map_from_json(j.at("domain_map"));
      if (j.contains("new_codomain")) n.new_cod = polytope_from_json(j.at("new_codomain"));
      if (j.contains("codomain_map")) n.cod_map = lattice_map_from_json(j.at("codomain_map"));
      return make_cert(std::move(n));
    }
    if (kind == "compose") {
      return make_cert(cert::Compose{cert_from_json(detail::at(j, "outer"), here + "/outer"),
                                     cert_from_json(detail::at(j, "inner"), here + "/inner")});
    }
  } catch (const InputError& e) {
    std::string msg = e.what();
    if (msg.rfind(here, 0) == 0) throw;
    throw InputError(here + ": " + msg);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(here + ": " + e.what());
  }
  throw InputError(here + ": unknown certificate kind '" + kind + "'");
}

}  // namespace polytame::json_io
