#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polytame/polytame.hpp"

using namespace polytame;
using json_io::json;

namespace {

std::size_t max_points() {
  const char* env = std::getenv("POLYTAME_MAX_POINTS");
  if (!env || !*env) return 200;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v <= 0) throw InputError("POLYTAME_MAX_POINTS must be a positive integer");
  return static_cast<std::size_t>(v);
}

const LatticePolytope& guarded(const LatticePolytope& P, const char* what) {
  if (P.num_points() > max_points())
    throw DomainError(std::string(what) + " has " + std::to_string(P.num_points()) +
                      " lattice points, above POLYTAME_MAX_POINTS=" + std::to_string(max_points()));
  return P;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

LatticePolytope read_polytope(const std::string& path) {
  return guarded(json_io::polytope_from_json(read_json(path)), path.c_str());
}

GradedHom read_hom(const std::string& path) {
  auto f = json_io::hom_from_json(read_json(path));
  guarded(f.dom(), "domain");
  guarded(f.cod(), "codomain");
  return f;
}

struct Output {
  std::string path;
  void write(const json& j) const {
    const std::string text = json_io::pretty(j);
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
  }
};

int report_error(const char* kind, const std::string& message, int code) {
  json e = {{"error", kind}, {"message", message}};
  std::cerr << e.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polytame: polytopal rings, graded homomorphisms and tame decompositions"};
  app.require_subcommand(1);
  app.fallthrough();  // inherited, so -o works after any subcommand
  Output out;
  app.add_option("-o,--output", out.path, "write the result here instead of stdout");

  int exit_code = 0;
  std::function<void()> action;

  // polytope
  auto* poly = app.add_subcommand("polytope", "build and inspect lattice polytopes");
  poly->require_subcommand(1);
  std::string a_path, b_path;
  Int c = 1;

  auto* hull_cmd = poly->add_subcommand("hull", "convex hull of the listed points");
  hull_cmd->add_option("points", a_path, "JSON {dim, vertices}, vertices may be any points")->required();
  hull_cmd->callback([&] { action = [&] { out.write(json_io::polytope_details(read_polytope(a_path))); }; });

  auto* join_cmd = poly->add_subcommand("join", "join of two polytopes");
  join_cmd->add_option("P", a_path)->required();
  join_cmd->add_option("Q", b_path)->required();
  join_cmd->callback([&] {
    action = [&] {
      out.write(json_io::polytope_details(guarded(join(read_polytope(a_path), read_polytope(b_path)), "join")));
    };
  });

  auto* prod_cmd = poly->add_subcommand("product", "cartesian product of two polytopes");
  prod_cmd->add_option("P", a_path)->required();
  prod_cmd->add_option("Q", b_path)->required();
  prod_cmd->callback([&] {
    action = [&] {
      out.write(
          json_io::polytope_details(guarded(product(read_polytope(a_path), read_polytope(b_path)), "product")));
    };
  });

  auto* mult_cmd = poly->add_subcommand("multiple", "dilation cP");
  mult_cmd->add_option("P", a_path)->required();
  mult_cmd->add_option("--c", c, "positive integer factor")->required();
  mult_cmd->callback([&] {
    action = [&] { out.write(json_io::polytope_details(guarded(multiple(read_polytope(a_path), c), "multiple"))); };
  });

  auto* info_cmd = poly->add_subcommand("info", "vertices, facets, lattice points and faces");
  info_cmd->add_option("P", a_path)->required();
  info_cmd->callback([&] {
    action = [&] {
      auto P = read_polytope(a_path);
      json j = json_io::polytope_details(P);
      json faces = json::array();
      for (auto& f : enumerate_faces(P))
        faces.push_back({{"dim", f.dim}, {"vertices", json_io::points_json(f.vertices)}});
      j["faces"] = faces;
      out.write(j);
    };
  });

  // hom
  auto* hom = app.add_subcommand("hom", "graded homomorphisms");
  hom->require_subcommand(1);

  auto* verify_cmd = hom->add_subcommand("verify", "check that the images respect every relation");
  verify_cmd->add_option("hom", a_path)->required();
  verify_cmd->callback([&] {
    action = [&] {
      auto r = verify_hom(read_hom(a_path));
      out.write(json_io::report_json(r));
      if (!r.ok) exit_code = 1;
    };
  });

  std::string kind, p_path, q_path;
  auto* dec_cmd = hom->add_subcommand("decompose", "certificate of tameness for a structured domain");
  dec_cmd->add_option("hom", a_path)->required();
  dec_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"join", "multiple", "product"}));
  dec_cmd->add_option("--factor-p", p_path, "P (the base polytope for --kind multiple)")->required();
  dec_cmd->add_option("--factor-q", q_path, "Q (join and product)");
  dec_cmd->add_option("--c", c, "factor for --kind multiple");
  dec_cmd->callback([&] {
    action = [&] {
      auto f = read_hom(a_path);
      auto P = read_polytope(p_path);
      DomainStructure s;
      if (kind == "multiple") {
        s = MultipleStructure{P, c};
      } else {
        if (q_path.empty()) throw InputError("--factor-q is required for --kind " + kind);
        auto Q = read_polytope(q_path);
        if (kind == "join")
          s = JoinStructure{P, Q};
        else
          s = ProductStructure{P, Q};
      }
      out.write(json_io::to_json(decompose(f, s)));
    };
  });

  std::string field_name;
  auto* enum_cmd = hom->add_subcommand("enumerate", "all graded homs k[P] -> k[Q] over a tiny prime field");
  enum_cmd->add_option("P", a_path)->required();
  enum_cmd->add_option("Q", b_path)->required();
  enum_cmd->add_option("--field", field_name)->required()->check(CLI::IsMember({"f2", "f3", "F2", "F3"}));
  enum_cmd->callback([&] {
    action = [&] {
      auto homs = enumerate_homs(read_polytope(a_path), read_polytope(b_path), Field::parse(field_name));
      json list = json::array();
      for (auto& h : homs) list.push_back(json_io::to_json(h));
      out.write({{"count", homs.size()}, {"homs", list}});
    };
  });

  // cert
  auto* cert_cmd = app.add_subcommand("cert", "certificates");
  cert_cmd->require_subcommand(1);
  std::string check_path;
  auto* replay_cmd = cert_cmd->add_subcommand("replay", "rebuild the homomorphism a certificate denotes");
  replay_cmd->add_option("cert", a_path)->required();
  replay_cmd->add_option("--check", check_path, "compare against this hom and print {\"match\": bool}");
  replay_cmd->callback([&] {
    action = [&] {
      auto cert = json_io::cert_from_json(read_json(a_path));
      auto h = replay(cert);
      if (check_path.empty()) {
        out.write(json_io::to_json(h));
        return;
      }
      bool match = same_hom(h, read_hom(check_path));
      out.write({{"match", match}});
      if (!match) exit_code = 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (action) action();
    return exit_code;
  } catch (const InputError& e) {
    return report_error("input_error", e.what(), 2);
  } catch (const nlohmann::json::exception& e) {
    return report_error("input_error", e.what(), 2);
  } catch (const CertError& e) {
    return report_error("certificate_error", e.what(), 1);
  } catch (const DomainError& e) {
    return report_error("domain_error", e.what(), 1);
  }
}
