#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyext/caps.hpp"
#include "polyext/json_io.hpp"
#include "polyext/quiver.hpp"

using namespace polyext;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

Polyhedron load_polytope(const std::string& path) {
  return polyhedron_from_json(parse_json_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Ext tables, exceptional collections and fullness "
               "certificates for polytopal line bundle collections"};
  app.require_subcommand(1);
  int seed = 0;
  int jobs = 1;
  app.add_option("--seed", seed, "seed for randomized suites")
      ->capture_default_str();
  app.add_option("--jobs", jobs, "worker count; results do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  int exit_code = 0;

  auto* cmd_enum = app.add_subcommand(
      "enumerate", "List Schubert families with polytopes and counts");
  {
    auto family = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto filter = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd_enum->add_option("--family", *family, "perm, stell or permB")
        ->required();
    cmd_enum->add_option("--n", *n, "ground set size")->required();
    cmd_enum->add_option("--filter", *filter,
                         "loopless or all; defaults to the family convention");
    cmd_enum->add_option("--out", *out, "output path, stdout if omitted");
    cmd_enum->callback([=] {
      CollectionFamily f = family_from_string(*family);
      std::string filt = filter->empty() ? default_filter(f) : *filter;
      emit(dump_json(enumerate_listing(f, *n, filt)), *out);
    });
  }

  auto* cmd_ext = app.add_subcommand(
      "ext", "Ext table of two nef line bundles given as lattice polytopes");
  {
    auto p_path = std::make_shared<std::string>();
    auto q_path = std::make_shared<std::string>();
    auto equivariant = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    cmd_ext->add_option("--p", *p_path, "polytope JSON for the source bundle")
        ->required();
    cmd_ext->add_option("--q", *q_path, "polytope JSON for the target bundle")
        ->required();
    cmd_ext->add_flag("--equivariant", *equivariant,
                      "torus equivariant table (m = 0 only)");
    cmd_ext->add_option("--out", *out, "output path, stdout if omitted");
    cmd_ext->callback([=] {
      Polyhedron p = load_polytope(*p_path);
      Polyhedron q = load_polytope(*q_path);
      if (p.ambient() != q.ambient())
        throw input_error("polytopes live in different ambient dimensions");
      if (p.is_empty() || q.is_empty())
        throw input_error("ext requires nonempty polytopes");
      if (!p.bounded() || !q.bounded())
        throw input_error("ext requires bounded polytopes");
      emit(dump_json(betti_to_json(ext_table(p, q, *equivariant))), *out);
    });
  }

  auto* cmd_verify = app.add_subcommand(
      "verify", "Exceptionality, unitriangularity and symmetry report");
  {
    auto family = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>();
    cmd_verify->add_option("--family", *family, "perm, stell or permB")
        ->required();
    cmd_verify->add_option("--n", *n, "ground set size")->required();
    cmd_verify->add_option("--out", *out, "output path, stdout if omitted");
    cmd_verify->callback([=, &exit_code] {
      Collection c = build_collection(family_from_string(*family), *n);
      Json j = full_verify_report(c);
      emit(dump_json(j), *out);
      if (!j.at("pass").get<bool>()) exit_code = 1;
    });
  }

  auto* cmd_quiver = app.add_subcommand(
      "quiver", "Tilting quiver of the collection in DOT or JSON");
  {
    auto family = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto format = std::make_shared<std::string>("dot");
    auto out = std::make_shared<std::string>();
    cmd_quiver->add_option("--family", *family, "perm, stell or permB")
        ->required();
    cmd_quiver->add_option("--n", *n, "ground set size")->required();
    cmd_quiver->add_option("--format", *format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}))
        ->capture_default_str();
    cmd_quiver->add_option("--out", *out, "output path, stdout if omitted");
    cmd_quiver->callback([=] {
      Collection c = build_collection(family_from_string(*family), *n);
      Quiver q = tilting_quiver(c);
      emit(*format == "dot" ? export_dot(q) : export_json(q), *out);
    });
  }

  auto* cmd_certify = app.add_subcommand(
      "certify", "Fullness certificate tree for a lattice polytope target");
  {
    auto poly_path = std::make_shared<std::string>();
    auto family = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd_certify
        ->add_option("--polytope", *poly_path,
                     "polytope JSON; its ambient dimension fixes n")
        ->required();
    cmd_certify->add_option("--family", *family, "perm, stell or permB")
        ->required();
    cmd_certify->add_option("--out", *out, "output path, stdout if omitted");
    cmd_certify->callback([=] {
      Polyhedron target = load_polytope(*poly_path);
      if (target.ambient() < 1)
        throw input_error("certificate targets need ambient dimension >= 1");
      Collection c =
          build_collection(family_from_string(*family), target.ambient());
      FullnessCertificate cert = fullness_certificate(c, target);
      emit(dump_json(certificate_to_json(cert, c)), *out);
    });
  }

  auto* cmd_counts = app.add_subcommand(
      "counts", "Number of collection members, optionally cuspidal ones");
  {
    auto family = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto cuspidal = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    cmd_counts->add_option("--family", *family, "perm, stell or permB")
        ->required();
    cmd_counts->add_option("--n", *n, "ground set size")->required();
    cmd_counts->add_flag("--cuspidal", *cuspidal,
                         "count the cuspidal subcollection instead");
    cmd_counts->add_option("--out", *out, "output path, stdout if omitted");
    cmd_counts->callback([=] {
      Collection c = build_collection(family_from_string(*family), *n);
      size_t k =
          *cuspidal ? cuspidal_subcollection(c).items.size() : c.items.size();
      emit(std::to_string(k) + "\n", *out);
    });
  }

  // global flags remain valid after the subcommand name
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const cap_error& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return exit_code;
}
