#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "supergrade/checks.hpp"

using namespace supergrade;

namespace {

json read_input(const std::string& path) {
  if (path.empty()) return json::object();
  std::istream* in = &std::cin;
  std::ifstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw ParseError("field 'input': cannot open file " + path);
    in = &file;
  }
  try {
    return json::parse(*in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("field 'input': ") + e.what());
  }
}

void render_text(const json& report, std::ostream& os) {
  os << "status: " << report.value("status", "?") << "\n";
  if (report.contains("message")) os << "message: " << report["message"].get<std::string>() << "\n";
  if (report.contains("checks")) {
    for (const auto& c : report["checks"]) {
      os << (c.value("pass", false) ? "[PASS] " : "[FAIL] ") << c.value("name", "?")
         << "\n";
      if (c.contains("detail")) os << "       " << c["detail"].get<std::string>() << "\n";
    }
  }
  for (const auto& key : {"dims", "obstructed", "identities_hold", "type", "h",
                          "found_count", "exhaustive"}) {
    if (report.contains(key)) os << key << ": " << report[key].dump() << "\n";
  }
}

int emit(json report, const std::string& mode) {
  std::string status = report.value("status", "error");
  if (mode == "text")
    render_text(report, std::cout);
  else
    std::cout << report.dump(2) << "\n";
  if (status == "pass") return 0;
  if (status == "fail") return 1;
  return 2;
}

json run_checks_report(const std::vector<std::string>& names, std::uint64_t seed,
                       long parallel) {
  std::vector<CheckResult> results(names.size());
  if (parallel <= 1) {
    for (size_t i = 0; i < names.size(); ++i) results[i] = run_check(names[i], seed);
  } else {
    size_t next = 0;
    while (next < names.size()) {
      std::vector<std::future<CheckResult>> batch;
      for (long k = 0; k < parallel && next < names.size(); ++k, ++next)
        batch.push_back(std::async(std::launch::async, [&names, next, seed] {
          return run_check(names[next], seed);
        }));
      for (size_t k = 0; k < batch.size(); ++k)
        results[next - batch.size() + k] = batch[k].get();
    }
  }
  json checks = json::array();
  json timings = json::object();
  bool all = true;
  for (const auto& r : results) {
    checks.push_back(json{{"name", r.name},
                          {"pass", r.pass},
                          {"detail", r.detail},
                          {"data", r.data}});
    timings[r.name] = r.seconds;
    all = all && r.pass;
  }
  return json{{"command", "verify-axioms"},
              {"status", all ? "pass" : "fail"},
              {"checks", checks},
              {"timings", timings}};
}

SuperMap star_from_input(const json& in, const SuperAlgebra& alg) {
  if (in.contains("star")) return supermap_from_json(in["star"], alg);
  if (alg.kind() == SuperAlgebra::Kind::PairSop)
    return apply_canonical_map_builder(alg, CanonicalMapKind::Exchange);
  throw ParseError("field 'star': required for non-pair algebras");
}

json cmd_build(const json& in) {
  std::string kind = in.value("kind", "");
  if (kind == "elementary" || kind == "trivial" || kind == "pauli") {
    SuperAlgebra alg = algebra_from_json(in.at("algebra"));
    Grading g;
    if (kind == "pauli") {
      g = pauli_fine_grading(alg);
    } else {
      AbGroup grp = group_from_json(in.at("group"));
      if (kind == "trivial") {
        g = trivial_grading(alg, grp);
      } else {
        std::vector<GroupElem> tuple;
        for (const auto& t : in.at("tuple")) tuple.push_back(elem_from_json(t));
        g = elementary_grading(alg, grp, tuple);
      }
    }
    return json{{"command", "build"},
                {"status", "pass"},
                {"algebra", algebra_to_json(alg)},
                {"grading", grading_to_json(g)}};
  }
  if (kind == "tensor") {
    SuperAlgebra c = algebra_from_json(in.at("left_algebra"));
    SuperAlgebra d = algebra_from_json(in.at("right_algebra"));
    Grading elem = grading_from_json(in.at("left_grading"), c.dim());
    Grading fine = grading_from_json(in.at("right_grading"), d.dim());
    auto result = tensor_grading(c, elem, d, fine);
    return json{{"command", "build"},
                {"status", "pass"},
                {"algebra", algebra_to_json(result.algebra)},
                {"grading", grading_to_json(result.grading)}};
  }
  if (kind == "type_i" || kind == "type_ii" || kind == "type_iii" ||
      kind == "q_type_ii") {
    SuperAlgebra pair = algebra_from_json(in.at("algebra"));
    if (pair.kind() != SuperAlgebra::Kind::PairSop)
      throw ParseError("field 'algebra': expected a pair_sop algebra");
    SuperAlgebra base_alg =
        kind == "q_type_ii" ? SuperAlgebra::matrix_super(pair.base().n(), 0)
                            : pair.base();
    Grading base = grading_from_json(in.at("base"), base_alg.dim());
    TypedGrading out;
    if (kind == "type_i") {
      out = build_type_I(pair, base);
    } else {
      SuperMap dagger = supermap_from_json(in.at("dagger"), base_alg);
      GroupElem h = elem_from_json(in.at("h"));
      if (kind == "type_ii")
        out = build_type_II(pair, base, dagger, h);
      else if (kind == "type_iii")
        out = build_type_III(pair, base, dagger, h);
      else
        out = build_q_type_II(pair, base, dagger, h);
    }
    return json{{"command", "build"},
                {"status", "pass"},
                {"typed_grading", typed_grading_to_json(out)}};
  }
  throw ParseError("field 'kind': unknown builder '" + kind + "'");
}

json cmd_grade(const json& in) {
  std::string direction = in.value("direction", "");
  SuperAlgebra alg = algebra_from_json(in.at("algebra"));
  if (direction == "action_of_grading") {
    Grading g = grading_from_json(in.at("grading"), alg.dim());
    ActionHom hom = action_of_grading(alg, g);
    json images = json::array();
    for (const auto& m : hom.gen_images) images.push_back(matrix_to_json(m.action));
    return json{{"command", "grade"},
                {"status", "pass"},
                {"group", group_to_json(hom.group)},
                {"images", images}};
  }
  if (direction == "grading_of_action") {
    ActionHom hom;
    hom.group = group_from_json(in.at("group"));
    for (const auto& m : in.at("images"))
      hom.gen_images.push_back(
          SuperMap{matrix_from_json(m), SuperMap::Claim::Automorphism});
    Grading g = grading_of_action(alg, hom);
    return json{{"command", "grade"},
                {"status", "pass"},
                {"grading", grading_to_json(g)}};
  }
  throw ParseError("field 'direction': expected action_of_grading or grading_of_action");
}

json cmd_check_grading(const json& in) {
  SuperAlgebra alg = algebra_from_json(in.at("algebra"));
  Grading g = grading_from_json(in.at("grading"), alg.dim());
  std::optional<SuperMap> star;
  if (in.contains("star")) star = supermap_from_json(in["star"], alg);
  auto report = verify_grading(alg, g, star ? &*star : nullptr);
  json out{{"command", "check-grading"},
           {"status", report.ok ? "pass" : "fail"},
           {"verify", grading_check_report_to_json(report)}};
  if (report.ok && star) {
    try {
      out["support"] = support_report_to_json(support_properties(alg, g, *star));
    } catch (const std::exception& e) {
      out["support"] = json{{"skipped", e.what()}};
    }
  }
  return out;
}

json cmd_classify(const json& in_raw) {
  // accept either {"algebra", "grading"} or the output of the build verb
  const json& in = in_raw.contains("typed_grading") ? in_raw["typed_grading"] : in_raw;
  SuperAlgebra alg = algebra_from_json(in.at("algebra"));
  Grading g = grading_from_json(in.at("grading"), alg.dim());
  SuperMap ex = star_from_input(in, alg);
  try {
    TypedGrading t = classify(alg, g, ex);
    return json{{"command", "classify"},
                {"status", "pass"},
                {"type", to_string(t.type)},
                {"h", t.h ? elem_to_json(*t.h) : json()},
                {"typed_grading", typed_grading_to_json(t)}};
  } catch (const ClassificationError& e) {
    return json{{"command", "classify"}, {"status", "fail"}, {"message", e.what()}};
  }
}

json cmd_exchange(const json& in) {
  SuperAlgebra alg = algebra_from_json(in.at("algebra"));
  AbGroup grp = group_from_json(in.at("group"));
  auto read_action = [&](const json& j) {
    ActionHom hom;
    hom.group = grp;
    for (const auto& m : j)
      hom.gen_images.push_back(
          SuperMap{matrix_from_json(m), SuperMap::Claim::Automorphism});
    return hom;
  };
  ActionHom alpha = read_action(in.at("alpha"));
  ActionHom beta = read_action(in.at("beta"));
  std::vector<Character> lambda;
  for (const auto& l : in.at("lambda")) lambda.push_back(Character{elem_from_json(l).coords});
  auto result = exchange_decompose(alg, alpha, beta, lambda);
  return json{{"command", "exchange"},
              {"status", result.identities_hold ? "pass" : "fail"},
              {"identities_hold", result.identities_hold},
              {"result", exchange_result_to_json(result)}};
}

json cmd_obstruction(const json& in) {
  SuperAlgebra alg = algebra_from_json(in.at("algebra"));
  Grading g = in.contains("grading") ? grading_from_json(in.at("grading"), alg.dim())
                                     : pauli_fine_grading(alg);
  ObstructionReport rep;
  bool obstructed = fine_antiauto_obstruction(alg, g, &rep);
  return json{{"command", "obstruction"},
              {"status", "pass"},
              {"obstructed", obstructed},
              {"report", obstruction_report_to_json(rep)}};
}

json cmd_search(const json& in) {
  SuperAlgebra alg = algebra_from_json(in.at("algebra"));
  auto result = superinvolution_search(alg);
  json found = json::array();
  for (const auto& f : result.found) found.push_back(supermap_to_json(f));
  return json{{"command", "search-superinvolution"},
              {"status", "pass"},
              {"found_count", result.found.size()},
              {"exhaustive", result.exhaustive},
              {"found", found},
              {"notes", result.notes}};
}

json cmd_demo_z4(const json& in) {
  long n = in.value("n", 1), m = in.value("m", 1);
  TypedGrading z4 = z4_example(n, m);
  json dims = json::array();
  for (long i = 0; i < z4.grading.index_size(); ++i)
    dims.push_back(z4.grading.component_at(i).dim());
  SuperMap ex = apply_canonical_map_builder(z4.algebra, CanonicalMapKind::Exchange);
  TypedGrading cls = classify(z4.algebra, z4.grading, ex);
  bool ok = cls.type == GradingType::III;
  if (n == 1 && m == 1) ok = ok && cls.h && *cls.h == GroupElem{{3}};
  return json{{"command", "demo-z4"},
              {"status", ok ? "pass" : "fail"},
              {"dims", dims},
              {"type", to_string(cls.type)},
              {"h", cls.h ? elem_to_json(*cls.h) : json()},
              {"typed_grading", typed_grading_to_json(cls)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supergrade: exact gradings, superinvolutions and classification "
               "of involution-simple superalgebras"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string input_path, output_mode = "json";
  std::uint64_t seed = 0;
  long parallel = 1;
  bool list_checks_flag = false;
  app.add_option("--input", input_path, "JSON input file ('-' for stdin)");
  app.add_option("--output", output_mode, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "seed for randomized suites (default 0)");
  app.add_option("--parallel", parallel, "run up to K checks concurrently");
  app.add_flag("--list-checks", list_checks_flag, "list the acceptance checks and exit");

  auto* verify = app.add_subcommand("verify-axioms", "run the acceptance checks");
  auto* build = app.add_subcommand("build", "run a grading builder");
  auto* grade = app.add_subcommand("grade", "convert between gradings and dual actions");
  auto* check = app.add_subcommand("check-grading", "verify a grading (and support)");
  auto* classify_cmd = app.add_subcommand("classify", "classify a compatible grading");
  auto* exchange = app.add_subcommand("exchange", "run the exchange engine");
  auto* obstruction = app.add_subcommand("obstruction", "fine-grading obstruction");
  auto* search = app.add_subcommand("search-superinvolution", "superinvolution search");
  auto* demo = app.add_subcommand("demo-z4", "the Z4 example end to end");

  CLI11_PARSE(app, argc, argv);

  if (list_checks_flag) {
    for (const auto& name : list_checks()) std::cout << name << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help() << "\n";
    return 2;
  }

  try {
    json in = read_input(input_path);
    json report;
    if (verify->parsed()) {
      std::vector<std::string> names = list_checks();
      if (in.contains("checks")) {
        names.clear();
        for (const auto& n : in["checks"]) names.push_back(n.get<std::string>());
      }
      report = run_checks_report(names, seed, parallel);
    } else if (build->parsed()) {
      report = cmd_build(in);
    } else if (grade->parsed()) {
      report = cmd_grade(in);
    } else if (check->parsed()) {
      report = cmd_check_grading(in);
    } else if (classify_cmd->parsed()) {
      report = cmd_classify(in);
    } else if (exchange->parsed()) {
      report = cmd_exchange(in);
    } else if (obstruction->parsed()) {
      report = cmd_obstruction(in);
    } else if (search->parsed()) {
      report = cmd_search(in);
    } else if (demo->parsed()) {
      report = cmd_demo_z4(in);
    }
    return emit(std::move(report), output_mode);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
