// Command-line front end: batch decisions, constructions and verifications
// with JSON reports on stdout. Exit codes: 0 success, 1 domain error,
// 2 usage error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "inca/io.hpp"
#include "inca/kernels.hpp"
#include "inca/preserver.hpp"

namespace {

using inca::io::json;

struct Common {
  bool pretty = false;
  int jobs = 0;
};

void emit(const Common& common, const json& j) {
  if (common.pretty)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << j.dump() << "\n";
}

inca::Field parse_field_flag(const std::string& text) {
  if (text == "Q" || text == "q" || text == "rational") return inca::Field::rationals();
  try {
    return inca::Field::prime(static_cast<std::uint32_t>(std::stoul(text)));
  } catch (const inca::Error&) {
    throw;
  } catch (const std::exception&) {
    inca::fail(inca::Errc::UsageError, "bad --field value '" + text + "'");
  }
}

inca::PosetPtr load_poset(const std::string& path) {
  return inca::io::poset_from_json(inca::io::load_json_file(path));
}

inca::IncidenceElement load_element(const std::string& path, const inca::PosetPtr& poset,
                                    std::optional<inca::Field> expected) {
  auto f = inca::io::element_from_json(inca::io::load_json_file(path), poset);
  if (expected && f.field() != *expected)
    inca::fail(inca::Errc::MixedFields, path + " is over " + f.field().to_string() +
                                            ", expected " + expected->to_string());
  return f;
}

int resolve_jobs_flag(int jobs) {
  if (jobs != 0) return jobs;
  if (const char* env = std::getenv("PRESERVER_JOBS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      inca::fail(inca::Errc::UsageError, "bad PRESERVER_JOBS value");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact incidence-algebra computations and idempotent-product preservers"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_flag("--pretty", common.pretty, "indent JSON output");
  app.add_option("--jobs", common.jobs, "worker threads for enumeration kernels (0 = auto)");

  std::string poset_path, field_text, eps_path, eta_path, map_path, out_path, sigma_path;
  std::string inner_left_path, inner_right_path, mode_text = "exhaustive";
  std::string x_name, y_name, op, lhs_path, rhs_path, scalar_text, subset_text;
  std::uint64_t sample_n = 10000, sample_seed = 0;
  bool seed_given = false;
  int sign = 1;
  std::uint32_t prime = 2;
  bool definitional = false;

  auto* info = app.add_subcommand("poset-info", "connectivity, length, dimension, automorphisms, orbits");
  info->add_option("--poset", poset_path)->required();

  auto* eval = app.add_subcommand("algebra-eval", "evaluate one algebra operation");
  eval->add_option("--poset", poset_path)->required();
  eval->add_option("--op", op, "basis|identity|add|sub|mul|scale|invert|split|classify|radical|conjugator")->required();
  eval->add_option("--field", field_text);
  eval->add_option("--lhs", lhs_path);
  eval->add_option("--rhs", rhs_path);
  eval->add_option("--scalar", scalar_text);
  eval->add_option("--subset", subset_text, "comma-separated element names");
  eval->add_option("--x", x_name);
  eval->add_option("--y", y_name);

  auto* decide = app.add_subcommand("preserver-decide", "decide existence of a preserver");
  decide->add_option("--poset", poset_path)->required();
  decide->add_option("--field", field_text);
  decide->add_option("--epsilon", eps_path)->required();
  decide->add_option("--eta", eta_path)->required();

  auto* construct = app.add_subcommand("preserver-construct", "construct a preserver");
  construct->add_option("--poset", poset_path)->required();
  construct->add_option("--field", field_text);
  construct->add_option("--epsilon", eps_path)->required();
  construct->add_option("--eta", eta_path)->required();
  construct->add_option("--sign", sign, "+1 or -1");
  construct->add_option("--sigma", sigma_path, "cocycle file");
  construct->add_option("--inner-left", inner_left_path, "invertible element file");
  construct->add_option("--inner-right", inner_right_path, "invertible element file");
  construct->add_option("--out", out_path, "write the map here");

  auto* verify = app.add_subcommand("preserver-verify", "verify the preserver property");
  verify->add_option("--poset", poset_path)->required();
  verify->add_option("--map", map_path)->required();
  verify->add_option("--epsilon", eps_path)->required();
  verify->add_option("--eta", eta_path)->required();
  verify->add_option("--mode", mode_text, "exhaustive|sampled");
  verify->add_option("--n", sample_n);
  verify->add_option("--seed", sample_seed)->each([&](const std::string&) { seed_given = true; });

  auto* suite = app.add_subcommand("lemma-suite", "structural checks on a candidate map");
  suite->add_option("--poset", poset_path)->required();
  suite->add_option("--map", map_path)->required();
  suite->add_option("--epsilon", eps_path)->required();
  suite->add_option("--eta", eta_path)->required();

  auto* roots = app.add_subcommand("square-roots", "all f with f^2 = e_y");
  roots->add_option("--poset", poset_path)->required();
  roots->add_option("--p", prime)->required();
  roots->add_option("--y", y_name)->required();

  auto* brute = app.add_subcommand("bruteforce", "GL(d,p) census of preservers");
  brute->add_option("--poset", poset_path)->required();
  brute->add_option("--p", prime)->required();
  brute->add_option("--x", x_name)->required();
  brute->add_option("--y", y_name)->required();

  auto* zp = app.add_subcommand("zp-check", "zero-product basis conditions");
  zp->add_option("--poset", poset_path)->required();
  zp->add_option("--map", map_path)->required();
  zp->add_flag("--definitional", definitional, "also run the exhaustive definitional check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    const int jobs = resolve_jobs_flag(common.jobs);

    if (*info) {
      auto poset = load_poset(poset_path);
      json j;
      j["connected"] = poset->is_connected();
      j["dimension"] = poset->comparable_pair_count();
      j["length"] = poset->length();
      j["elements"] = poset->elements();
      auto autos = poset->automorphisms();
      j["automorphisms"] = autos.size();
      json maps = json::array();
      for (const auto& a : autos) maps.push_back(inca::io::automorphism_to_json(a, *poset));
      j["automorphism_maps"] = maps;
      json orbits = json::array();
      for (const auto& orbit : poset->orbits()) {
        json names = json::array();
        for (int z : orbit) names.push_back(poset->name(z));
        orbits.push_back(names);
      }
      j["orbits"] = orbits;
      emit(common, j);
      return 0;
    }

    if (*eval) {
      auto poset = load_poset(poset_path);
      std::optional<inca::Field> field;
      if (!field_text.empty()) field = parse_field_flag(field_text);
      auto need_lhs = [&] {
        if (lhs_path.empty()) inca::fail(inca::Errc::UsageError, "--lhs required for op " + op);
        return load_element(lhs_path, poset, field);
      };
      auto need_rhs = [&] {
        if (rhs_path.empty()) inca::fail(inca::Errc::UsageError, "--rhs required for op " + op);
        return load_element(rhs_path, poset, field);
      };
      json j;
      if (op == "basis") {
        if (!field) inca::fail(inca::Errc::UsageError, "--field required for op basis");
        j["result"] = inca::io::element_to_json(inca::IncidenceElement::basis(
            poset, *field, poset->index_of(x_name), poset->index_of(y_name)));
      } else if (op == "identity") {
        if (!field) inca::fail(inca::Errc::UsageError, "--field required for op identity");
        j["result"] = inca::io::element_to_json(inca::IncidenceElement::identity(poset, *field));
      } else if (op == "add") {
        j["result"] = inca::io::element_to_json(need_lhs() + need_rhs());
      } else if (op == "sub") {
        j["result"] = inca::io::element_to_json(need_lhs() - need_rhs());
      } else if (op == "mul") {
        j["result"] = inca::io::element_to_json(need_lhs() * need_rhs());
      } else if (op == "scale") {
        auto f = need_lhs();
        if (scalar_text.empty()) inca::fail(inca::Errc::UsageError, "--scalar required for op scale");
        j["result"] = inca::io::element_to_json(f.scaled(inca::Scalar::parse(f.field(), scalar_text)));
      } else if (op == "invert") {
        j["result"] = inca::io::element_to_json(inca::invert(need_lhs()));
      } else if (op == "split") {
        auto f = need_lhs();
        j["diagonal"] = inca::io::element_to_json(f.diagonal_part());
        j["strict"] = inca::io::element_to_json(f.strict_part());
      } else if (op == "classify") {
        j = inca::io::classification_to_json(inca::classify_idempotent(need_lhs()), *poset);
      } else if (op == "radical") {
        auto f = need_lhs();
        if (subset_text.empty()) {
          j["member"] = inca::in_radical(f);
        } else {
          std::vector<int> subset;
          std::size_t pos = 0;
          while (pos <= subset_text.size()) {
            std::size_t comma = subset_text.find(',', pos);
            if (comma == std::string::npos) comma = subset_text.size();
            subset.push_back(poset->index_of(subset_text.substr(pos, comma - pos)));
            pos = comma + 1;
          }
          j["member"] = inca::in_radical(f, subset);
        }
      } else if (op == "conjugator") {
        j["result"] = inca::io::element_to_json(inca::conjugator_to_standard(need_lhs()));
      } else {
        inca::fail(inca::Errc::UsageError, "unknown op '" + op + "'");
      }
      emit(common, j);
      return 0;
    }

    if (*decide || *construct) {
      auto poset = load_poset(poset_path);
      std::optional<inca::Field> flag_field;
      if (!field_text.empty()) flag_field = parse_field_flag(field_text);
      auto eps = load_element(eps_path, poset, flag_field);
      auto eta = load_element(eta_path, poset, flag_field);
      auto problem = inca::PreserverProblem::make(poset, eps.field(), eps, eta);

      if (*decide) {
        emit(common, inca::io::verdict_to_json(inca::decide_existence(problem, jobs), *poset));
        return 0;
      }

      inca::ConstructOptions opts;
      opts.sign = sign;
      if (!sigma_path.empty())
        opts.sigma = inca::io::cocycle_from_json(inca::io::load_json_file(sigma_path), poset);
      if (!inner_left_path.empty()) opts.inner_left = load_element(inner_left_path, poset, flag_field);
      if (!inner_right_path.empty())
        opts.inner_right = load_element(inner_right_path, poset, flag_field);
      auto map = inca::construct_preserver(problem, opts);
      json map_json = inca::io::map_to_json(map);
      if (!out_path.empty()) inca::io::save_json_file(out_path, map_json);
      json j;
      j["map"] = map_json;
      j["pm_verdict"] = inca::pm_verdict_name(inca::is_pm_automorphism(map));
      if (!out_path.empty()) j["written"] = out_path;
      emit(common, j);
      return 0;
    }

    if (*verify) {
      auto poset = load_poset(poset_path);
      auto map = inca::io::map_from_json(inca::io::load_json_file(map_path), poset);
      auto eps = load_element(eps_path, poset, map.field());
      auto eta = load_element(eta_path, poset, map.field());
      inca::VerifyMode mode;
      if (mode_text == "exhaustive") {
        mode = inca::VerifyMode::exhaustive();
      } else if (mode_text == "sampled") {
        if (!seed_given)
          inca::fail(inca::Errc::UsageError, "--seed is required for sampled verification");
        mode = inca::VerifyMode::sampled(sample_n, sample_seed);
      } else {
        inca::fail(inca::Errc::UsageError, "unknown mode '" + mode_text + "'");
      }
      emit(common, inca::io::verification_report_to_json(
                       inca::verify_product_preserver(map, eps, eta, mode, jobs)));
      return 0;
    }

    if (*suite) {
      auto poset = load_poset(poset_path);
      auto map = inca::io::map_from_json(inca::io::load_json_file(map_path), poset);
      auto eps = load_element(eps_path, poset, map.field());
      auto eta = load_element(eta_path, poset, map.field());
      emit(common, inca::io::lemma_report_to_json(inca::lemma_suite(map, eps, eta)));
      return 0;
    }

    if (*roots) {
      auto poset = load_poset(poset_path);
      auto field = inca::Field::prime(prime);
      auto all = inca::square_roots_of(poset, field, poset->index_of(y_name), jobs);
      json j;
      j["count"] = all.size();
      json list = json::array();
      for (const auto& f : all) list.push_back(inca::io::element_to_json(f));
      j["roots"] = list;
      emit(common, j);
      return 0;
    }

    if (*brute) {
      auto poset = load_poset(poset_path);
      auto census = inca::bruteforce_classify(poset, prime, poset->index_of(x_name),
                                              poset->index_of(y_name), {}, jobs);
      emit(common, inca::io::census_to_json(census, *poset));
      return 0;
    }

    if (*zp) {
      auto poset = load_poset(poset_path);
      auto map = inca::io::map_from_json(inca::io::load_json_file(map_path), poset);
      json j;
      j["basis_conditions_hold"] = inca::zero_product_basis_check(map);
      if (definitional)
        j["definitional"] = inca::io::verification_report_to_json(
            inca::zero_product_exhaustive_check(map, jobs));
      emit(common, j);
      return 0;
    }

    inca::fail(inca::Errc::UsageError, "no subcommand");
  } catch (const inca::Error& e) {
    if (e.code() == inca::Errc::UsageError) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    json j;
    j["error"] = {{"code", inca::errc_name(e.code())}, {"message", e.what()}};
    std::cout << (common.pretty ? j.dump(2) : j.dump()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json j;
    j["error"] = {{"code", "Internal"}, {"message", e.what()}};
    std::cout << (common.pretty ? j.dump(2) : j.dump()) << "\n";
    return 1;
  }
}
