// xsep: classify three-qubit X-states against partial-separability cones,
// scan the (s,t) slice, search witnesses, and run the counterexample suite.
//
// Exit codes for classify: 0 IN, 1 OUT, 2 BOUNDARY/UNKNOWN, 3 input error,
// 4 unsupported cone.  witness: 0 certificate found, 2 inconclusive.
// verify: 0 iff every item passes.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "xsep/xsep.hpp"

namespace {

using namespace xsep;
using io::json;

constexpr int kExitIn = 0;
constexpr int kExitOut = 1;
constexpr int kExitBoundary = 2;
constexpr int kExitInputError = 3;
constexpr int kExitUnsupported = 4;

struct ModeOptions {
  std::string mode = "auto";  // auto | exact | float
  double tol = 1e-9;
  bool json_output = false;
};

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw IoError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

bool pick_exact(const ModeOptions& opt, const json& state_json) {
  if (opt.mode == "exact") return true;
  if (opt.mode == "float") return false;
  // auto: exact when nothing is lost parsing and the state is GHZ diagonal.
  if (!io::all_entries_exact(state_json)) return false;
  try {
    XMat<Rational> m = io::xmatrix_from_json<Rational>(state_json);
    return m.ghz_diagonal();
  } catch (const Error&) {
    return false;
  }
}

template <class S>
Context<S> make_context(const ModeOptions& opt) {
  Context<S> ctx;
  if constexpr (!num::is_exact_v<S>) ctx.tol = opt.tol;
  else if (opt.tol != 1e-9) ctx.tol = num::parse<S>(num::str_of(opt.tol));
  return ctx;
}

const char* outcome_name(int o) { return o == 0 ? "IN" : (o == 1 ? "OUT" : "UNKNOWN"); }

template <class S>
int run_classify(const json& state_json, const std::string& cone_text, const ModeOptions& opt) {
  Context<S> ctx = make_context<S>(opt);
  XMat<S> m = io::xmatrix_from_json<S>(state_json);
  ConeExpr expr = parse_expr(cone_text);
  EvalResult<S> res = evaluate(m, expr, ctx);
  using O = typename EvalResult<S>::Outcome;
  int outcome = res.outcome == O::In ? 0 : res.outcome == O::Out ? 1 : 2;

  if (opt.json_output) {
    json out;
    out["mode"] = num::is_exact_v<S> ? "exact" : "float";
    out["cone"] = expr_str(normalize(expr));
    out["verdict"] = outcome_name(outcome);
    out["boundary"] = res.boundary();
    if (res.closed_form) {
      out["margin"] = io::scalar_to_json(res.closed_form->margin);
      out["binding"] = res.closed_form->binding;
    }
    if (!res.via.empty()) out["via"] = res.via;
    if (res.witness) {
      out["witness"] = io::witness_to_json(res.witness->witness);
      out["pairing"] = io::scalar_to_json(res.witness->pairing_value);
    }
    if (res.decomposition) {
      json parts = json::array();
      for (std::size_t i = 0; i < res.decomposition->parts.size(); ++i) {
        json p = io::xmatrix_to_json(res.decomposition->parts[i]);
        p["cone"] = cone_tag_name(res.decomposition->tags[i]);
        parts.push_back(p);
      }
      out["decomposition"] = parts;
    }
    if (!res.upper_bounds.empty()) out["upper_bounds"] = res.upper_bounds;
    if (!res.lower_bounds.empty()) out["lower_bounds"] = res.lower_bounds;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "mode: " << (num::is_exact_v<S> ? "exact" : "float") << "\n";
    std::cout << "cone: " << expr_str(normalize(expr)) << "\n";
    std::cout << "verdict: " << outcome_name(outcome) << (res.boundary() ? " (boundary)" : "")
              << "\n";
    if (res.closed_form)
      std::cout << "margin: " << num::str_of(res.closed_form->margin) << "  binding "
                << res.closed_form->binding << "\n";
    if (!res.via.empty()) std::cout << "via: " << res.via << "\n";
    if (res.witness) {
      std::cout << "witness: " << io::witness_to_json(res.witness->witness).dump() << "\n";
      std::cout << "pairing: " << num::str_of(res.witness->pairing_value) << "\n";
    }
    if (res.decomposition) {
      std::cout << "decomposition:\n";
      for (std::size_t i = 0; i < res.decomposition->parts.size(); ++i)
        std::cout << "  " << cone_tag_name(res.decomposition->tags[i]) << ": "
                  << io::xmatrix_to_json(res.decomposition->parts[i]).dump() << "\n";
    }
    if (res.outcome == O::Unknown) {
      auto list = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
        return s.empty() ? std::string("none") : s;
      };
      std::cout << "upper bounds: " << list(res.upper_bounds) << "\n";
      std::cout << "lower bounds: " << list(res.lower_bounds) << "\n";
    }
  }
  if (outcome == 0 && res.boundary()) return kExitBoundary;
  return outcome == 0 ? kExitIn : outcome == 1 ? kExitOut : kExitBoundary;
}

template <class S>
int run_witness(const json& state_json, const std::string& cone_text, const ModeOptions& opt) {
  Context<S> ctx = make_context<S>(opt);
  XMat<S> m = io::xmatrix_from_json<S>(state_json);
  ConeExpr expr = parse_expr(cone_text);
  auto cert = certify_out(m, expr, ctx);
  if (opt.json_output) {
    json out;
    out["mode"] = num::is_exact_v<S> ? "exact" : "float";
    out["cone"] = expr_str(normalize(expr));
    if (cert) {
      out["witness"] = io::witness_to_json(cert->witness);
      out["pairing"] = io::scalar_to_json(cert->pairing_value);
    } else {
      out["witness"] = nullptr;
    }
    std::cout << out.dump(2) << "\n";
  } else if (cert) {
    std::cout << "witness: " << io::witness_to_json(cert->witness).dump() << "\n";
    std::cout << "pairing: " << num::str_of(cert->pairing_value) << "\n";
  } else {
    std::cout << "inconclusive\n";
  }
  return cert ? kExitIn : kExitBoundary;
}

int run_slice(int figure, int grid_n, const std::string& csv_path, const std::string& svg_path,
              const ModeOptions& opt) {
  if (grid_n < 2) {
    std::cerr << "error: --grid must be at least 2\n";
    return kExitInputError;
  }
  GridSpec grid;
  grid.n = grid_n;
  auto classifiers = figure == 1 ? figure1_classifiers() : figure2_classifiers();
  Palette palette = figure == 1 ? Palette::figure1() : Palette::figure2();

  long mismatches = 0;
  std::string csv, svg;
  if (opt.mode == "float") {
    Context<double> ctx;
    ctx.tol = opt.tol;
    auto tbl = scan(grid, classifiers, ctx);
    mismatches = mismatch_count(tbl);
    csv = emit_csv(tbl);
    svg = emit_svg(tbl, palette);
  } else {
    Context<Rational> ctx;
    auto tbl = scan(grid, classifiers, ctx);
    mismatches = mismatch_count(tbl);
    csv = emit_csv(tbl);
    svg = emit_svg(tbl, palette);
  }
  auto write_file = [](const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw IoError("cannot write '" + path + "'");
    out << bytes;
  };
  write_file(csv_path, csv);
  write_file(svg_path, svg);
  std::cout << "wrote " << csv_path << " and " << svg_path << "\n";
  std::cout << "mismatches between members and region predicates: " << mismatches << "\n";
  return 0;
}

struct VerifyItem {
  std::string name;
  bool pass;
  std::string detail;
};

// The counterexample suite: distributivity gaps at rho_{1,0} and sampled
// triangle points, modularity along rho_t, the explicit decomposition, and
// the sign-change threshold.
std::vector<VerifyItem> run_verify_items(std::uint64_t seed, int samples, const Rational& tol) {
  Context<Rational> ctx{tol};
  std::vector<VerifyItem> items;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    items.push_back({name, pass, detail});
  };

  {
    auto rep = check_distributivity(rho_st(Rational(1), Rational(0)), ctx);
    add("distributivity-gap-rho10", rep.separates_first && rep.separates_second,
        "rho_{1,0} separates both distributive inequalities");
    add("rho10-witness",
        rep.first_left.result.witness.has_value() &&
            rep.first_left.result.witness->pairing_value < Rational(0),
        "witness with negative pairing against (A&B)|(A&C)");
  }

  {
    Sampler smp(seed);
    auto tris = sampling::gap_triangles();
    int ok_first = 0, ok_second = 0, total = 0;
    for (int k = 0; k < samples; ++k) {
      auto [s, t] = smp.triangle_interior(tris[static_cast<std::size_t>(k) % 3]);
      XMat<Rational> m = rho_st(s, t);
      if (validate(m, ctx) != Validity::State) continue;
      ++total;
      auto st = XState<Rational>::make(m, ctx);
      bool in_right = eval_requirements(*st, requirement_set(ConeTag::BjC), ctx).kind !=
                          Membership::Out &&
                      eval_requirements(*st, requirement_set(ConeTag::AjB), ctx).kind !=
                          Membership::Out;
      bool out_mid = member(*st, ConeTag::BjCmA, ctx).kind == Membership::Out;
      if (in_right && out_mid) ++ok_second;
      auto cert = certify_out(m, parse_expr("(A&B)|(A&C)"), ctx);
      if (cert && cert->pairing_value < Rational(0)) ++ok_first;
    }
    add("gap-triangles-witnessed", ok_first == total && total == samples,
        std::to_string(ok_first) + "/" + std::to_string(total) + " sampled points certified");
    add("gap-triangles-s4", ok_second == total,
        std::to_string(ok_second) + "/" + std::to_string(total) +
            " points in (B|C)&(B|A) but outside B|(C&A)");
  }

  {
    bool all_in = true;
    for (auto [n, d] : {std::pair<int, int>{0, 1}, {1, 4}, {1, 2}, {3, 4}, {4, 5}, {9, 10}, {1, 1}}) {
      auto rep = check_modularity(Rational(n, d), ctx);
      all_in = all_in && rep.middle.outcome == EvalResult<Rational>::Outcome::In;
    }
    add("modularity-middle-cone", all_in, "rho_t in A&(B|(C&A)) for all probe values");

    bool certified = true;
    for (auto [n, d] : {std::pair<int, int>{4, 5}, {9, 10}, {1, 1}}) {
      auto cert = certify_out(rho_modular(Rational(n, d)), parse_expr("(A&B)|(A&C)"), ctx);
      certified = certified && cert.has_value() && cert->pairing_value < Rational(0);
    }
    add("modularity-violated", certified, "certificates for t in {0.8, 0.9, 1.0}");

    // Exact root of the affine pairing t -> <W, rho_t>.
    Rational p0 = pairing(modularity_witness<Rational>(), rho_modular(Rational(0)));
    Rational p1 = pairing(modularity_witness<Rational>(), rho_modular(Rational(1)));
    Rational root = p0 / (p0 - p1);
    add("modularity-threshold", root == Rational(3, 4), "sign change exactly at t = 3/4");
  }

  {
    XMat<Rational> m = rho_st(Rational(-10, 13), Rational(3, 13));
    XMat<Rational> p1 = ghz_xmat<Rational>({Rational(3), Rational(1), Rational(3), Rational(3)},
                                           {Rational(-3), Rational(1), Rational(1), Rational(-1)});
    XMat<Rational> p2 = ghz_xmat<Rational>({Rational(4), Rational(0), Rational(8), Rational(4)},
                                           {Rational(0), Rational(0), Rational(0), Rational(-4)});
    bool identity = (p1 + p2 == Rational(52) * m);
    bool members = member(p1, ConeTag::AmB, ctx).kind != Membership::Out &&
                   member(p2, ConeTag::CmA, ctx).kind != Membership::Out;
    auto dec = decompose_join(m, {ConeTag::AmB, ConeTag::CmA}, ctx);
    add("decomposition-identity", identity && members && dec.has_value(),
        "52 rho_{-10/13,3/13} splits into A&B + A&C");
  }

  return items;
}

int run_verify(std::uint64_t seed, int samples, double tol, bool json_output) {
  Rational rtol = tol == 1e-9 ? Rational(0) : Rational(tol);
  auto items = run_verify_items(seed, samples, rtol);
  bool all = true;
  if (json_output) {
    json out;
    out["items"] = json::array();
    for (const auto& item : items) {
      out["items"].push_back({{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
      all = all && item.pass;
    }
    out["all_pass"] = all;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& item : items) {
      std::cout << (item.pass ? "PASS" : "FAIL") << "  " << item.name << "  (" << item.detail
                << ")\n";
      all = all && item.pass;
    }
    std::cout << (all ? "all items passed" : "some items FAILED") << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial separability of three-qubit X-states"};
  app.require_subcommand(1);

  ModeOptions opt;

  std::string state_path, cone_text;
  auto* classify = app.add_subcommand("classify", "decide membership of a state in a lattice cone");
  classify->add_option("state", state_path, "state file (JSON X-matrix)")->required();
  classify->add_option("--cone", cone_text, "lattice word over A, B, C with & and |")->required();
  classify->add_option("--mode", opt.mode, "auto|exact|float")->default_str("auto");
  classify->add_option("--tol", opt.tol, "float-mode tolerance");
  classify->add_flag("--json", opt.json_output, "machine-readable output");

  std::string wstate_path, wcone_text;
  auto* witness = app.add_subcommand("witness", "search a dual-cone witness certifying OUT");
  witness->add_option("state", wstate_path, "state file (JSON X-matrix)")->required();
  witness->add_option("--cone", wcone_text, "cone whose dual is searched")->required();
  witness->add_option("--mode", opt.mode, "auto|exact|float");
  witness->add_option("--tol", opt.tol, "float-mode tolerance");
  witness->add_flag("--json", opt.json_output, "machine-readable output");

  int figure = 1, grid_n = 401;
  std::string csv_path, svg_path;
  auto* slice = app.add_subcommand("slice", "scan the (s,t) plane and emit CSV/SVG");
  slice->add_option("--figure", figure, "1 or 2")->check(CLI::IsMember({1, 2}))->required();
  slice->add_option("--grid", grid_n, "grid resolution per axis (default 401)");
  slice->add_option("--csv", csv_path, "CSV output path");
  slice->add_option("--svg", svg_path, "SVG output path");
  slice->add_option("--mode", opt.mode, "exact|float (default exact)");
  slice->add_option("--tol", opt.tol, "float-mode tolerance");

  std::uint64_t seed = 0;
  int samples = 60;
  double vtol = 1e-9;
  bool vjson = false;
  auto* verify = app.add_subcommand("verify", "run the counterexample suite");
  verify->add_option("--seed", seed, "sampling seed (default 0)");
  verify->add_option("--samples", samples, "triangle sample count (default 60)");
  verify->add_option("--tol", vtol, "tolerance override");
  verify->add_flag("--json", vjson, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (classify->parsed()) {
      json j = load_json_file(state_path);
      return pick_exact(opt, j) ? run_classify<Rational>(j, cone_text, opt)
                                : run_classify<double>(j, cone_text, opt);
    }
    if (witness->parsed()) {
      json j = load_json_file(wstate_path);
      return pick_exact(opt, j) ? run_witness<Rational>(j, wcone_text, opt)
                                : run_witness<double>(j, wcone_text, opt);
    }
    if (slice->parsed()) {
      if (csv_path.empty()) csv_path = "figure" + std::to_string(figure) + ".csv";
      if (svg_path.empty()) svg_path = "figure" + std::to_string(figure) + ".svg";
      if (opt.mode == "auto") opt.mode = "exact";
      return run_slice(figure, grid_n, csv_path, svg_path, opt);
    }
    if (verify->parsed()) return run_verify(seed, samples, vtol, vjson);
  } catch (const UnsupportedCone& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError + 2;
  }
  return kExitInputError;
}
