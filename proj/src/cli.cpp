#include "stimg/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "stimg/imagedyn.hpp"
#include "stimg/parser.hpp"
#include "stimg/setdyn.hpp"

namespace stimg::cli {
namespace {

struct Row {
  std::string tag;
  std::string text;
  std::vector<std::string> tsv;
};

struct Report {
  std::vector<Row> rows;
  bool cap_exhausted = false;

  void fact(std::string text, std::vector<std::string> tsv) {
    rows.push_back({"FACT", std::move(text), std::move(tsv)});
  }
  void indet(std::string text, std::vector<std::string> tsv) {
    rows.push_back({"INDET", std::move(text), std::move(tsv)});
  }
  void note(std::string text, std::vector<std::string> tsv) {
    rows.push_back({"NOTE", std::move(text), std::move(tsv)});
  }
};

std::string pt(const Point& p) { return print_canonical(p); }

std::string point_set(const std::vector<Point>& ps) {
  std::string s = "{";
  for (size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ", ";
    s += pt(ps[i]);
  }
  return s + "}";
}

std::string node_set(const std::vector<setdyn::Node>& ns) {
  std::string s = "{";
  for (size_t i = 0; i < ns.size(); ++i) {
    if (i) s += ", ";
    s += setdyn::to_string(ns[i]);
  }
  return s + "}";
}

SourceText load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return SourceText{ss.str(), path};
}

Point point_flag(const std::string& raw) {
  return parse_point(SourceText{raw, "<flag>"});
}

// ---- command handlers ----

void cmd_jacobian(const PolyMap& f, Report& rep) {
  MultiPoly j = jacobian_det(f);
  rep.fact("jacobian " + print_canonical(j), {"jacobian", print_canonical(j)});
}

void cmd_classify(const PolyMap& f, Report& rep) {
  MapClassification c = classify(f);
  switch (c.kind) {
    case MapKind::JacobianPair:
      rep.fact("jacobian constant " + c.jacobian.constant_value().str() + "; JacobianPair",
               {"jacobian", "constant " + c.jacobian.constant_value().str(),
                "JacobianPair"});
      break;
    case MapKind::NonConstantJacobian:
      rep.fact("jacobian nonconstant; NonConstantJacobian",
               {"jacobian", "nonconstant", "NonConstantJacobian"});
      break;
    case MapKind::DegenerateJacobian:
      rep.fact("jacobian zero; DegenerateJacobian",
               {"jacobian", "zero", "DegenerateJacobian"});
      break;
  }
}

void cmd_fiber(const PolyMap& f, const Point& target, const FiberOptions& opts, Report& rep) {
  FiberResult r = solve_fiber(f, target, opts);
  switch (r.status) {
    case FiberStatus::Empty:
      rep.fact("fiber " + pt(target) + " Empty", {"fiber", pt(target), "Empty"});
      break;
    case FiberStatus::Infinite:
      rep.fact("fiber " + pt(target) + " Infinite", {"fiber", pt(target), "Infinite"});
      break;
    case FiberStatus::Finite:
      rep.fact("fiber " + pt(target) + " Finite", {"fiber", pt(target), "Finite"});
      if (r.certified) {
        rep.fact("distinct solutions over C = " + std::to_string(r.distinct_count_over_C),
                 {"distinct_count_over_C", std::to_string(r.distinct_count_over_C)});
      } else {
        rep.indet("distinct solutions over C >= " +
                      std::to_string(r.distinct_count_over_C) + " (uncertified)",
                  {"distinct_count_over_C", ">=" + std::to_string(r.distinct_count_over_C)});
      }
      for (const Point& s : r.rational_solutions)
        rep.fact("rational solution " + pt(s), {"rational_solution", pt(s)});
      if (!r.enumeration_complete)
        rep.note("rational enumeration partial (budget reached)",
                 {"rational_enumeration", "partial"});
      break;
  }
}

void cmd_image_test(const PolyMap& f, const Point& target, const FiberOptions& opts,
                    Report& rep) {
  if (in_image(f, target, opts))
    rep.fact("point " + pt(target) + " in image", {"point", pt(target), "in image"});
  else
    rep.fact("point " + pt(target) + " NOT in image",
             {"point", pt(target), "NOT in image"});
}

void cmd_coimage(const PolyMap& f, const FiberOptions& opts, Report& rep) {
  CoimageReport r = coimage_candidates(f, opts);
  for (const Point& c : r.candidates) {
    bool omitted = std::find(r.certified_coimage.begin(), r.certified_coimage.end(), c) !=
                   r.certified_coimage.end();
    if (omitted)
      rep.fact("coimage point " + pt(c), {"coimage_point", pt(c)});
    else
      rep.note("candidate " + pt(c) + " in image", {"candidate", pt(c), "in image"});
  }
  if (r.certified_coimage.empty())
    rep.note("no coimage point certified", {"coimage", "none certified"});
  if (r.exhausted)
    rep.note("candidates exhausted", {"search", "candidates exhausted"});
  else
    rep.note("search truncated", {"search", "truncated"});
}

void cmd_stabilize(const PolyMap& f, std::vector<Point> candidates, bool auto_candidates,
                   int k_max, const FiberOptions& opts, Report& rep) {
  if (auto_candidates) {
    CoimageReport cr = coimage_candidates(f, opts);
    candidates = cr.certified_coimage;
    rep.note("candidates from coimage search: " + point_set(candidates),
             {"candidates", point_set(candidates)});
  }
  StabilizationReport r = stabilization_report(f, std::move(candidates), k_max, opts);
  for (size_t k = 1; k <= r.chain.size(); ++k) {
    rep.fact("E-hat^" + std::to_string(k) + " = " + point_set(r.chain[k - 1]),
             {"E-hat^" + std::to_string(k), point_set(r.chain[k - 1])});
    for (const Point& p : r.indeterminate[k - 1])
      rep.indet("point " + pt(p) + " unresolved at level " + std::to_string(k),
                {"unresolved", pt(p), "level " + std::to_string(k)});
  }
  if (r.K) {
    rep.fact("stabilization K=" + std::to_string(*r.K),
             {"stabilization_K", std::to_string(*r.K)});
  } else {
    rep.note("stabilization not reached within k_max=" + std::to_string(k_max),
             {"stabilization", "not reached", "k_max=" + std::to_string(k_max)});
    rep.cap_exhausted = true;
  }
  rep.note(r.stable_image_note, {"note", r.stable_image_note});
}

void cmd_witness(const PolyMap& f, std::vector<Point> targets, bool auto_probe,
                 const FiberOptions& opts, Report& rep) {
  auto w = injectivity_witness_search(f, std::move(targets), auto_probe, opts);
  if (w) {
    rep.fact("witness " + pt(w->first) + " and " + pt(w->second) + " map to " +
                 pt(w->common_image),
             {"witness", pt(w->first), pt(w->second), pt(w->common_image)});
  } else {
    rep.note("no rational witness among probed targets (not an injectivity proof)",
             {"witness", "none"});
  }
}

void cmd_dyn_stability(const setdyn::CofiniteSelfMap& spec, Report& rep) {
  setdyn::StabilityResult r = setdyn::is_stable(spec);
  if (r.stable)
    rep.fact("stable K=" + std::to_string(r.K) + " E^K=" + node_set(r.e_K),
             {"stable", "K=" + std::to_string(r.K), node_set(r.e_K)});
  else
    rep.fact("not stable e=" + setdyn::to_string(*r.witness),
             {"not_stable", "e=" + setdyn::to_string(*r.witness)});
}

void cmd_dyn_witness(const setdyn::CofiniteSelfMap& spec, Report& rep) {
  setdyn::Lemma1Witness w = setdyn::lemma1_witness(spec);
  rep.fact("e=" + setdyn::to_string(w.e) + " M=" + std::to_string(w.M),
           {"e=" + setdyn::to_string(w.e), "M=" + std::to_string(w.M)});
  std::string orbit;
  for (size_t i = 0; i < w.orbit_prefix.size(); ++i) {
    if (i) orbit += " ";
    orbit += setdyn::to_string(w.orbit_prefix[i]);
  }
  rep.note("orbit prefix: " + orbit, {"orbit_prefix", orbit});
}

void cmd_dyn_oracle(const setdyn::CofiniteSelfMap& spec, int k_max, long long n_max,
                    Report& rep) {
  if (n_max <= 0) n_max = spec.max_override_coord() + 2 * k_max + 8;
  auto oracle = setdyn::truncation_oracle(spec, k_max, n_max);
  const long long safe = n_max - k_max;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<setdyn::Node> exact;
    for (const setdyn::Node& n : setdyn::e_set(spec, k))
      if (n.is_core() || n.pos < safe) exact.push_back(n);
    bool agree = exact == oracle[k - 1];
    rep.fact("oracle k=" + std::to_string(k) + " E^" + std::to_string(k) + "=" +
                 node_set(oracle[k - 1]) + " agree=" + (agree ? "yes" : "no"),
             {"oracle", "k=" + std::to_string(k), node_set(oracle[k - 1]),
              std::string("agree=") + (agree ? "yes" : "no")});
  }
}

void emit(const Report& rep, bool tsv, std::ostream& out) {
  for (const Row& row : rep.rows) {
    if (tsv) {
      out << row.tag;
      for (const auto& cell : row.tsv) out << '\t' << cell;
      out << '\n';
    } else {
      out << row.tag << ' ' << row.text << '\n';
    }
  }
}

int exit_code(const Report& rep) {
  if (rep.cap_exhausted) return 3;
  bool any_fact = false;
  bool any_indet = false;
  for (const Row& r : rep.rows) {
    if (r.tag == "FACT") any_fact = true;
    if (r.tag == "INDET") any_indet = true;
  }
  if (!any_fact && any_indet) return 2;
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact image dynamics for plane polynomial maps"};
  app.name("stable-image");
  app.require_subcommand(1);

  struct Common {
    std::string file;
    unsigned long long seed = 0x51ab1eULL;
    int degree_cap = kDefaultDegreeCap;
    bool tsv = false;
  };
  auto common = std::make_shared<Common>();
  app.add_option("--seed", common->seed, "shear generator seed");
  app.add_option("--degree-cap", common->degree_cap, "total degree cap");
  app.add_flag("--tsv", common->tsv, "tab-separated FACT lines");
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", common->file, "input file")->required();
    sub->add_option("--seed", common->seed, "shear generator seed");
    sub->add_option("--degree-cap", common->degree_cap, "total degree cap");
    sub->add_flag("--tsv", common->tsv, "tab-separated FACT lines");
  };

  std::string point_raw;
  int n_bound = 0;
  int k_max = 8;
  long long n_max = 0;
  std::vector<std::string> candidate_raw;
  std::vector<std::string> target_raw;
  bool auto_probe = false;

  CLI::App* c_jacobian = app.add_subcommand("jacobian", "print the jacobian determinant");
  add_common(c_jacobian);
  CLI::App* c_classify = app.add_subcommand("classify", "jacobian-pair classification");
  add_common(c_classify);
  CLI::App* c_fiber = app.add_subcommand("fiber", "solve f(x,y) = (a,b)");
  add_common(c_fiber);
  c_fiber->add_option("--point", point_raw, "target point a,b")->required();
  CLI::App* c_amem = app.add_subcommand("a-membership", "at most n preimages?");
  add_common(c_amem);
  c_amem->add_option("--point", point_raw, "target point a,b")->required();
  c_amem->add_option("--n", n_bound, "preimage bound")->required();
  CLI::App* c_image = app.add_subcommand("image-test", "is the point in the image?");
  add_common(c_image);
  c_image->add_option("--point", point_raw, "target point a,b")->required();
  CLI::App* c_coimage = app.add_subcommand("coimage", "search certified non-image points");
  add_common(c_coimage);
  CLI::App* c_stab = app.add_subcommand("stabilize", "iterated-image chain over candidates");
  add_common(c_stab);
  c_stab->add_option("--candidate", candidate_raw, "candidate point a,b (repeatable)");
  c_stab->add_option("--k-max", k_max, "probe depth");
  CLI::App* c_witness = app.add_subcommand("witness", "non-injectivity witness search");
  add_common(c_witness);
  c_witness->add_option("--target", target_raw, "target point a,b (repeatable)");
  c_witness->add_flag("--auto-probe", auto_probe, "also scan the height<=5 grid");
  CLI::App* c_dstab = app.add_subcommand("dyn-stability", "e-set chain stability");
  add_common(c_dstab);
  CLI::App* c_dwit = app.add_subcommand("dyn-witness", "instability witness e and M(e)");
  add_common(c_dwit);
  CLI::App* c_doracle = app.add_subcommand("dyn-oracle", "truncated e-set oracle");
  add_common(c_doracle);
  c_doracle->add_option("--k-max", k_max, "levels to compute");
  c_doracle->add_option("--n-max", n_max, "truncation size (0 = automatic)");

  std::vector<std::string> argv = args;
  try {
    app.parse(std::vector<std::string>(argv.rbegin(), argv.rend()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (const char* env = std::getenv("STABLE_IMAGE_SEED")) {
    try {
      common->seed = std::stoull(env);
    } catch (...) {
      err << "ERR bad STABLE_IMAGE_SEED value\n";
      return 1;
    }
  }

  FiberOptions opts;
  opts.seed = common->seed;
  opts.degree_cap = common->degree_cap;

  Report rep;
  try {
    if (app.got_subcommand(c_jacobian)) {
      cmd_jacobian(parse_map(load_file(common->file)), rep);
    } else if (app.got_subcommand(c_classify)) {
      cmd_classify(parse_map(load_file(common->file)), rep);
    } else if (app.got_subcommand(c_fiber)) {
      cmd_fiber(parse_map(load_file(common->file)), point_flag(point_raw), opts, rep);
    } else if (app.got_subcommand(c_amem)) {
      AMembership m =
          a_membership(parse_map(load_file(common->file)), point_flag(point_raw), n_bound, opts);
      switch (m.member) {
        case Membership::Yes:
          rep.fact("point " + pt(m.point) + " has at most " + std::to_string(m.n) +
                       " preimages",
                   {"a_membership", pt(m.point), "n=" + std::to_string(m.n), "yes"});
          break;
        case Membership::No:
          rep.fact("point " + pt(m.point) + " has more than " + std::to_string(m.n) +
                       " preimages",
                   {"a_membership", pt(m.point), "n=" + std::to_string(m.n), "no"});
          break;
        case Membership::Indeterminate:
          rep.indet("membership of " + pt(m.point) + " at n=" + std::to_string(m.n) +
                        " not certified",
                    {"a_membership", pt(m.point), "n=" + std::to_string(m.n),
                     "indeterminate"});
          break;
      }
    } else if (app.got_subcommand(c_image)) {
      cmd_image_test(parse_map(load_file(common->file)), point_flag(point_raw), opts, rep);
    } else if (app.got_subcommand(c_coimage)) {
      cmd_coimage(parse_map(load_file(common->file)), opts, rep);
    } else if (app.got_subcommand(c_stab)) {
      std::vector<Point> cands;
      for (const auto& raw : candidate_raw) cands.push_back(point_flag(raw));
      cmd_stabilize(parse_map(load_file(common->file)), std::move(cands),
                    candidate_raw.empty(), k_max, opts, rep);
    } else if (app.got_subcommand(c_witness)) {
      std::vector<Point> targets;
      for (const auto& raw : target_raw) targets.push_back(point_flag(raw));
      cmd_witness(parse_map(load_file(common->file)), std::move(targets),
                  auto_probe || target_raw.empty(), opts, rep);
    } else if (app.got_subcommand(c_dstab)) {
      cmd_dyn_stability(parse_selfmap_spec(load_file(common->file)), rep);
    } else if (app.got_subcommand(c_dwit)) {
      cmd_dyn_witness(parse_selfmap_spec(load_file(common->file)), rep);
    } else if (app.got_subcommand(c_doracle)) {
      cmd_dyn_oracle(parse_selfmap_spec(load_file(common->file)), k_max, n_max, rep);
    }
  } catch (const cap_error& e) {
    emit(rep, common->tsv, out);
    out << "ERR " << e.what() << '\n';
    return 3;
  } catch (const input_error& e) {
    emit(rep, common->tsv, out);
    out << "ERR " << e.what() << '\n';
    return 1;
  } catch (const error& e) {
    emit(rep, common->tsv, out);
    out << "ERR " << e.what() << '\n';
    return 3;
  }

  emit(rep, common->tsv, out);
  return exit_code(rep);
}

}  // namespace stimg::cli
