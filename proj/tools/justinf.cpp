// Command-line front end: exact computations for the Grigorchuk group, its
// tree-representation algebra, the companion Bratteli diagrams, the ordered
// K0 group, and the model primitive-ideal spaces.
//
// Output is JSON by default (--format plain for key=value lines, dot for
// diagram export). Exit codes: 0 success, 1 domain error, 2 resource cap,
// 3 malformed input.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "justinf/acceptance.hpp"
#include "justinf/algebra.hpp"
#include "justinf/bratteli.hpp"
#include "justinf/caps.hpp"
#include "justinf/errors.hpp"
#include "justinf/grig.hpp"
#include "justinf/io.hpp"
#include "justinf/k0.hpp"
#include "justinf/primspace.hpp"

namespace {

using justinf::Caps;
using justinf::DomainError;
using justinf::ParseError;
using justinf::ResourceError;
namespace alg = justinf::alg;
namespace bratteli = justinf::bratteli;
namespace grig = justinf::grig;
namespace io = justinf::io;
namespace k0 = justinf::k0;
namespace space = justinf::space;
using json = nlohmann::json;

struct Options {
  Caps caps;
  std::uint64_t seed = 20250810;
  std::string format = "json";
};

void emit(const Options& opts, const json& j) {
  if (opts.format == "plain") {
    if (j.is_object()) {
      for (const auto& [key, value] : j.items()) {
        std::cout << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump())
                  << "\n";
      }
    } else {
      std::cout << j.dump() << "\n";
    }
    return;
  }
  std::cout << j.dump(2) << "\n";
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

alg::AlgebraElement element_from(const std::string& path) {
  return io::algebra_element_from_json(io::parse(read_input(path)));
}

std::vector<k0::Integer> parse_int_list(const std::string& text) {
  std::vector<k0::Integer> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(k0::Integer(item));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad integer in list: " + item);
    }
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

std::set<int> parse_column_set(const std::string& text) {
  std::set<int> out;
  if (text.empty()) return out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    try {
      out.insert(std::stoi(item));
    } catch (const std::exception&) {
      throw ParseError("bad column in list: " + item);
    }
  }
  return out;
}

// Shared flags for the bratteli subcommands: a diagram source (rule+depth
// or JSON file) and an optional ideal selector.
struct DiagramArgs {
  std::string rule = "y_infty";
  int depth = 6;
  std::string input;  // JSON file overrides the rule
  std::string omit;
  bool left_half = false;
  int avoid_column = 0;
  std::string ideal_input;

  bratteli::BratteliDiagram diagram(const Caps& caps) const {
    if (!input.empty()) return io::diagram_from_json(io::parse(read_input(input)));
    if (depth > caps.depth_cap) {
      throw ResourceError("diagram depth " + std::to_string(depth) + " exceeds depth cap " +
                          std::to_string(caps.depth_cap));
    }
    if (rule == "y_infty") return bratteli::build_y_infty(depth);
    if (rule == "strictly_rfd") return bratteli::build_strictly_rfd(depth);
    throw ParseError("unknown rule: " + rule);
  }

  bool has_ideal() const {
    return !omit.empty() || left_half || avoid_column > 0 || !ideal_input.empty();
  }

  bratteli::DiagramIdeal ideal(const bratteli::BratteliDiagram& d) const {
    int selectors = (!omit.empty() ? 1 : 0) + (left_half ? 1 : 0) + (avoid_column > 0 ? 1 : 0) +
                    (!ideal_input.empty() ? 1 : 0);
    if (selectors != 1) throw ParseError("choose exactly one ideal selector");
    if (!omit.empty()) return bratteli::ideal_from_open_set(d, parse_column_set(omit));
    if (left_half) return bratteli::strictly_rfd_left_ideal(d);
    if (avoid_column > 0) return bratteli::strictly_rfd_column_ideal(d, avoid_column);
    auto u = io::diagram_ideal_from_json(io::parse(read_input(ideal_input)));
    if (u.members.size() != static_cast<std::size_t>(d.depth())) {
      throw ParseError("ideal level count does not match the diagram");
    }
    return u;
  }

  void attach(CLI::App* cmd, bool with_ideal) {
    cmd->add_option("--rule", rule, "diagram family: y_infty or strictly_rfd")
        ->check(CLI::IsMember({"y_infty", "strictly_rfd"}));
    cmd->add_option("--depth", depth, "materialized depth")->check(CLI::Range(1, 64));
    cmd->add_option("--input", input, "read the diagram from a JSON file instead");
    if (with_ideal) {
      cmd->add_option("--omit", omit, "open-set ideal: omitted columns, e.g. 1,3");
      cmd->add_flag("--left-half", left_half, "the left-half ideal (strictly_rfd)");
      cmd->add_option("--avoid-column", avoid_column,
                      "largest ideal avoiding a left column (strictly_rfd)");
      cmd->add_option("--ideal-input", ideal_input, "read the ideal from a JSON file");
    }
  }
};

json limit_to_json(const bratteli::LimitDimension& lim) {
  switch (lim.kind) {
    case bratteli::LimitDimension::Kind::finite:
      return json{{"kind", "finite"}, {"dims", lim.dims}};
    case bratteli::LimitDimension::Kind::infinite:
      return json{{"kind", "infinite"}};
    default:
      return json{{"kind", "undetermined"}};
  }
}

int dispatch(int argc, char** argv) {
  Options opts;
  CLI::App app{
      "justinf: exact computations around a self-similar group, its tree "
      "representation algebra, and the companion AF-algebra data"};
  app.require_subcommand(1);
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "plain", "dot"}))
      ->envname("JUSTINF_FORMAT");
  app.add_option("--seed", opts.seed, "seed for the randomized suites")
      ->envname("JUSTINF_SEED");
  app.add_option("--depth-cap", opts.caps.depth_cap, "matrix recursion depth cap")
      ->envname("JUSTINF_DEPTH_CAP");
  app.add_option("--group-level-cap", opts.caps.group_level_cap,
                 "permutation-group BFS level cap")
      ->envname("JUSTINF_GROUP_LEVEL_CAP");
  app.add_option("--matrix-level-cap", opts.caps.matrix_level_cap, "dense level-matrix cap")
      ->envname("JUSTINF_MATRIX_LEVEL_CAP");
  app.add_option("--enum-cap", opts.caps.ideal_enum_vertex_cap,
                 "ideal enumeration vertex cap")
      ->envname("JUSTINF_ENUM_CAP");
  app.add_option_function<std::vector<std::string>>(
         "--cap-override",
         [&opts](const std::vector<std::string>& pairs) {
           for (const std::string& p : pairs) {
             auto eq = p.find('=');
             if (eq == std::string::npos) throw ParseError("--cap-override expects name=value");
             std::string name = p.substr(0, eq);
             int value = 0;
             try {
               value = std::stoi(p.substr(eq + 1));
             } catch (const std::exception&) {
               throw ParseError("bad cap value in " + p);
             }
             if (name == "depth") {
               opts.caps.depth_cap = value;
             } else if (name == "group-level") {
               opts.caps.group_level_cap = value;
             } else if (name == "matrix-level") {
               opts.caps.matrix_level_cap = value;
             } else if (name == "enum") {
               opts.caps.ideal_enum_vertex_cap = value;
             } else {
               throw ParseError("unknown cap: " + name);
             }
           }
         },
         "override a cap: depth|group-level|matrix-level|enum =value");

  // ---- grig ----------------------------------------------------------
  auto* cmd_grig = app.add_subcommand("grig", "group engine")->fallthrough();
  cmd_grig->require_subcommand(1);

  static std::string word_a, word_b, vertex;
  static int level = 1, max_exponent = 12, sigma_times = 1, relator_family = 0, relator_k = 0;
  static int lift_max_length = 8;

  auto* g_norm = cmd_grig->add_subcommand("normalize", "reduced normal form")->fallthrough();
  g_norm->add_option("word", word_a)->required();
  g_norm->callback([&] {
    auto g = grig::normalize(word_a);
    emit(opts, {{"input", word_a}, {"normal_form", g.word()}});
  });

  auto* g_wreath = cmd_grig->add_subcommand("wreath", "first-level sections and activity")->fallthrough();
  g_wreath->add_option("word", word_a)->required();
  g_wreath->callback([&] { emit(opts, io::to_json(grig::wreath(grig::normalize(word_a)))); });

  auto* g_section = cmd_grig->add_subcommand("section", "section at a binary vertex")->fallthrough();
  g_section->add_option("word", word_a)->required();
  g_section->add_option("vertex", vertex)->required();
  g_section->callback([&] {
    emit(opts, {{"section", grig::section(grig::normalize(word_a), vertex).word()}});
  });

  auto* g_triv = cmd_grig->add_subcommand("trivial", "word problem")->fallthrough();
  g_triv->add_option("word", word_a)->required();
  g_triv->callback([&] {
    emit(opts, {{"word", word_a}, {"trivial", grig::is_trivial(grig::normalize(word_a))}});
  });

  auto* g_equal = cmd_grig->add_subcommand("equal", "equality in the group")->fallthrough();
  g_equal->add_option("word1", word_a)->required();
  g_equal->add_option("word2", word_b)->required();
  g_equal->callback([&] {
    emit(opts, {{"equal", grig::equal(grig::normalize(word_a), grig::normalize(word_b))}});
  });

  auto* g_order = cmd_grig->add_subcommand("order", "order by repeated squaring")->fallthrough();
  g_order->add_option("word", word_a)->required();
  g_order->add_option("--max-exponent", max_exponent);
  g_order->callback([&] {
    auto ord = grig::order(grig::normalize(word_a), max_exponent);
    if (ord) {
      emit(opts, {{"word", word_a}, {"order", *ord}});
    } else {
      emit(opts, {{"word", word_a}, {"overflow", true}, {"max_exponent", max_exponent}});
    }
  });

  auto* g_perm = cmd_grig->add_subcommand("perm", "level permutation")->fallthrough();
  g_perm->add_option("word", word_a)->required();
  g_perm->add_option("--level", level)->required();
  g_perm->callback(
      [&] { emit(opts, io::to_json(grig::level_permutation(grig::normalize(word_a), level))); });

  auto* g_lift1 = cmd_grig->add_subcommand("lift-first", "preimage for the first coordinate")->fallthrough();
  g_lift1->add_option("word", word_a)->required();
  g_lift1->callback([&] {
    auto g = grig::lift_first(grig::normalize(word_a));
    emit(opts, {{"lift", g.word()}, {"wreath", io::to_json(grig::wreath(g))}});
  });

  auto* g_lift2 = cmd_grig->add_subcommand("lift-second", "preimage for the second coordinate")->fallthrough();
  g_lift2->add_option("word", word_a)->required();
  g_lift2->callback([&] {
    auto g = grig::lift_second(grig::normalize(word_a));
    emit(opts, {{"lift", g.word()}, {"wreath", io::to_json(grig::wreath(g))}});
  });

  auto* g_sigma = cmd_grig->add_subcommand("sigma", "substitution a->aca, b->d, c->b, d->c")->fallthrough();
  g_sigma->add_option("word", word_a)->required();
  g_sigma->add_option("--times", sigma_times)->check(CLI::Range(0, 16));
  g_sigma->callback([&] {
    emit(opts, {{"result", grig::sigma(grig::normalize(word_a), sigma_times).word()}});
  });

  auto* g_rel = cmd_grig->add_subcommand("relator", "presentation relator")->fallthrough();
  g_rel->add_option("--family", relator_family)->check(CLI::Range(0, 1));
  g_rel->add_option("--k", relator_k)->check(CLI::Range(0, 12));
  g_rel->callback([&] {
    auto r = grig::lysenok_relator(relator_family, relator_k);
    emit(opts, {{"word", r.word()}, {"trivial", grig::is_trivial(r)}});
  });

  auto* g_quot = cmd_grig->add_subcommand("quotient-order", "order of the level quotient")->fallthrough();
  g_quot->add_option("--level", level)->required();
  g_quot->callback(
      [&] { emit(opts, {{"level", level}, {"order", grig::level_quotient_order(level, opts.caps)}}); });

  auto* g_idx = cmd_grig->add_subcommand("closure-index", "index of the normal closure")->fallthrough();
  g_idx->add_option("word", word_a)->required();
  g_idx->add_option("--level", level)->required();
  g_idx->callback([&] {
    emit(opts, {{"level", level},
                {"index", grig::normal_closure_index(grig::normalize(word_a), level, opts.caps)}});
  });

  auto* g_find = cmd_grig->add_subcommand("find-lift", "bounded search for (target, 1) preimages")->fallthrough();
  g_find->add_option("word", word_a)->required();
  g_find->add_option("--max-length", lift_max_length)->check(CLI::Range(0, 12));
  g_find->callback([&] {
    auto found = grig::search_section_preimage(grig::normalize(word_a), lift_max_length);
    if (found) {
      emit(opts, {{"found", true}, {"lift", found->word()}});
    } else {
      emit(opts, {{"found", false}, {"max_length", lift_max_length}});
    }
  });

  // ---- algebra -------------------------------------------------------
  auto* cmd_alg = app.add_subcommand("algebra", "tree representation algebra")->fallthrough();
  cmd_alg->require_subcommand(1);

  static std::string input_path = "-";
  static int alg_level = 2, alg_depth = 1;

  auto* a_kernel = cmd_alg->add_subcommand("kernel-test", "decide kernel membership")->fallthrough();
  a_kernel->add_option("--input", input_path, "algebra element JSON (default stdin)");
  a_kernel->callback([&] {
    auto cert = alg::is_zero_in_B(element_from(input_path), opts.caps);
    json out{{"in_kernel", cert.in_kernel}, {"depth", cert.depth}};
    if (!cert.in_kernel) {
      out["witness"] = json{{"row", cert.row}, {"col", cert.col}, {"entry", io::to_json(cert.entry)}};
    }
    emit(opts, out);
  });

  auto* a_scalar = cmd_alg->add_subcommand("scalar-entry", "minimal scalar entry witness")->fallthrough();
  a_scalar->add_option("--input", input_path);
  a_scalar->callback([&] {
    auto w = alg::find_scalar_entry(element_from(input_path), opts.caps);
    emit(opts, {{"depth", w.depth},
                {"row", w.row},
                {"col", w.col},
                {"lambda", alg::rational_to_string(w.lambda)}});
  });

  auto* a_pi = cmd_alg->add_subcommand("pi-matrix", "exact level matrix")->fallthrough();
  a_pi->add_option("--level", alg_level)->required();
  a_pi->add_option("--input", input_path);
  a_pi->callback(
      [&] { emit(opts, io::to_json(alg::pi_level(element_from(input_path), alg_level, opts.caps))); });

  auto* a_comm = cmd_alg->add_subcommand("commutant", "commutant dimension at a level")->fallthrough();
  a_comm->add_option("--level", alg_level)->required();
  a_comm->callback([&] {
    emit(opts, {{"level", alg_level}, {"dimension", alg::commutant_dimension(alg_level, opts.caps)}});
  });

  auto* a_rank = cmd_alg->add_subcommand("nucleus-rank", "rank of the five nucleus images")->fallthrough();
  a_rank->add_option("--level", alg_level)->required();
  a_rank->callback([&] {
    emit(opts, {{"level", alg_level}, {"rank", alg::nucleus_rank_at_level(alg_level, opts.caps)}});
  });

  auto* a_expand = cmd_alg->add_subcommand("expand", "iterated matrix recursion")->fallthrough();
  a_expand->add_option("--depth", alg_depth)->required();
  a_expand->add_option("--input", input_path);
  a_expand->callback(
      [&] { emit(opts, io::to_json(alg::psi_iterate(element_from(input_path), alg_depth, opts.caps))); });

  auto* a_reduce = cmd_alg->add_subcommand("reduce", "reduce to nucleus span")->fallthrough();
  a_reduce->add_option("--input", input_path);
  a_reduce->callback([&] {
    auto red = alg::reduce_to_nucleus(element_from(input_path), opts.caps);
    emit(opts, {{"depth", red.depth}, {"matrix", io::to_json(red.matrix)}});
  });

  auto* a_rigid = cmd_alg->add_subcommand("rigid-kernel", "(1-g1)(1-g2) for rigid stabilizers")->fallthrough();
  a_rigid->add_option("g1", word_a)->required();
  a_rigid->add_option("g2", word_b)->required();
  a_rigid->callback([&] {
    auto x = alg::rigid_kernel_element(grig::normalize(word_a), grig::normalize(word_b));
    emit(opts, {{"element", io::to_json(x)},
                {"in_kernel", alg::is_zero_in_B(x, opts.caps).in_kernel}});
  });

  auto* a_delta = cmd_alg->add_subcommand("delta", "ideal generator k - 1")->fallthrough();
  a_delta->add_option("word", word_a)->required();
  a_delta->callback(
      [&] { emit(opts, io::to_json(alg::delta_generator(grig::normalize(word_a)))); });

  // ---- bratteli ------------------------------------------------------
  auto* cmd_bra = app.add_subcommand("bratteli", "diagrams, ideals, quotients")->fallthrough();
  cmd_bra->require_subcommand(1);

  static DiagramArgs b_build, b_ideal, b_ideals, b_quot, b_limit, b_sizes, b_ess, b_dot;
  static int enum_depth = 3, horizon = 0, j_max = 8;

  auto* br_build = cmd_bra->add_subcommand("build", "materialize a diagram")->fallthrough();
  b_build.attach(br_build, false);
  br_build->callback([&] {
    auto d = b_build.diagram(opts.caps);
    if (opts.format == "dot") {
      std::cout << bratteli::to_dot(d);
    } else {
      emit(opts, io::to_json(d));
    }
  });

  auto* br_ideal = cmd_bra->add_subcommand("ideal", "construct a named ideal")->fallthrough();
  b_ideal.attach(br_ideal, true);
  br_ideal->callback([&] {
    auto d = b_ideal.diagram(opts.caps);
    auto u = b_ideal.ideal(d);
    json out = io::to_json(u);
    out["is_ideal"] = bratteli::is_ideal(d, u.members);
    emit(opts, out);
  });

  auto* br_ideals = cmd_bra->add_subcommand("ideals", "enumerate ideals by brute force")->fallthrough();
  b_ideals.attach(br_ideals, false);
  br_ideals->add_option("--enum-depth", enum_depth, "truncation depth for the scan");
  br_ideals->callback([&] {
    auto d = b_ideals.diagram(opts.caps);
    int at = enum_depth > 0 ? enum_depth : d.depth();
    auto ideals = bratteli::enumerate_ideals(d, at, opts.caps);
    json list = json::array();
    for (const auto& u : ideals) list.push_back(io::to_json(u));
    emit(opts, {{"count", ideals.size()}, {"ideals", list}});
  });

  auto* br_quot = cmd_bra->add_subcommand("quotient", "quotient diagram")->fallthrough();
  b_quot.attach(br_quot, true);
  br_quot->callback([&] {
    auto d = b_quot.diagram(opts.caps);
    auto q = bratteli::quotient(d, b_quot.ideal(d));
    if (opts.format == "dot") {
      std::cout << bratteli::to_dot(q);
    } else {
      emit(opts, io::to_json(q));
    }
  });

  auto* br_limit = cmd_bra->add_subcommand("limit-dim", "limit dimension semi-decision")->fallthrough();
  b_limit.attach(br_limit, true);
  br_limit->add_option("--horizon", horizon, "default: the materialized depth");
  br_limit->callback([&] {
    auto d = b_limit.diagram(opts.caps);
    if (b_limit.has_ideal()) d = bratteli::quotient(d, b_limit.ideal(d));
    int at = horizon > 0 ? horizon : d.depth();
    emit(opts, limit_to_json(bratteli::limit_dimension(d, at)));
  });

  auto* br_sizes = cmd_bra->add_subcommand("primitive-sizes", "characteristic sequence")->fallthrough();
  b_sizes.attach(br_sizes, false);
  br_sizes->add_option("--jmax", j_max)->check(CLI::Range(1, 32));
  br_sizes->callback([&] {
    auto d = b_sizes.diagram(opts.caps);
    emit(opts, {{"sizes", bratteli::primitive_quotient_sizes(d, j_max)}});
  });

  auto* br_ess = cmd_bra->add_subcommand("essential", "essentiality up to a horizon")->fallthrough();
  b_ess.attach(br_ess, true);
  br_ess->add_option("--enum-depth", enum_depth);
  br_ess->callback([&] {
    auto d = b_ess.diagram(opts.caps);
    auto u = b_ess.ideal(d);
    emit(opts, {{"essential", bratteli::is_essential(d, u, enum_depth, opts.caps)},
                {"enum_depth", enum_depth}});
  });

  static bool mark_ideal = false;
  auto* br_dot = cmd_bra->add_subcommand("export-dot", "DOT export, optionally marking an ideal")->fallthrough();
  b_dot.attach(br_dot, true);
  br_dot->add_flag("--mark", mark_ideal, "highlight the selected ideal's vertices");
  br_dot->callback([&] {
    auto d = b_dot.diagram(opts.caps);
    if (mark_ideal || b_dot.has_ideal()) {
      auto u = b_dot.ideal(d);
      std::cout << bratteli::to_dot(d, &u);
    } else {
      std::cout << bratteli::to_dot(d);
    }
  });

  // ---- k0 ------------------------------------------------------------
  auto* cmd_k0 = app.add_subcommand("k0", "ordered K0 of the canonical diagram")->fallthrough();
  cmd_k0->require_subcommand(1);

  static std::string vec_a, vec_b;
  static int push_to = 0, model_terms = 10;

  auto* k_unit = cmd_k0->add_subcommand("unit", "the order unit")->fallthrough();
  k_unit->add_option("--terms", model_terms)->check(CLI::Range(1, 64));
  k_unit->callback([&] {
    emit(opts, io::to_json(k0::rho_model(k0::order_unit()), model_terms));
  });

  auto* k_push = cmd_k0->add_subcommand("push", "pushforward along the connecting maps")->fallthrough();
  k_push->add_option("vector", vec_a, "comma-separated integers")->required();
  k_push->add_option("--to", push_to)->required()->check(CLI::Range(1, 64));
  k_push->callback([&] {
    k0::K0Element x(parse_int_list(vec_a));
    if (push_to < x.level()) throw DomainError("cannot push below the canonical level");
    auto v = k0::push(x, push_to);
    json out = json::array();
    for (const auto& c : v) out.push_back(c.get_str());
    emit(opts, {{"level", push_to}, {"vector", out}});
  });

  auto* k_pos = cmd_k0->add_subcommand("positive", "positivity in the limit order")->fallthrough();
  k_pos->add_option("vector", vec_a)->required();
  k_pos->callback([&] {
    emit(opts, {{"positive", k0::is_positive(k0::K0Element(parse_int_list(vec_a)))}});
  });

  auto* k_eq = cmd_k0->add_subcommand("equal", "equality of K0 classes")->fallthrough();
  k_eq->add_option("vector1", vec_a)->required();
  k_eq->add_option("vector2", vec_b)->required();
  k_eq->callback([&] {
    emit(opts, {{"equal", k0::equal(k0::K0Element(parse_int_list(vec_a)),
                                    k0::K0Element(parse_int_list(vec_b)))}});
  });

  auto* k_model = cmd_k0->add_subcommand("model", "model sequence of a class")->fallthrough();
  k_model->add_option("vector", vec_a)->required();
  k_model->add_option("--terms", model_terms)->check(CLI::Range(0, 64));
  k_model->callback([&] {
    emit(opts, io::to_json(k0::rho_model(k0::K0Element(parse_int_list(vec_a))), model_terms));
  });

  // ---- space ---------------------------------------------------------
  auto* cmd_space = app.add_subcommand("space", "finite model spaces")->fallthrough();
  cmd_space->require_subcommand(1);

  static int yn = 2;
  static std::string space_input = "-";

  auto* s_build = cmd_space->add_subcommand("build-yn", "the model space with n closed points")->fallthrough();
  s_build->add_option("--n", yn)->required()->check(CLI::Range(0, 20));
  s_build->callback([&] { emit(opts, io::to_json(space::build_yn(yn))); });

  auto* s_check = cmd_space->add_subcommand("check", "lattice, T0 and spectral checks")->fallthrough();
  s_check->add_option("--input", space_input);
  s_check->callback([&] {
    auto s = io::space_from_json(io::parse(read_input(space_input)));
    emit(opts, {{"lattice", true},  // construction validates the lattice and T0
                {"t0", true},
                {"spectral", space::is_spectral(s)}});
  });

  auto* s_classify = cmd_space->add_subcommand("classify", "recognize a model space")->fallthrough();
  s_classify->add_option("--input", space_input);
  s_classify->callback([&] {
    auto s = io::space_from_json(io::parse(read_input(space_input)));
    auto n = space::classify_yn(s);
    emit(opts, {{"yn", n ? json(*n) : json(nullptr)}});
  });

  // ---- verify-paper ---------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify-paper", "run the verification battery")->fallthrough();
  cmd_verify->callback([&] {
    auto results = justinf::acceptance::run_battery(opts.seed);
    int failures = 0;
    if (opts.format == "json") {
      json list = json::array();
      for (const auto& r : results) {
        list.push_back(json{{"id", r.id}, {"pass", r.pass}, {"title", r.title},
                            {"detail", r.detail}});
        if (!r.pass) ++failures;
      }
      emit(opts, {{"seed", opts.seed}, {"criteria", list}, {"failures", failures}});
    } else {
      for (const auto& r : results) {
        std::cout << r.id << (r.id.size() < 4 ? "  " : " ") << (r.pass ? "PASS" : "FAIL") << "  "
                  << r.title;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
        if (!r.pass) ++failures;
      }
      std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << "\n";
    }
    if (failures > 0) throw DomainError(std::to_string(failures) + " criteria failed");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", {{"kind", "parse"}, {"message", e.what()}}}}.dump(2) << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ResourceError& e) {
    std::cout << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cout << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cout << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump(2) << "\n";
    return 1;
  }
}
