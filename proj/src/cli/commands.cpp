#include "quivhom/cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "quivhom/errors.hpp"
#include "quivhom/p1_sheaf.hpp"
#include "quivhom/resolution.hpp"
#include "quivhom/twisted_rep.hpp"

namespace quivhom::cli {

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static auto log = [] {
    auto l = std::make_shared<spdlog::logger>(
        "quivhom", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[%l] %v");
    l->set_level(spdlog::level::off);
    return l;
  }();
  return log;
}

void configure_logging(std::ostream& err) {
  const char* env = std::getenv("QUIVHOM_LOG");
  const std::string level = env ? env : "quiet";
  if (level == "quiet")
    logger()->set_level(spdlog::level::off);
  else if (level == "info")
    logger()->set_level(spdlog::level::info);
  else if (level == "debug")
    logger()->set_level(spdlog::level::debug);
  else
    err << "warning: QUIVHOM_LOG=" << level << " is not quiet|info|debug; logging stays off\n";
}

class Timer {
public:
  explicit Timer(std::string what) : what_(std::move(what)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_);
    logger()->debug("{} took {:.1f} ms", what_, ms.count());
  }

private:
  std::string what_;
  std::chrono::steady_clock::time_point start_;
};

Json header(const std::string& command, const Instance& inst, const CommandOptions& o,
            bool two_modules) {
  Json r = Json::object();
  r["command"] = command;
  Json args = Json::object();
  args["file"] = o.file;
  args["V"] = o.module_v;
  if (two_modules)
    args["W"] = o.module_w;
  r["args"] = args;
  r["instance"] = Json{{"digest", instance_digest(inst.document)},
                       {"field", inst.field.name()},
                       {"mode", to_string(inst.mode)},
                       {"vertices", inst.quiver.vertex_count()},
                       {"arrows", inst.quiver.arrow_count()}};
  return r;
}

Json term(const std::string& name, std::size_t dim) { return Json{{"term", name}, {"dim", dim}}; }
Json map_rank(const std::string& name, std::size_t rank) {
  return Json{{"map", name}, {"rank", rank}};
}

Json matrix_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(scalar_to_json(m.field(), m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json form_matrix_json(const FormMatrix& f) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < f.target().rank(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < f.source().rank(); ++c) {
      Json coeffs = Json::array();
      for (const auto& x : f.entry(r, c).coeffs)
        coeffs.push_back(scalar_to_json(f.field(), x));
      row.push_back(coeffs);
    }
    rows.push_back(row);
  }
  return rows;
}

CommandResult ext_vector(const Instance& inst, const CommandOptions& o) {
  const TwistedRep& V = inst.vector_module(o.module_v);
  const TwistedRep& W = inst.vector_module(o.module_w);
  Timer t("ext (vector)");
  const ExactMatrix D = delta_matrix(V, W);
  logger()->debug("delta is {}x{}", D.rows(), D.cols());
  const std::size_t r = rank(D);
  const std::size_t hom = D.cols() - r;
  const std::size_t ext1 = D.rows() - r;

  Json res = Json::object();
  res["ext0"] = hom;
  res["ext1"] = ext1;
  res["ext2"] = 0;
  res["hom_vertices"] = D.cols();
  res["hom_arrows"] = D.rows();
  res["rank_delta"] = r;

  Json seq = Json::array();
  seq.push_back(term("Hom_A(V,W)", hom));
  seq.push_back(term("(+)_i Hom(V_i,W_i)", D.cols()));
  seq.push_back(map_rank("delta", r));
  seq.push_back(term("(+)_a Hom(M_a(x)V_ta,W_ha)", D.rows()));
  seq.push_back(term("Ext^1_A(V,W)", ext1));

  CommandResult out;
  out.report = header("ext", inst, o, true);
  out.report["result"] = res;
  out.report["sequence"] = seq;
  if (o.bases) {
    Json hb = Json::array();
    for (const auto& f : hom_space(V, W)) {
      Json per_vertex = Json::array();
      for (const auto& m : f.f)
        per_vertex.push_back(matrix_json(m));
      hb.push_back(per_vertex);
    }
    Json eb = Json::array();
    for (const auto& c : ext1_representatives(V, W)) {
      Json per_arrow = Json::array();
      for (const auto& m : arrow_blocks(V, W, c))
        per_arrow.push_back(matrix_json(m));
      eb.push_back(per_arrow);
    }
    out.report["bases"] = Json{{"hom", hb}, {"ext1", eb}};
  }
  return out;
}

Json ext_report_json(const ExtReport& r) {
  return Json{{"ext0", r.ext0},   {"ext1", r.ext1},   {"ext2", r.ext2},
              {"h0_F", r.h0_F},   {"h0_G", r.h0_G},   {"h1_F", r.h1_F},
              {"h1_G", r.h1_G},   {"rank_delta0", r.rank_delta0},
              {"rank_delta1", r.rank_delta1}};
}

CommandResult ext_p1(const Instance& inst, const CommandOptions& o) {
  const QSheafP1& V = inst.p1_module(o.module_v);
  const QSheafP1& W = inst.p1_module(o.module_w);
  Timer t("ext (p1)");
  const ExtReport r = ext_quiver_sheaf(V, W);

  Json seq = Json::array();
  seq.push_back(term("Hom_B(V,W)", r.ext0));
  seq.push_back(term("(+)_i Hom(V_i,W_i)", r.h0_F));
  seq.push_back(map_rank("delta0", r.rank_delta0));
  seq.push_back(term("(+)_a Hom(M_a(x)V_ta,W_ha)", r.h0_G));
  seq.push_back(term("Ext^1_B(V,W)", r.ext1));
  seq.push_back(term("(+)_i Ext^1(V_i,W_i)", r.h1_F));
  seq.push_back(map_rank("delta1", r.rank_delta1));
  seq.push_back(term("(+)_a Ext^1(M_a(x)V_ta,W_ha)", r.h1_G));
  seq.push_back(term("Ext^2_B(V,W)", r.ext2));

  CommandResult out;
  out.report = header("ext", inst, o, true);
  Json res = ext_report_json(r);
  res["euler"] = euler_characteristic(r);
  res["euler_expected"] = euler_expected(V, W);
  out.report["result"] = res;
  out.report["sequence"] = seq;
  if (o.bases) {
    Json hb = Json::array();
    for (const auto& v : kernel_basis(delta0_matrix(V, W))) {
      Json per_vertex = Json::array();
      for (const auto& f : unflatten_sections(V, W, v))
        per_vertex.push_back(form_matrix_json(f));
      hb.push_back(per_vertex);
    }
    out.report["bases"] = Json{{"hom", hb}};
  }
  return out;
}

} // namespace

CommandResult cmd_ext(const Instance& inst, const CommandOptions& o) {
  return inst.mode == Mode::vector ? ext_vector(inst, o) : ext_p1(inst, o);
}

CommandResult cmd_check(const Instance& inst, const CommandOptions& o) {
  if (o.max_degree < 1)
    throw ValidationError("--max-degree", "the exactness check needs N >= 1");
  const TwistedRep& V = inst.vector_module(o.module_v);
  Timer t("check");
  const ResolutionMatrices res = resolution_matrices(V, o.max_degree);
  logger()->debug("resolution terms: F {} , G {}, nonzeros in d {}", res.layout.f_total,
                  res.layout.g_total, res.d.nonzeros());
  const ExactnessReport ex = check_resolution_exactness(V, res);

  // Round trip d(lift(beta)) = beta on a few seeded random beta.
  constexpr std::size_t trials = 3;
  std::mt19937_64 rng(o.seed);
  bool lift_ok = true;
  const Field& field = V.field();
  for (std::size_t k = 0; k < trials; ++k) {
    ArrowGradedMaps beta = zero_arrow_maps(V, res.basis);
    for (auto& fam : beta.beta)
      for (auto& m : fam)
        for (std::size_t r = 0; r < m.rows(); ++r)
          for (std::size_t c = 0; c < m.cols(); ++c)
            m.set(r, c,
                  field.is_prime_field()
                      ? field.from_int(static_cast<long long>(uniform(rng, 0, field.modulus() - 1)))
                      : field.from_int(static_cast<long long>(uniform(rng, 0, 20)) - 10));
    VertexGradedMaps alpha = lift_beta(V, res.basis, beta);
    if (!(res.d * flatten(res.layout, alpha) == flatten(res.layout, beta)))
      lift_ok = false;
  }

  Json r = Json::object();
  r["max_degree"] = o.max_degree;
  r["dim_V"] = V.total_dim();
  r["dim_F"] = ex.f_dim;
  r["dim_G"] = ex.g_dim;
  r["rank_epsilon"] = ex.rank_epsilon;
  r["rank_d"] = ex.rank_d;
  r["nullity_d"] = ex.nullity_d;
  Json props = Json::object();
  props["eps_injective"] = ex.eps_injective ? "pass" : "fail";
  props["ker_d_eq_im_eps"] = ex.ker_d_eq_im_eps ? "pass" : "fail";
  props["d_surjective"] = ex.d_surjective ? "pass" : "fail";
  props["lift_roundtrip"] = lift_ok ? "pass" : "fail";
  const bool all = ex.all() && lift_ok;

  CommandResult out;
  out.report = header("check", inst, o, false);
  out.report["args"]["max_degree"] = o.max_degree;
  out.report["args"]["seed"] = o.seed;
  out.report["result"] = r;
  out.report["properties"] = props;
  out.report["status"] = all ? "pass" : "fail";
  out.exit_code = all ? exit_ok : exit_cross_check;
  return out;
}

CommandResult cmd_hyper(const Instance& inst, const CommandOptions& o) {
  const QSheafP1& V = inst.p1_module(o.module_v);
  const QSheafP1& W = inst.p1_module(o.module_w);
  Timer t("hyper");
  const HyperDims h = cech_hyper(V, W, o.margin);
  CommandResult out;
  out.report = header("hyper", inst, o, true);
  out.report["result"] = Json{{"hh0", h.hh0}, {"hh1", h.hh1}, {"hh2", h.hh2}};
  if (o.verify) {
    const ExtReport r = ext_quiver_sheaf(V, W);
    const bool match = r.ext0 == h.hh0 && r.ext1 == h.hh1 && r.ext2 == h.hh2;
    out.report["verify"] = Json{{"ext0", r.ext0},
                                {"ext1", r.ext1},
                                {"ext2", r.ext2},
                                {"status", match ? "pass" : "fail"}};
    if (!match)
      out.exit_code = exit_cross_check;
  }
  return out;
}

namespace {

void render(std::ostringstream& os, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, val] : v.items()) {
    if (val.is_object()) {
      os << pad << key << ":\n";
      render(os, val, indent + 2);
    } else if (val.is_array() && !val.empty() && val.front().is_object()) {
      os << pad << key << ":\n";
      for (const auto& item : val) {
        bool first = true;
        for (const auto& [k, x] : item.items()) {
          os << pad << (first ? "  - " : "    ") << k << ": "
             << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
          first = false;
        }
      }
    } else {
      os << pad << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
    }
  }
}

} // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  render(os, report, 0);
  return os.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_logging(err);
  CLI::App app{"Hom and Ext of twisted quiver representations and sheaves on P^1", "quivhom"};
  app.require_subcommand(1);

  CommandOptions o;
  GenOptions g;
  std::string gen_mode = "vector";

  auto add_common = [&](CLI::App* sub, bool two) {
    sub->add_option("FILE", o.file, "instance file (JSON)")->required();
    sub->add_option("MODULE_V", o.module_v, "first module")->required();
    if (two)
      sub->add_option("MODULE_W", o.module_w, "second module")->required();
    sub->add_flag("--json", o.json, "emit the report as JSON");
  };

  auto* ext = app.add_subcommand("ext", "Hom/Ext via the long exact sequence");
  add_common(ext, true);
  ext->add_flag("--bases", o.bases, "include bases of Hom and Ext^1 representatives");

  auto* check = app.add_subcommand("check", "exactness of the standard resolution");
  add_common(check, false);
  check->add_option("--max-degree", o.max_degree, "degree bound N (>= 1)")->capture_default_str();
  check->add_option("--seed", o.seed, "seed for the lifting round trip")->capture_default_str();

  auto* hyper = app.add_subcommand("hyper", "Cech hypercohomology (p1 mode)");
  add_common(hyper, true);
  hyper->add_flag("--verify", o.verify, "recompute via the long exact sequence and compare");
  hyper->add_option("--margin", o.margin, "extra Laurent window margin")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "print a random instance");
  gen->add_option("--seed", g.seed)->capture_default_str();
  gen->add_option("--mode", gen_mode)->check(CLI::IsMember({"vector", "p1"}))->capture_default_str();
  gen->add_option("--max-vertices", g.max_vertices)->capture_default_str();
  gen->add_option("--max-arrows", g.max_arrows)->capture_default_str();
  gen->add_option("--max-dim", g.max_dim)->capture_default_str();
  auto* twist_opt = gen->add_option("--max-twist", g.max_twist,
                                    "dim M_a (vector) or |d| bound (p1); default 2 / 3");
  gen->add_option("--prime", g.prime)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_validation;
  }

  try {
    if (gen->parsed()) {
      g.mode = gen_mode == "p1" ? Mode::p1 : Mode::vector;
      if (twist_opt->count() == 0)
        g.max_twist = g.mode == Mode::p1 ? 3 : 2;
      out << generate_instance(g).dump(2) << "\n";
      return exit_ok;
    }
    const Instance inst = load_instance(o.file);
    logger()->info("loaded {} ({} mode, {})", o.file, to_string(inst.mode), inst.field.name());
    CommandResult res;
    if (ext->parsed())
      res = cmd_ext(inst, o);
    else if (check->parsed())
      res = cmd_check(inst, o);
    else
      res = cmd_hyper(inst, o);
    out << (o.json ? res.report.dump(2) + "\n" : render_text(res.report));
    return res.exit_code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const IncompatibleInstances& e) {
    err << "error: " << e.what() << "\n";
    return exit_incompatible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

} // namespace quivhom::cli
