// Command-line front end. Exit codes: 0 pass, 1 check failure or window
// overflow, 2 usage or input error, 3 resource cap.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcluster/mcluster.hpp"

using namespace mcluster;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, capped = 3 };

struct Globals {
  int m = 1;
  bool json_out = false;
  bool timing = false;
  std::vector<int> window;
  std::size_t max_cliques = default_clique_cap;
};

Quiver load_quiver(const std::string& arg) {
  if (auto q = preset_quiver(arg)) return *q;
  std::ifstream in(arg);
  if (!in) throw PreconditionError("'" + arg + "' is neither a preset nor a readable file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_quiver(buf.str());
}

std::optional<Window> window_of(const Globals& g) {
  if (g.window.empty()) return std::nullopt;
  if (g.window.size() != 2) throw PreconditionError("--window takes lo,hi");
  return Window{g.window[0], g.window[1]};
}

std::shared_ptr<const ClusterModel> build(const std::string& quiver, const Globals& g) {
  if (g.m < 1) throw PreconditionError("m must be at least 1");
  return ClusterModel::build(load_quiver(quiver), g.m, window_of(g));
}

// Parses summand names and orders them as in the fundamental domain.
MRigidObject parse_object(const ClusterModel& model, const std::vector<std::string>& names) {
  MRigidObject t{model.parse_names(names), false};
  for (const auto& v : t.summands) {
    if (!model.fd.contains(v)) throw PreconditionError(model.name(v) + " is outside the fundamental domain");
  }
  std::sort(t.summands.begin(), t.summands.end(),
            [&](const DVertex& a, const DVertex& b) { return *model.fd.index_of(a) < *model.fd.index_of(b); });
  if (std::adjacent_find(t.summands.begin(), t.summands.end()) != t.summands.end()) {
    throw PreconditionError("object has a repeated summand");
  }
  t.maximal = is_maximal_m_rigid(t.summands, model.graph);
  return t;
}

json matrix_json(const IntMatrix& mat) { return json(mat); }

void print_matrix(const std::string& title, const IntMatrix& mat) {
  std::cout << title << ":\n";
  for (const auto& row : mat) {
    for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "  ") << row[j];
    std::cout << "\n";
  }
}

void emit(const Globals& g, const json& j, const std::function<void()>& text) {
  if (g.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    text();
  }
}

int cmd_roots(const Globals& g, const std::string& quiver) {
  const Quiver q = load_quiver(quiver);
  const auto roots = positive_roots(q);
  json j{{"quiver", to_json(q)}, {"type", q.dynkin_type()}, {"roots", json::array()}};
  for (const auto& r : roots) j["roots"].push_back(r.to_string());
  emit(g, j, [&] {
    std::cout << q.dynkin_type() << ", " << roots.size() << " positive roots\n";
    for (const auto& r : roots) std::cout << "  " << r.to_string() << "\n";
  });
  return ok;
}

int cmd_ar_quiver(const Globals& g, const std::string& quiver) {
  const ARQuiver ar = knit_module_category(load_quiver(quiver));
  json j{{"vertices", json::array()}, {"arrows", json::array()}, {"tau", json::array()}};
  for (const auto& v : ar.vertices()) {
    json jv{{"id", v.id}, {"name", ar.name(v.id)}, {"dim", v.dim.entries()}, {"slice", v.slice_index},
            {"orbit", ar.quiver().label(v.orbit)}};
    jv["projective"] = v.projective_of ? json(ar.quiver().label(*v.projective_of)) : json(nullptr);
    jv["injective"] = v.injective_of ? json(ar.quiver().label(*v.injective_of)) : json(nullptr);
    j["vertices"].push_back(jv);
    if (const auto t = ar.tau(v.id)) j["tau"].push_back({ar.name(v.id), ar.name(*t)});
  }
  for (const auto& [a, b] : ar.arrows()) j["arrows"].push_back({ar.name(a), ar.name(b)});
  emit(g, j, [&] {
    std::cout << ar.size() << " indecomposables, " << ar.arrows().size() << " arrows\n";
    for (const auto& v : ar.vertices()) {
      std::cout << "  " << ar.name(v.id) << "  slice " << v.slice_index;
      if (v.projective_of) std::cout << "  P(" << ar.quiver().label(*v.projective_of) << ")";
      if (v.injective_of) std::cout << "  I(" << ar.quiver().label(*v.injective_of) << ")";
      if (const auto t = ar.tau(v.id)) std::cout << "  tau = " << ar.name(*t);
      std::cout << "\n";
    }
  });
  return ok;
}

int cmd_fd(const Globals& g, const std::string& quiver) {
  const auto model = build(quiver, g);
  json j{{"m", g.m}, {"vertices", json::array()}};
  for (std::size_t k = 0; k < model->fd.vertices.size(); ++k) {
    const DVertex v = model->fd.vertices[k];
    j["vertices"].push_back({{"name", model->name(v)}, {"rigid", bool(model->graph.self_rigid[k])}});
  }
  emit(g, j, [&] {
    std::cout << model->fd.vertices.size() << " indecomposables in the fundamental domain\n";
    for (const auto& v : model->fd.vertices) std::cout << "  " << model->name(v) << "\n";
  });
  return ok;
}

int cmd_hom(const Globals& g, const std::string& quiver, const std::string& from, const std::string& to, int shift) {
  const auto model = build(quiver, g);
  const DerivedCategory& dc = model->derived();
  const DVertex x = dc.parse_or_throw(from);
  const DVertex y = DerivedCategory::shift_free(dc.parse_or_throw(to), shift);
  const int d = dc.hom_derived(x, y);
  emit(g, json{{"from", dc.name(x)}, {"to", dc.name(y)}, {"dim", d}}, [&] { std::cout << d << "\n"; });
  return ok;
}

int cmd_factor_dim(const Globals& g, const std::string& quiver, const std::string& from, const std::string& to,
                   const std::vector<std::string>& through) {
  const auto model = build(quiver, g);
  const DerivedCategory& dc = model->derived();
  const DVertex x = dc.parse_or_throw(from);
  const DVertex z = dc.parse_or_throw(to);
  const auto via = model->parse_names(through);
  const std::size_t d = model->mesh->factoring_dim(x, z, via);
  const int total = dc.hom_derived(x, z);
  emit(g, json{{"from", dc.name(x)}, {"to", dc.name(z)}, {"through", model->names(via)}, {"hom", total},
               {"factoring", d}},
       [&] { std::cout << d << " of " << total << "\n"; });
  return ok;
}

int cmd_enumerate(const Globals& g, const std::string& quiver) {
  const auto model = build(quiver, g);
  const auto objects = enumerate_maximal_m_rigid(model->graph, g.max_cliques);
  json j{{"m", g.m}, {"count", objects.size()}, {"objects", json::array()}};
  for (const auto& t : objects) j["objects"].push_back(model->names(t.summands));
  emit(g, j, [&] {
    for (const auto& t : objects) {
      for (const auto& name : model->names(t.summands)) std::cout << name << " ";
      std::cout << "\n";
    }
    std::cout << objects.size() << " maximal " << g.m << "-rigid objects\n";
  });
  return ok;
}

int cmd_complements(const Globals& g, const std::string& quiver, const std::vector<std::string>& object,
                    const std::string& drop) {
  const auto model = build(quiver, g);
  auto t = parse_object(*model, object);
  const DVertex d = model->derived().parse_or_throw(drop);
  const auto it = std::find(t.summands.begin(), t.summands.end(), d);
  if (it == t.summands.end()) throw PreconditionError(drop + " is not a summand of the object");
  t.summands.erase(it);
  const auto found = complements(t.summands, model->graph);
  emit(g, json{{"partial", model->names(t.summands)}, {"complements", model->names(found)}}, [&] {
    std::cout << found.size() << " complements:";
    for (const auto& c : found) std::cout << " " << model->name(c);
    std::cout << "\n";
  });
  return ok;
}

// Places (t, M) so that M has degree at most m-1, moving to a slice model if needed.
struct Placement {
  std::optional<Normalization> nz;
  const ClusterModel* model = nullptr;
  MRigidObject object;
  DVertex M;
};

Placement place(const ClusterModel& model, const MRigidObject& t, const DVertex& M) {
  Placement p{std::nullopt, &model, t, M};
  if (M.shift != model.m()) return p;
  p.nz = normalize_to_Dminus(model, t);
  const auto k = static_cast<std::size_t>(std::find(t.summands.begin(), t.summands.end(), M) - t.summands.begin());
  p.model = p.nz->h0.get();
  p.object = p.nz->repositioned;
  p.M = p.nz->images[k];
  return p;
}

MRigidObject require_maximal(const ClusterModel& model, const std::vector<std::string>& names) {
  auto t = parse_object(model, names);
  if (!t.maximal) throw PreconditionError("object is not maximal m-rigid");
  return t;
}

int cmd_localise(const Globals& g, const std::string& quiver, const std::vector<std::string>& object,
                 const std::string& at) {
  const auto model = build(quiver, g);
  const auto t = require_maximal(*model, object);
  const DVertex M = model->derived().parse_or_throw(at);
  const Placement p = place(*model, t, M);
  const LocalisationResult res = localise_object(*p.model, p.object, p.M);
  const ClusterModel& prime = *res.pd.prime;

  json j{{"at", p.model->name(p.M)}, {"h_prime", to_json(res.pd.H_prime)}, {"sources", p.model->names(res.sources)}};
  j["images"] = p.model->names(res.images);
  j["prime_images"] = json::array();
  for (const auto& v : res.prime_images) j["prime_images"].push_back(prime.name(v));
  j["indecomposable"] = res.indecomposable;
  j["in_prime_domain"] = res.in_prime_domain;
  j["rigid"] = res.rigid;
  j["maximal"] = res.maximal;
  std::vector<std::size_t> comp_counts;
  if (res.maximal) {
    for (std::size_t k = 0; k < res.prime_images.size(); ++k) {
      auto part = res.prime_images;
      part.erase(part.begin() + static_cast<std::ptrdiff_t>(k));
      comp_counts.push_back(complements(part, prime.graph).size());
    }
  }
  j["complement_counts"] = comp_counts;
  if (p.nz) j["normalized"] = p.model->names(p.object.summands);
  emit(g, j, [&] {
    if (p.nz) std::cout << "repositioned as " << j["normalized"].dump() << "\n";
    std::cout << "H' arrows:";
    for (const auto& a : res.pd.H_prime.arrows()) {
      std::cout << " " << res.pd.H_prime.label(a.source) << "->" << res.pd.H_prime.label(a.target);
    }
    std::cout << "\n";
    for (std::size_t k = 0; k < res.sources.size(); ++k) {
      std::cout << "  " << p.model->name(res.sources[k]);
      if (k < res.images.size()) std::cout << " -> " << p.model->name(res.images[k]);
      if (k < res.prime_images.size()) std::cout << " = " << prime.name(res.prime_images[k]) << " over H'";
      std::cout << "\n";
    }
    std::cout << (res.ok() ? "maximal" : "NOT maximal") << " " << g.m << "-rigid over H'\n";
  });
  return res.ok() ? ok : failed;
}

int cmd_endo(const Globals& g, const std::string& quiver, const std::vector<std::string>& object,
             const std::string& factor_at) {
  const auto model = build(quiver, g);
  const auto t = require_maximal(*model, object);
  const EndoAlgebraData e = endo_dims(*model, t.summands);
  json j{{"summands", model->names(e.summands)}, {"hom_dims", matrix_json(e.hom_dims)},
         {"rad_sq_dims", matrix_json(e.rad_sq_dims)}, {"arrows", matrix_json(e.arrows)}, {"total_dim", e.total_dim}};
  bool verdict = true;
  std::optional<FactorTheoremReport> rep;
  std::optional<Placement> p;
  if (!factor_at.empty()) {
    p = place(*model, t, model->derived().parse_or_throw(factor_at));
    rep = verify_factor_theorem(*p->model, p->object, p->M);
    verdict = rep->ok();
    j["factor"] = {{"at", p->model->name(p->M)},
                   {"remaining", p->model->names(rep->remaining)},
                   {"dims", matrix_json(rep->factor)},
                   {"arrows", matrix_json(rep->factor_arrows)},
                   {"localised", matrix_json(rep->localised)},
                   {"localised_prime", matrix_json(rep->localised_prime)},
                   {"prime_arrows", matrix_json(rep->prime_arrows)},
                   {"verdict", verdict}};
  }
  emit(g, j, [&] {
    std::cout << "summands:";
    for (const auto& s : model->names(e.summands)) std::cout << " " << s;
    std::cout << "\ntotal dimension " << e.total_dim << "\n";
    print_matrix("hom", e.hom_dims);
    print_matrix("arrows", e.arrows);
    if (rep) {
      print_matrix("factor", rep->factor);
      print_matrix("localised", rep->localised);
      print_matrix("factor arrows", rep->factor_arrows);
      print_matrix("H' arrows", rep->prime_arrows);
      std::cout << (verdict ? "factor theorem holds" : "factor theorem FAILS: " + rep->detail) << "\n";
    }
  });
  return verdict ? ok : failed;
}

int print_report(const Globals& g, const VerificationReport& rep) {
  emit(g, rep.to_json(g.timing), [&] {
    std::cout << rep.quiver << ", m = " << rep.m << "\n";
    for (const auto& c : rep.checks) {
      std::cout << "  " << (c.pass ? "pass " : "FAIL ") << c.name << " (" << c.cases << " cases)\n";
      for (const auto& f : c.failures) std::cout << "      " << f << "\n";
    }
    std::cout << "  maximal objects: " << rep.object_count << "\n  summand sizes:";
    for (const auto& [k, v] : rep.summand_sizes) std::cout << " " << k << "x" << v;
    std::cout << "\n  complements:";
    for (const auto& [k, v] : rep.complement_histogram) std::cout << " " << k << "x" << v;
    std::cout << "\n";
    if (rep.capped) std::cout << "  capped: " << rep.capped_reason << "\n";
    if (g.timing) std::cout << "  elapsed " << rep.elapsed_seconds << " s\n";
    std::cout << (rep.capped ? "capped" : rep.pass() ? "pass" : "fail") << "\n";
  });
  if (rep.capped) return capped;
  return rep.pass() ? ok : failed;
}

int cmd_verify(const Globals& g, const std::string& quiver, bool all) {
  if (g.m < 1) throw PreconditionError("m must be at least 1");
  VerifyOptions opts;
  opts.window = window_of(g);
  opts.max_cliques = g.max_cliques;
  opts.sweeps = all;
  std::string name = quiver;
  if (!preset_quiver(quiver)) name = std::filesystem::path(quiver).stem().string();
  return print_report(g, run_verify_all(load_quiver(quiver), name, g.m, opts));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"m-cluster categories of Dynkin quivers"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--m", g.m, "m >= 1")->capture_default_str();
  app.add_flag("--json", g.json_out, "machine-readable output");
  app.add_option("--window", g.window, "shift window lo,hi")->delimiter(',')->expected(2);
  app.add_option("--max-cliques", g.max_cliques, "cap on enumerated objects")->capture_default_str();
  app.add_flag("--timing", g.timing, "report elapsed time");

  std::string quiver, from, to, drop, at, factor_at;
  std::vector<std::string> object, through;
  int shift = 0;
  const auto quiver_arg = [&](CLI::App* sub) {
    sub->add_option("quiver", quiver, "preset name or quiver JSON file")->required();
  };
  const auto object_arg = [&](CLI::App* sub) {
    sub->add_option("--object", object, "summand names")->delimiter(',')->required();
  };

  auto* roots = app.add_subcommand("roots", "positive roots");
  quiver_arg(roots);
  auto* arq = app.add_subcommand("ar-quiver", "Auslander-Reiten quiver of mod H");
  quiver_arg(arq);
  auto* fd = app.add_subcommand("fd", "fundamental domain of the m-cluster category");
  quiver_arg(fd);
  auto* hom = app.add_subcommand("hom", "dim Hom_D(from, to[shift])");
  quiver_arg(hom);
  hom->add_option("--from", from)->required();
  hom->add_option("--to", to)->required();
  hom->add_option("--shift", shift);
  auto* fdim = app.add_subcommand("factor-dim", "dimension of maps factoring through given objects");
  quiver_arg(fdim);
  fdim->add_option("--from", from)->required();
  fdim->add_option("--to", to)->required();
  fdim->add_option("--through", through)->delimiter(',')->required();
  auto* en = app.add_subcommand("enumerate", "maximal m-rigid objects");
  quiver_arg(en);
  auto* comp = app.add_subcommand("complements", "complements of an almost complete object");
  quiver_arg(comp);
  object_arg(comp);
  comp->add_option("--drop", drop)->required();
  auto* loc = app.add_subcommand("localise", "localise a maximal m-rigid object at a summand");
  quiver_arg(loc);
  object_arg(loc);
  loc->add_option("--at", at)->required();
  auto* endo = app.add_subcommand("endo", "endomorphism algebra dimensions");
  quiver_arg(endo);
  object_arg(endo);
  endo->add_option("--factor-at", factor_at);
  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* vall = verify->add_subcommand("all", "every suite");
  quiver_arg(vall);
  auto* vcluster = verify->add_subcommand("cluster", "derived invariants and cluster theorems");
  quiver_arg(vcluster);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : verify->get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*roots) return cmd_roots(g, quiver);
    if (*arq) return cmd_ar_quiver(g, quiver);
    if (*fd) return cmd_fd(g, quiver);
    if (*hom) return cmd_hom(g, quiver, from, to, shift);
    if (*fdim) return cmd_factor_dim(g, quiver, from, to, through);
    if (*en) return cmd_enumerate(g, quiver);
    if (*comp) return cmd_complements(g, quiver, object, drop);
    if (*loc) return cmd_localise(g, quiver, object, at);
    if (*endo) return cmd_endo(g, quiver, object, factor_at);
    if (*vall) return cmd_verify(g, quiver, true);
    if (*vcluster) return cmd_verify(g, quiver, false);
  } catch (const CapExceeded& e) {
    std::cerr << "capped: " << e.what() << "\n";
    return capped;
  } catch (const WindowOverflow& e) {
    std::cerr << "window overflow: " << e.what() << "\n";
    return failed;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return failed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
