// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mcluster/mcluster.hpp"
#include "oracles.hpp"

using namespace mcluster;

namespace {

struct GridCase {
  std::string quiver;
  int m;
};

const std::vector<GridCase>& cluster_grid() {
  static const std::vector<GridCase> grid = [] {
    std::vector<GridCase> g;
    for (const char* q : {"A1", "A2", "A3", "A4"}) {
      for (int m = 1; m <= 3; ++m) g.push_back({q, m});
    }
    g.push_back({"D4", 1});
    g.push_back({"D4", 2});
    return g;
  }();
  return grid;
}

std::string label(const GridCase& c) { return c.quiver + " m=" + std::to_string(c.m); }

// Shared models so the grid is built once.
std::shared_ptr<const ClusterModel> grid_model(const GridCase& c) {
  static std::map<std::pair<std::string, int>, std::shared_ptr<const ClusterModel>> cache;
  auto& slot = cache[{c.quiver, c.m}];
  if (!slot) slot = ClusterModel::build(*preset_quiver(c.quiver), c.m);
  return slot;
}

const std::vector<MRigidObject>& grid_objects(const GridCase& c) {
  static std::map<std::pair<std::string, int>, std::vector<MRigidObject>> cache;
  auto it = cache.find({c.quiver, c.m});
  if (it == cache.end()) it = cache.emplace(std::make_pair(c.quiver, c.m), enumerate_maximal_m_rigid(grid_model(c)->graph)).first;
  return it->second;
}

// (object, summand) pairs placed so that the summand has degree at most m-1.
template <typename F>
void for_each_placed_pair(const ClusterModel& md, const std::vector<MRigidObject>& objects, F&& body) {
  for (const auto& t : objects) {
    std::optional<Normalization> nz;
    for (std::size_t k = 0; k < t.summands.size(); ++k) {
      if (t.summands[k].shift == md.m()) {
        if (!nz) nz = normalize_to_Dminus(md, t);
        body(*nz->h0, nz->repositioned, nz->images[k], t, k);
      } else {
        body(md, t, t.summands[k], t, k);
      }
    }
  }
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

bool run(const std::string& id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.pass && secs > limit_seconds) out.fail("took " + std::to_string(secs) + " s");
  std::ostringstream line;
  line << (out.pass ? "[PASS] " : "[FAIL] ") << id << " " << title;
  if (!out.detail.empty()) line << " (" << out.detail << ")";
  std::cout << line.str() << std::endl;
  return out.pass;
}

Outcome ac1() {
  Outcome out;
  std::size_t total = 0;
  for (const auto& c : cluster_grid()) {
    const auto md = grid_model(c);
    for (const auto& t : grid_objects(c)) {
      ++total;
      if (t.summands.size() != md->n()) out.fail(label(c) + ": object with " + std::to_string(t.summands.size()));
    }
  }
  if (out.pass) out.detail = std::to_string(total) + " objects";
  return out;
}

Outcome ac2() {
  Outcome out;
  std::size_t total = 0;
  for (const auto& c : cluster_grid()) {
    const auto md = grid_model(c);
    for (const auto& t : grid_objects(c)) {
      for (std::size_t k = 0; k < t.summands.size(); ++k) {
        auto p = t.summands;
        p.erase(p.begin() + static_cast<std::ptrdiff_t>(k));
        ++total;
        const std::size_t found = complements(p, md->graph).size();
        if (found != static_cast<std::size_t>(c.m) + 1) {
          out.fail(label(c) + ": " + std::to_string(found) + " complements");
        }
      }
    }
  }
  if (out.pass) out.detail = std::to_string(total) + " almost complete objects";
  return out;
}

// m-cluster tilting objects found by walking every m-rigid set, independent of the clique search.
std::set<std::vector<DVertex>> cluster_tilting_objects(const ClusterModel& md) {
  const auto& g = md.graph;
  std::set<std::vector<DVertex>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> walk = [&](std::size_t from) {
    std::vector<DVertex> obj;
    for (std::size_t v : cur) obj.push_back(g.nodes[v]);
    if (!obj.empty() && is_m_cluster_tilting(MRigidObject{obj, false}, g)) out.insert(obj);
    for (std::size_t v = from; v < g.size(); ++v) {
      if (!g.self_rigid[v]) continue;
      if (std::all_of(cur.begin(), cur.end(), [&](std::size_t u) { return g.adjacent(u, v); })) {
        cur.push_back(v);
        walk(v + 1);
        cur.pop_back();
      }
    }
  };
  walk(0);
  return out;
}

Outcome ac3() {
  Outcome out;
  for (const auto& c : cluster_grid()) {
    const auto md = grid_model(c);
    std::set<std::vector<DVertex>> maximal;
    for (const auto& t : grid_objects(c)) maximal.insert(t.summands);
    if (maximal != cluster_tilting_objects(*md)) out.fail(label(c));
  }
  return out;
}

Outcome ac4() {
  Outcome out;
  const std::vector<std::pair<GridCase, std::size_t>> fixtures = {
      {{"A2", 1}, 5}, {{"A2", 2}, 12}, {{"A2", 3}, 22}, {{"A3", 1}, 14}, {{"A3", 2}, 55}, {{"D4", 1}, 50}};
  for (const auto& [c, expected] : fixtures) {
    const std::size_t count = grid_objects(c).size();
    const auto brute = oracle::brute_force_maximal(*grid_model(c));
    const auto fc = oracle::fuss_catalan(c.quiver, c.m);
    if (count != expected || brute.size() != expected || fc != static_cast<std::int64_t>(expected)) {
      out.fail(label(c) + ": " + std::to_string(count) + " enumerated, " + std::to_string(brute.size()) +
               " brute force, " + std::to_string(fc) + " by formula");
    }
  }
  return out;
}

Outcome ac5() {
  Outcome out;
  for (int n = 2; n <= 3; ++n) {
    const auto orientations = oracle::a_orientations(n);
    for (const Quiver& q : orientations) {
      for (int m = 1; m <= 3; ++m) {
        const auto md = ClusterModel::build(q, m);
        std::set<std::vector<DVertex>> found;
        for (const auto& t : enumerate_maximal_m_rigid(md->graph)) found.insert(t.summands);
        for (const auto& ids : tilting_modules(*md->ar)) {
          std::vector<DVertex> t;
          for (std::size_t id : ids) t.push_back({id, 0});
          std::sort(t.begin(), t.end(),
                    [&](const DVertex& a, const DVertex& b) { return *md->fd.index_of(a) < *md->fd.index_of(b); });
          if (!is_maximal_m_rigid(t, md->graph) || !found.count(t)) out.fail(to_json(q).dump());
        }
      }
    }
  }
  const std::size_t a2 = tilting_modules(knit_module_category(*preset_quiver("A2"))).size();
  const std::size_t a3 = tilting_modules(knit_module_category(*preset_quiver("A3"))).size();
  if (a2 != 2 || a3 != 5) out.fail("linear counts " + std::to_string(a2) + ", " + std::to_string(a3));
  return out;
}

Outcome ac6() {
  Outcome out;
  std::size_t pairs = 0;
  for (int m = 1; m <= 2; ++m) {
    const GridCase c{"A3", m};
    const auto md = grid_model(c);
    for_each_placed_pair(*md, grid_objects(c), [&](const ClusterModel& where, const MRigidObject& obj,
                                                   const DVertex& M, const MRigidObject& orig, std::size_t k) {
      ++pairs;
      const LocalisationResult res = localise_object(where, obj, M);
      const bool right_size = res.prime_images.size() + 1 == md->n();
      if (!res.ok() || !right_size) {
        out.fail(label(c) + " at " + md->name(orig.summands[k]));
      }
    });
  }
  if (out.pass) out.detail = std::to_string(pairs) + " pairs";
  return out;
}

Outcome ac7() {
  Outcome out;
  std::size_t pairs = 0;
  for (const char* q : {"A2", "A3"}) {
    for (int m = 1; m <= 2; ++m) {
      const GridCase c{q, m};
      const auto md = grid_model(c);
      for_each_placed_pair(*md, grid_objects(c), [&](const ClusterModel& where, const MRigidObject& obj,
                                                     const DVertex& M, const MRigidObject& orig, std::size_t k) {
        ++pairs;
        const FactorTheoremReport rep = verify_factor_theorem(where, obj, M);
        if (!rep.ok()) out.fail(label(c) + " at " + md->name(orig.summands[k]) + ": " + rep.detail);
      });
    }
  }
  if (out.pass) out.detail = std::to_string(pairs) + " pairs";
  return out;
}

Outcome ac8() {
  Outcome out;
  std::size_t cases = 0;
  for (const auto& name : preset_names()) {
    for (int m = 1; m <= 3; ++m) {
      const auto md = ClusterModel::build(*preset_quiver(name), m);
      for (const auto& c : check_derived_invariants(*md)) {
        cases += c.cases;
        if (!c.pass) out.fail(name + " m=" + std::to_string(m) + " " + c.name);
      }
    }
  }
  if (out.pass) out.detail = std::to_string(cases) + " cases";
  return out;
}

}  // namespace

int main() {
  bool all = true;
  all &= run("AC1", "maximal m-rigid objects have n summands", 120, ac1);
  all &= run("AC2", "almost complete objects have m+1 complements", 120, ac2);
  all &= run("AC3", "maximal m-rigid equals m-cluster tilting", 120, ac3);
  all &= run("AC4", "enumeration counts", 120, ac4);
  all &= run("AC5", "tilting modules embed as maximal objects", 120, ac5);
  all &= run("AC6", "localisation suite on A3", 300, ac6);
  all &= run("AC7", "factor theorem on A2 and A3", 300, ac7);
  all &= run("AC8", "numerical invariant suites", 180, ac8);
  return all ? 0 : 1;
}
