#pragma once

// Scenario catalogue: named (ambient, immersion, field family) triples plus
// inline specifications built from the same immersion kinds.
//
// Catalogue names:
//   s{d}_round                 unit S^d in euclidean(d+1), d odd
//   tube_s2_r{r}               tube of radius r around S^2 in euclidean(4)
//   flat_t3                    slice T^3 x {1/2} in flat_torus(4)
//   clifford_t3_berger         torus a = pi/4 in berger(1,1,1)
//   clifford_t3_berger_l{l1}_{l2}_{l3}[_w{w}]
//                              same in berger(l1,l2,l3), optional wobble w
//   tube_circle_r{r}           tube around a great circle in euclidean(4)
//   hyperbolic_circle_tube_r{r} the same map in the hyperbolic(4) chart

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "transgauss/hypersurface.hpp"

namespace transgauss {

struct ImmersionSpec {
  // sphere | tube_s2 | flat_slice | clifford_t3 | tube_circle
  std::string kind;
  std::map<std::string, double> params;
};

struct ScenarioSpec {
  std::string name;
  AmbientDescriptor ambient;
  ImmersionSpec immersion;
  // Multiplies the scenario's outward normal.
  int orientation = 1;
};

struct Scenario {
  std::string name;
  std::string ambient_name;
  std::shared_ptr<const ImmersedHypersurface> surface;
  std::vector<std::string> listed_fields;  // names shown by `list`
  std::string default_field;
  std::vector<int> default_resolution;
  // Throws ConfigError for an unknown field name.
  std::function<UnitTangentField(const std::string&)> field_factory;
  // Fields whose orthogonal distribution is integrable by construction.
  std::function<bool(const std::string&)> declares_leaves;

  UnitTangentField field(const std::string& name) const { return field_factory(name); }
};

// Catalogue name -> spec. Throws ConfigError for unknown names or bad
// parameters.
ScenarioSpec parse_scenario_name(const std::string& name);

Scenario build_scenario(const ScenarioSpec& spec, DiffConfig diff = {});
Scenario make_scenario(const std::string& name, int orientation = 1, DiffConfig diff = {});

struct CatalogueEntry {
  std::string name;
  std::string ambient;
  int dim;
  int euler_char;
  std::vector<std::string> fields;
};

const std::vector<CatalogueEntry>& catalogue();
// One line per catalogue entry: "<name> <ambient> dim=<d> chi=<c> v:{...}".
std::string catalogue_listing();

// Concrete representatives used by the full-catalogue sweeps.
std::vector<std::string> representative_scenarios();

}  // namespace transgauss
