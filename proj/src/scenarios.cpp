#include "transgauss/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

namespace transgauss {

namespace {

constexpr double kPi = std::numbers::pi;

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ConfigError("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

double param(const ImmersionSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

struct Built {
  std::vector<DomainFactor> domain;
  ImmersedHypersurface::Map f;
  ImmersedHypersurface::Jacobian df;
  // Chart vector pointing to the outside at u.
  std::function<Vector(const Vector&)> outward;
  std::vector<std::string> listed;
  std::string default_field;
  std::vector<int> resolution;
  std::function<std::optional<UnitTangentField>(const std::string&)> fields;
  std::function<bool(const std::string&)> leaves = [](const std::string&) { return false; };
  int euler_char = 0;
};

UnitTangentField constant_chart_field(std::string name, Vector w) {
  return {std::move(name), [w](const SurfacePoint&) { return w; }};
}

// Unit S^{N-1} in R^N: x_k = prod_{i<k} sin u_i cos u_k, x_{N-1} = prod sin u_i,
// with u_0..u_{N-3} polar and u_{N-2} periodic.
Built sphere(int big_n) {
  if (big_n < 2 || big_n > kMaxDim) throw ConfigError("sphere needs 2 <= dim <= 6");
  const int m = big_n - 1;
  Built b;
  for (int i = 0; i < m - 1; ++i) b.domain.push_back(DomainFactor::polar(0.0, kPi));
  b.domain.push_back(DomainFactor::periodic(2 * kPi));
  b.f = [big_n](const Vector& u) {
    Vector x(big_n);
    double prod = 1.0;
    for (int k = 0; k < big_n - 1; ++k) {
      x(k) = prod * std::cos(u(k));
      prod *= std::sin(u(k));
    }
    x(big_n - 1) = prod;
    return x;
  };
  b.df = [big_n, m](const Vector& u) {
    Matrix t = Matrix::Zero(big_n, m);
    for (int k = 0; k < big_n; ++k) {
      for (int j = 0; j < m && j <= k; ++j) {
        double value = 1.0;
        for (int i = 0; i < std::min(k, m); ++i) {
          value *= i == j ? std::cos(u(i)) : std::sin(u(i));
        }
        if (k < big_n - 1) value *= j == k ? -std::sin(u(k)) : std::cos(u(k));
        t(k, j) = value;
      }
    }
    return t;
  };
  b.outward = b.f;
  b.euler_char = m % 2 == 0 ? 2 : 0;
  b.resolution = {big_n == 4 ? 32 : (big_n > 4 ? 12 : 32)};
  if (big_n % 2 == 0) {
    b.listed.push_back("hopf");
    b.default_field = "hopf";
  }
  if (big_n == 4) b.listed.push_back("hopf_rot");
  b.fields = [big_n](const std::string& name) -> std::optional<UnitTangentField> {
    if (name == "hopf" && big_n % 2 == 0) {
      return UnitTangentField{name, [big_n](const SurfacePoint& sp) {
                                const Vector& x = sp.p.coords;
                                Vector w(big_n);
                                for (int i = 0; i < big_n; i += 2) {
                                  w(i) = -x(i + 1);
                                  w(i + 1) = x(i);
                                }
                                return w;
                              }};
    }
    if (name == "hopf_rot" && big_n == 4) {
      return UnitTangentField{name, [](const SurfacePoint& sp) {
                                const Vector& x = sp.p.coords;
                                Vector w(4);
                                w << -x(2), x(3), x(0), -x(1);
                                return w;
                              }};
    }
    return std::nullopt;
  };
  return b;
}

// f(p, theta) = ((1 + r cos theta) p, r sin theta), p in S^2 with polar
// angles (u_0, u_1), theta = u_2.
Built tube_s2(double r) {
  if (!(r > 0.0 && r < 1.0)) throw ConfigError("tube_s2 radius must lie in (0, 1)");
  Built b;
  b.domain = {DomainFactor::polar(0.0, kPi), DomainFactor::periodic(2 * kPi),
              DomainFactor::periodic(2 * kPi)};
  const auto sphere_point = [](const Vector& u) {
    return Eigen::Vector3d(std::sin(u(0)) * std::cos(u(1)), std::sin(u(0)) * std::sin(u(1)),
                           std::cos(u(0)));
  };
  b.f = [r, sphere_point](const Vector& u) {
    const Eigen::Vector3d p = sphere_point(u);
    Vector x(4);
    x.head(3) = (1.0 + r * std::cos(u(2))) * p;
    x(3) = r * std::sin(u(2));
    return x;
  };
  b.df = [r, sphere_point](const Vector& u) {
    const Eigen::Vector3d p = sphere_point(u);
    const Eigen::Vector3d dp0(std::cos(u(0)) * std::cos(u(1)), std::cos(u(0)) * std::sin(u(1)),
                              -std::sin(u(0)));
    const Eigen::Vector3d dp1(-std::sin(u(0)) * std::sin(u(1)), std::sin(u(0)) * std::cos(u(1)),
                              0.0);
    const double s = 1.0 + r * std::cos(u(2));
    Matrix t = Matrix::Zero(4, 3);
    t.col(0).head(3) = s * dp0;
    t.col(1).head(3) = s * dp1;
    t.col(2).head(3) = -r * std::sin(u(2)) * p;
    t(3, 2) = r * std::cos(u(2));
    return t;
  };
  b.outward = [sphere_point](const Vector& u) {
    Vector x(4);
    x.head(3) = std::cos(u(2)) * sphere_point(u);
    x(3) = std::sin(u(2));
    return x;
  };
  b.resolution = {48};
  b.listed = {"circle", "twist{k}"};
  b.default_field = "circle";
  b.fields = [sphere_point](const std::string& name) -> std::optional<UnitTangentField> {
    if (name == "circle") {
      return UnitTangentField{name, [sphere_point](const SurfacePoint& sp) {
                                Vector w(4);
                                w.head(3) = -std::sin(sp.u(2)) * sphere_point(sp.u);
                                w(3) = std::cos(sp.u(2));
                                return w;
                              }};
    }
    static const std::regex twist(R"(twist(-?\d+))");
    std::smatch match;
    if (std::regex_match(name, match, twist)) {
      const int k = std::stoi(match[1].str());
      // w(theta) = (0, sin k theta, cos k theta) split into its S^2-tangential
      // part and its p-component carried by the theta direction.
      return UnitTangentField{name, [k, sphere_point](const SurfacePoint& sp) {
                                const Eigen::Vector3d p = sphere_point(sp.u);
                                const double th = sp.u(2);
                                const Eigen::Vector3d w(0.0, std::sin(k * th), std::cos(k * th));
                                const double wp = w.dot(p);
                                Vector out(4);
                                out.head(3) = w - wp * p - wp * std::sin(th) * p;
                                out(3) = wp * std::cos(th);
                                return out;
                              }};
    }
    return std::nullopt;
  };
  b.leaves = [](const std::string& name) { return name == "circle"; };
  return b;
}

// T^{N-1} x {c} in flat_torus(N) with unit periods.
Built flat_slice(int big_n, double height) {
  if (big_n < 2 || big_n > kMaxDim) throw ConfigError("flat_slice needs 2 <= dim <= 6");
  const int m = big_n - 1;
  Built b;
  for (int i = 0; i < m; ++i) b.domain.push_back(DomainFactor::periodic(1.0));
  b.f = [big_n, height](const Vector& u) {
    Vector x(big_n);
    x.head(big_n - 1) = u;
    x(big_n - 1) = height;
    return x;
  };
  b.df = [big_n, m](const Vector&) {
    Matrix t = Matrix::Zero(big_n, m);
    t.topRows(m) = Matrix::Identity(m, m);
    return t;
  };
  b.outward = [big_n](const Vector&) { return Vector(Vector::Unit(big_n, big_n - 1)); };
  b.resolution = {8};
  for (int i = 1; i <= m; ++i) b.listed.push_back("coord" + std::to_string(i));
  b.default_field = "coord" + std::to_string(m);
  b.fields = [big_n, m](const std::string& name) -> std::optional<UnitTangentField> {
    for (int i = 1; i <= m; ++i) {
      if (name == "coord" + std::to_string(i)) {
        return constant_chart_field(name, Vector::Unit(big_n, i - 1));
      }
    }
    return std::nullopt;
  };
  b.leaves = [](const std::string&) { return true; };
  return b;
}

// a(u) = a0 + w sin(u_0 + u_1 + u_2), f(u) = (a(u), u_0, u_1, u_2) in the
// berger chart (a, phi1, phi2, theta).
Built clifford_t3(double a0, double wobble) {
  if (!(a0 - std::abs(wobble) > 0.05 && a0 + std::abs(wobble) < kPi / 2 - 0.05)) {
    throw ConfigError("clifford_t3 height must stay inside (0, pi/2)");
  }
  Built b;
  b.domain = {DomainFactor::periodic(2 * kPi), DomainFactor::periodic(2 * kPi),
              DomainFactor::periodic(2 * kPi)};
  b.f = [a0, wobble](const Vector& u) {
    Vector x(4);
    x << a0 + wobble * std::sin(u(0) + u(1) + u(2)), u(0), u(1), u(2);
    return x;
  };
  b.df = [wobble](const Vector& u) {
    Matrix t = Matrix::Zero(4, 3);
    const double da = wobble * std::cos(u(0) + u(1) + u(2));
    for (int j = 0; j < 3; ++j) {
      t(0, j) = da;
      t(j + 1, j) = 1.0;
    }
    return t;
  };
  b.outward = [](const Vector&) { return Vector(Vector::Unit(4, 0)); };
  b.resolution = {24};
  b.listed = {"coord1", "coord2", "coord3"};
  b.default_field = "coord3";
  b.fields = [](const std::string& name) -> std::optional<UnitTangentField> {
    for (int i = 1; i <= 3; ++i) {
      if (name == "coord" + std::to_string(i)) {
        return constant_chart_field(name, Vector::Unit(4, i));
      }
    }
    return std::nullopt;
  };
  return b;
}

// f = ((1 + r p_0) cos phi, (1 + r p_0) sin phi, r p_1, r p_2) with
// p = (cos u_0, sin u_0 cos u_1, sin u_0 sin u_1) and phi = u_2.
Built tube_circle(double r) {
  if (!(r > 0.0 && r < 1.0)) throw ConfigError("tube_circle radius must lie in (0, 1)");
  Built b;
  b.domain = {DomainFactor::polar(0.0, kPi), DomainFactor::periodic(2 * kPi),
              DomainFactor::periodic(2 * kPi)};
  const auto sphere_point = [](const Vector& u) {
    return Eigen::Vector3d(std::cos(u(0)), std::sin(u(0)) * std::cos(u(1)),
                           std::sin(u(0)) * std::sin(u(1)));
  };
  b.f = [r, sphere_point](const Vector& u) {
    const Eigen::Vector3d p = sphere_point(u);
    const double s = 1.0 + r * p(0);
    Vector x(4);
    x << s * std::cos(u(2)), s * std::sin(u(2)), r * p(1), r * p(2);
    return x;
  };
  b.df = [r, sphere_point](const Vector& u) {
    const Eigen::Vector3d p = sphere_point(u);
    const Eigen::Vector3d dp0(-std::sin(u(0)), std::cos(u(0)) * std::cos(u(1)),
                              std::cos(u(0)) * std::sin(u(1)));
    const Eigen::Vector3d dp1(0.0, -std::sin(u(0)) * std::sin(u(1)),
                              std::sin(u(0)) * std::cos(u(1)));
    const double c = std::cos(u(2)), s = std::sin(u(2));
    Matrix t(4, 3);
    for (int j = 0; j < 2; ++j) {
      const Eigen::Vector3d& dp = j == 0 ? dp0 : dp1;
      t(0, j) = r * dp(0) * c;
      t(1, j) = r * dp(0) * s;
      t(2, j) = r * dp(1);
      t(3, j) = r * dp(2);
    }
    const double radius = 1.0 + r * p(0);
    t(0, 2) = -radius * s;
    t(1, 2) = radius * c;
    t(2, 2) = 0.0;
    t(3, 2) = 0.0;
    return t;
  };
  b.outward = [sphere_point](const Vector& u) {
    const Eigen::Vector3d p = sphere_point(u);
    Vector x(4);
    x << p(0) * std::cos(u(2)), p(0) * std::sin(u(2)), p(1), p(2);
    return x;
  };
  b.resolution = {32};
  b.listed = {"circle"};
  b.default_field = "circle";
  b.fields = [](const std::string& name) -> std::optional<UnitTangentField> {
    if (name == "circle") {
      return UnitTangentField{name, [](const SurfacePoint& sp) {
                                Vector w(4);
                                w << -std::sin(sp.u(2)), std::cos(sp.u(2)), 0.0, 0.0;
                                return w;
                              }};
    }
    return std::nullopt;
  };
  return b;
}

Built build_immersion(const ScenarioSpec& spec) {
  using Kind = AmbientDescriptor::Kind;
  const auto& im = spec.immersion;
  const auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("immersion '" + im.kind + "' " + what);
  };
  if (im.kind == "sphere") {
    require(spec.ambient.kind == Kind::Euclidean, "requires a euclidean ambient");
    return sphere(spec.ambient.dim);
  }
  if (im.kind == "tube_s2") {
    require(spec.ambient.kind == Kind::Euclidean && spec.ambient.dim == 4,
            "requires euclidean(4)");
    return tube_s2(param(im, "r", 0.3));
  }
  if (im.kind == "flat_slice") {
    require(spec.ambient.kind == Kind::FlatTorus, "requires a flat_torus ambient");
    return flat_slice(spec.ambient.dim, param(im, "height", 0.5));
  }
  if (im.kind == "clifford_t3") {
    require(spec.ambient.kind == Kind::Berger, "requires a berger ambient");
    return clifford_t3(param(im, "a0", kPi / 4), param(im, "wobble", 0.0));
  }
  if (im.kind == "tube_circle") {
    require((spec.ambient.kind == Kind::Euclidean || spec.ambient.kind == Kind::Hyperbolic) &&
                spec.ambient.dim == 4,
            "requires euclidean(4) or hyperbolic(4)");
    return tube_circle(param(im, "r", 0.5));
  }
  throw ConfigError("unknown immersion kind '" + im.kind + "'");
}

Vector reference_parameter(const std::vector<DomainFactor>& domain) {
  Vector u(static_cast<int>(domain.size()));
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const auto& f = domain[i];
    u(static_cast<int>(i)) =
        f.kind == DomainFactor::Kind::Polar ? 0.5 * (f.lo + f.hi) : f.lo + 0.37 * f.length();
  }
  return u;
}

}  // namespace

ScenarioSpec parse_scenario_name(const std::string& name) {
  using Kind = AmbientDescriptor::Kind;
  ScenarioSpec spec;
  spec.name = name;
  std::smatch match;
  static const std::regex round(R"(s(\d)_round)");
  static const std::regex tube_s2_re(R"(tube_s2_r(.+))");
  static const std::regex berger_re(
      R"(clifford_t3_berger(?:_l([^_]+)_([^_]+)_([^_]+))?(?:_w([^_]+))?)");
  static const std::regex tube_circle_re(R"(tube_circle_r(.+))");
  static const std::regex hyperbolic_re(R"(hyperbolic_circle_tube_r(.+))");

  if (std::regex_match(name, match, round)) {
    const int d = std::stoi(match[1].str());
    if (d % 2 == 0 || d + 1 > kMaxDim) {
      throw ConfigError("s" + match[1].str() + "_round: only odd spheres S^1, S^3, S^5");
    }
    spec.ambient = {Kind::Euclidean, d + 1, {1, 1, 1}, {}};
    spec.immersion = {"sphere", {}};
  } else if (std::regex_match(name, match, tube_s2_re)) {
    spec.ambient = {Kind::Euclidean, 4, {1, 1, 1}, {}};
    spec.immersion = {"tube_s2", {{"r", parse_number(match[1].str(), "tube radius")}}};
  } else if (name == "flat_t3") {
    spec.ambient = {Kind::FlatTorus, 4, {1, 1, 1}, {}};
    spec.immersion = {"flat_slice", {{"height", 0.5}}};
  } else if (std::regex_match(name, match, berger_re)) {
    spec.ambient = {Kind::Berger, 4, {1, 1, 1}, {}};
    if (match[1].matched) {
      for (int i = 0; i < 3; ++i) {
        spec.ambient.lambda[static_cast<std::size_t>(i)] =
            parse_number(match[i + 1].str(), "berger coefficient");
      }
    }
    spec.immersion = {"clifford_t3", {}};
    if (match[4].matched) {
      spec.immersion.params["wobble"] = parse_number(match[4].str(), "wobble");
    }
  } else if (std::regex_match(name, match, tube_circle_re)) {
    spec.ambient = {Kind::Euclidean, 4, {1, 1, 1}, {}};
    spec.immersion = {"tube_circle", {{"r", parse_number(match[1].str(), "tube radius")}}};
  } else if (std::regex_match(name, match, hyperbolic_re)) {
    spec.ambient = {Kind::Hyperbolic, 4, {1, 1, 1}, {}};
    spec.immersion = {"tube_circle", {{"r", parse_number(match[1].str(), "tube radius")}}};
  } else {
    throw ConfigError("unknown scenario '" + name + "'; see `transgauss list`");
  }
  return spec;
}

Scenario build_scenario(const ScenarioSpec& spec, DiffConfig diff) {
  if (spec.orientation != 1 && spec.orientation != -1) {
    throw ConfigError("orientation must be +1 or -1");
  }
  diff.validate();
  Built b = build_immersion(spec);
  AmbientPtr ambient;
  try {
    ambient = make_ambient(spec.ambient, diff);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  // Orientation +1 makes (frame, eta) positive in the chart; flip it when
  // that normal points inward.
  ImmersedHypersurface probe(spec.name, ambient, b.domain, b.f, b.df, 1, b.euler_char);
  const Vector u0 = reference_parameter(b.domain);
  const SurfacePoint sp = probe.evaluate(u0);
  const double side = sp.normal.dot(sp.metric * b.outward(u0));
  const int base = side >= 0.0 ? 1 : -1;

  Scenario s;
  s.name = spec.name;
  s.ambient_name = ambient->name();
  s.surface = std::make_shared<const ImmersedHypersurface>(probe.with_orientation(base * spec.orientation));
  s.listed_fields = b.listed;
  s.default_field = b.default_field;
  s.default_resolution = b.resolution;
  auto fields = b.fields;
  const std::string scenario_name = spec.name;
  s.field_factory = [fields, scenario_name](const std::string& name) {
    if (auto field = fields(name)) return *field;
    throw ConfigError("scenario '" + scenario_name + "' has no vector field '" + name + "'");
  };
  s.declares_leaves = b.leaves;
  return s;
}

Scenario make_scenario(const std::string& name, int orientation, DiffConfig diff) {
  ScenarioSpec spec = parse_scenario_name(name);
  spec.orientation = orientation;
  return build_scenario(spec, diff);
}

const std::vector<CatalogueEntry>& catalogue() {
  static const std::vector<CatalogueEntry> entries = {
      {"s3_round", "euclidean(4)", 3, 0, {"hopf", "hopf_rot"}},
      {"s1_round", "euclidean(2)", 1, 0, {"hopf"}},
      {"s5_round", "euclidean(6)", 5, 0, {"hopf"}},
      {"tube_s2_r{r}", "euclidean(4)", 3, 0, {"circle", "twist{k}"}},
      {"flat_t3", "flat_torus(4)", 3, 0, {"coord1", "coord2", "coord3"}},
      {"clifford_t3_berger", "berger(λ)", 3, 0, {"coord1", "coord2", "coord3"}},
      {"tube_circle_r{r}", "euclidean(4)", 3, 0, {"circle"}},
      {"hyperbolic_circle_tube_r{r}", "hyperbolic(4)", 3, 0, {"circle"}},
  };
  return entries;
}

std::string catalogue_listing() {
  std::ostringstream out;
  for (const auto& e : catalogue()) {
    out << e.name << ' ' << e.ambient << " dim=" << e.dim << " chi=" << e.euler_char << " v:{";
    for (std::size_t i = 0; i < e.fields.size(); ++i) out << (i ? "," : "") << e.fields[i];
    out << "}\n";
  }
  out << "  clifford_t3_berger_l{l1}_{l2}_{l3}[_w{w}] selects berger(l1,l2,l3) and a wobble\n";
  return out.str();
}

std::vector<std::string> representative_scenarios() {
  return {"s3_round",
          "tube_s2_r0.3",
          "flat_t3",
          "clifford_t3_berger",
          "clifford_t3_berger_l1_1.5_2",
          "clifford_t3_berger_l0.8_1.2_1.6_w0.1",
          "tube_circle_r0.5"};
}

}  // namespace transgauss
