#include "lmop/serialize.hpp"

#include <cmath>

namespace lmop {

namespace {

[[noreturn]] void bad_config(const std::string& what) { fail(Errc::ConfigError, what); }

double require_number(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    bad_config("missing or non-numeric field '" + key + "'");
  return j[key].get<double>();
}

std::function<double(double)> density_from_json(const Json& j) {
  if (j.is_null() || (j.is_object() && j.value("kind", "uniform") == "uniform"))
    return [](double) { return 1.0; };
  if (j.is_object() && j["kind"] == "trig_poly") {
    std::vector<double> cos_c = j.value("cos", std::vector<double>{});
    std::vector<double> sin_c = j.value("sin", std::vector<double>{});
    return [cos_c, sin_c](double t) {
      double v = 0.0;
      for (std::size_t k = 0; k < cos_c.size(); ++k) v += cos_c[k] * std::cos(k * t);
      for (std::size_t k = 0; k < sin_c.size(); ++k) v += sin_c[k] * std::sin((k + 1) * t);
      return v;
    };
  }
  bad_config("unknown density kind");
}

std::vector<CircleAtom> atoms_from_json(const Json& j) {
  std::vector<CircleAtom> atoms;
  if (!j.is_array()) bad_config("'atoms' must be an array of [theta, weight] pairs");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad_config("atom entries are [theta, weight]");
    atoms.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return atoms;
}

RealMeasure real_measure_from_json(const Json& j, bool normalize) {
  if (j.contains("a") || j.contains("density")) {
    const double a = require_number(j, "a");
    const double b = require_number(j, "b");
    return RealMeasure::from_density(a, b, density_from_json(j.value("density", Json())),
                                     j.value("nodes", 200), normalize);
  }
  std::vector<RealAtom> atoms;
  for (const auto& e : j.value("atoms", Json::array())) {
    if (!e.is_array() || e.size() != 2) bad_config("real atom entries are [x, weight]");
    atoms.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return RealMeasure::from_atoms(std::move(atoms), normalize);
}

}  // namespace

Json poly_to_json(const HalfLaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({e, c.real(), c.imag()});
  return out;
}

HalfLaurentPoly poly_from_json(const Json& j, BranchSpec branch) {
  HalfLaurentPoly p(branch);
  if (!j.is_array()) bad_config("polynomial must be an array of [twice_exp, re, im]");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) bad_config("polynomial entries are [twice_exp, re, im]");
    p.set_coeff(e[0].get<int>(), Complex(e[1].get<double>(), e[2].get<double>()));
  }
  return p;
}

Json branch_to_json(const BranchSpec& b) {
  return Json{{"t0", b.t0},
              {"closed_end", b.closure == ArcClosure::LeftClosed ? "left" : "right"}};
}

BranchSpec branch_from_json(const Json& j) {
  BranchSpec b;
  b.t0 = j.value("t0", 0.0);
  const std::string closed = j.value("closed_end", "left");
  if (closed == "left")
    b.closure = ArcClosure::LeftClosed;
  else if (closed == "right")
    b.closure = ArcClosure::RightClosed;
  else
    bad_config("closed_end must be 'left' or 'right'");
  return b;
}

MeasureSource measure_from_json(const Json& j, BranchSpec branch) {
  if (!j.is_object() || !j.contains("type")) bad_config("measure needs a 'type' field");
  const std::string type = j["type"].get<std::string>();
  const bool normalize = j.value("normalize", true);
  if (type == "atoms")
    return CircleMeasure::from_atoms(atoms_from_json(j.value("atoms", Json::array())),
                                     branch, normalize);
  if (type == "arc") {
    const double alpha = require_number(j, "alpha");
    const double beta = require_number(j, "beta");
    const int nodes = j.value("nodes", 200);
    return CircleMeasure::from_arc(alpha, beta, density_from_json(j.value("density", Json())),
                                   nodes, branch, normalize);
  }
  if (type == "lebesgue") return CircleMeasure::lebesgue(branch, j.value("nodes", 200));
  if (type == "szego_of_real") {
    if (!j.contains("real")) bad_config("szego_of_real needs a 'real' measure");
    return szego_map(real_measure_from_json(j["real"], normalize), branch);
  }
  if (type == "functional") {
    const int k_max = j.value("k_max", 0);
    std::map<int, Complex> c;
    for (const auto& e : j.value("c", Json::array())) {
      if (!e.is_array() || e.size() != 3) bad_config("functional entries are [k, re, im]");
      c[e[0].get<int>()] = Complex(e[1].get<double>(), e[2].get<double>());
    }
    if (!c.count(0)) bad_config("functional needs the moment c_0");
    return MomentFunctional(std::move(c), k_max);
  }
  bad_config("unknown measure type '" + type + "'");
}

Json measure_to_json(const MeasureSource& m) {
  if (const auto* f = std::get_if<MomentFunctional>(&m)) {
    Json c = Json::array();
    for (int k = -f->k_max(); k <= f->k_max(); ++k) {
      const Complex v = f->moment(k);
      if (v != 0.0) c.push_back({k, v.real(), v.imag()});
    }
    return Json{{"type", "functional"}, {"k_max", f->k_max()}, {"c", c}};
  }
  const auto& cm = std::get<CircleMeasure>(m);
  Json atoms = Json::array();
  for (const auto& a : cm.support_points()) atoms.push_back({a.theta, a.weight});
  return Json{{"type", "atoms"}, {"atoms", atoms}, {"normalize", false}};
}

LoadedSystem system_from_json(const Json& j) {
  if (!j.is_object()) bad_config("system must be an object");
  const BranchSpec branch = branch_from_json(j);

  if (j.contains("at_system")) {
    const Json& aj = j["at_system"];
    const double alpha = require_number(aj, "alpha");
    const double beta = require_number(aj, "beta");
    const int nodes = aj.value("nodes", 200);
    CircleMeasure base = CircleMeasure::from_arc(
        alpha, beta, density_from_json(aj.value("density", Json())), nodes, branch, true);
    std::vector<std::function<double(double)>> weights;
    for (const auto& w : aj.value("weights", Json::array()))
      weights.push_back(density_from_json(w));
    const MultiIndex n = multi_index_from_json(aj.at("index"));
    ATSystem at = build_at_system(base, weights, n, aj.value("samples", 64),
                                  aj.value("seed", 0ull));
    return LoadedSystem{std::move(at.system), at.certificate};
  }

  if (!j.contains("measures")) bad_config("system needs 'measures'");

  if (j.contains("angelesco_arcs")) {
    const Json& arcs_json = j["angelesco_arcs"];
    const Json& measures = j["measures"];
    if (!arcs_json.is_array() || arcs_json.size() != measures.size())
      bad_config("angelesco_arcs must pair up with measures");
    std::vector<AngelescoArc> arcs;
    for (std::size_t i = 0; i < measures.size(); ++i) {
      AngelescoArc arc;
      arc.alpha = arcs_json[i][0].get<double>();
      arc.beta = arcs_json[i][1].get<double>();
      const Json& mj = measures[i];
      const std::string type = mj.value("type", "atoms");
      if (type == "atoms") {
        arc.atoms = atoms_from_json(mj.value("atoms", Json::array()));
      } else if (type == "arc") {
        arc.density = density_from_json(mj.value("density", Json()));
        arc.quad_nodes = mj.value("nodes", 200);
        if (mj.contains("atoms")) arc.atoms = atoms_from_json(mj["atoms"]);
      } else {
        bad_config("angelesco measures must be 'atoms' or 'arc'");
      }
      arcs.push_back(std::move(arc));
    }
    return LoadedSystem{build_angelesco(arcs, branch, j.value("normalize", true)),
                        std::nullopt};
  }

  std::vector<MeasureSource> entries;
  for (const auto& mj : j["measures"]) entries.push_back(measure_from_json(mj, branch));
  return LoadedSystem{MeasureSystem(std::move(entries), branch), std::nullopt};
}

Json system_to_json(const MeasureSystem& sys) {
  Json measures = Json::array();
  for (int jdx = 0; jdx < sys.r(); ++jdx) measures.push_back(measure_to_json(sys.entry(jdx)));
  Json out = branch_to_json(sys.branch());
  out["measures"] = std::move(measures);
  return out;
}

RealSystem real_system_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("measures")) bad_config("real system needs 'measures'");
  RealSystem out;
  for (const auto& mj : j["measures"])
    out.push_back(real_measure_from_json(mj, mj.value("normalize", true)));
  return out;
}

Json multi_index_to_json(const MultiIndex& n) {
  Json out = Json::array();
  for (int p : n.parts) out.push_back(p);
  return out;
}

MultiIndex multi_index_from_json(const Json& j) {
  if (!j.is_array()) bad_config("multi-index must be an array of integers");
  std::vector<int> parts;
  for (const auto& e : j) parts.push_back(e.get<int>());
  return MultiIndex(std::move(parts));
}

Json complex_to_json(const Complex& c) { return Json{c.real(), c.imag()}; }

Json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

Json normality_to_json(const NormalityReport& rep) {
  return Json{{"det", complex_to_json(rep.det)},
              {"sigma_min", finite_or_string(rep.sigma_min)},
              {"matrix_norm", rep.matrix_norm},
              {"sufficient_support", rep.sufficient_support},
              {"normal", rep.normal}};
}

}  // namespace lmop
