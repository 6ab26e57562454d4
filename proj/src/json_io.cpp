#include "ballchain/json_io.hpp"

#include <cmath>
#include <fstream>
#include <optional>

namespace ballchain {

namespace {

double finite_or_null(double v) { return v; }  // nlohmann serializes NaN/inf as null

struct Scalar {
  cdouble value;
  std::optional<GaussianRational> exact;
};

Scalar scalar_from_json(const Json& j) {
  Scalar s;
  if (j.is_number()) {
    s.value = cdouble{j.get<double>(), 0.0};
    return s;
  }
  if (!j.is_object())
    throw Error(Errc::io_error, "complex scalar must be a number or {re, im} object");
  Rational re_exact(0), im_exact(0);
  bool exact = true;
  double re = 0.0, im = 0.0;
  auto read_part = [&](const char* key, double& out, Rational& out_exact) {
    if (!j.contains(key)) return;
    const Json& p = j.at(key);
    if (p.is_number()) {
      out = p.get<double>();
      exact = false;
    } else if (p.is_string()) {
      const auto r = Rational::parse(p.get<std::string>());
      if (!r) throw Error(Errc::io_error, "malformed rational: " + p.get<std::string>());
      out_exact = *r;
      out = r->to_double();
    } else {
      throw Error(Errc::io_error, "scalar parts must be numbers or rational strings");
    }
  };
  read_part("re", re, re_exact);
  read_part("im", im, im_exact);
  s.value = cdouble{re, im};
  if (exact) s.exact = GaussianRational{re_exact, im_exact};
  return s;
}

}  // namespace

Json complex_to_json(cdouble c) {
  Json j = Json::object();
  j["re"] = finite_or_null(c.real());
  j["im"] = finite_or_null(c.imag());
  return j;
}

Operator operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim"))
    throw Error(Errc::io_error, "operator JSON needs a dim field");
  const int n = j.at("dim").get<int>();
  if (n < 1 || n > kDimCap)
    throw Error(Errc::io_error, "operator dimension out of range");

  Operator out;
  if (j.contains("entries")) {
    const Json& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw Error(Errc::io_error, "entries must be an n-row array");
    CMatrix m(n);
    std::vector<GaussianRational> exact;
    bool all_exact = true;
    for (int i = 0; i < n; ++i) {
      const Json& row = rows.at(i);
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw Error(Errc::io_error, "entries rows must have n columns");
      for (int c = 0; c < n; ++c) {
        const Scalar s = scalar_from_json(row.at(c));
        m(i, c) = s.value;
        if (s.exact)
          exact.push_back(*s.exact);
        else
          all_exact = false;
      }
    }
    out.entries = std::move(m);
    if (all_exact) out.exact_entries = std::move(exact);
  } else {
    out.entries = CMatrix(n);
  }

  if (j.contains("eigenvalues")) {
    const Json& eigs = j.at("eigenvalues");
    if (!eigs.is_array() || static_cast<int>(eigs.size()) != n)
      throw Error(Errc::io_error, "eigenvalues must be an n-element array");
    std::vector<GaussianRational> exact;
    bool all_exact = true;
    for (const Json& e : eigs) {
      const Scalar s = scalar_from_json(e);
      if (s.exact)
        exact.push_back(*s.exact);
      else
        all_exact = false;
    }
    if (all_exact) out.exact_eigenvalues = std::move(exact);
    if (!j.contains("entries")) {
      // eigenvalue-only input: store them on the diagonal
      CMatrix m(n);
      for (int i = 0; i < n; ++i) m(i, i) = scalar_from_json(eigs.at(i)).value;
      out.entries = std::move(m);
    } else {
      // both given: the declared spectrum must match the entries
      std::vector<cdouble> declared(n);
      for (int i = 0; i < n; ++i) declared[i] = scalar_from_json(eigs.at(i)).value;
      std::vector<cdouble> computed = eigenvalues(out.entries);
      for (const cdouble& d : declared) {
        double best = 1e300;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < computed.size(); ++i)
          if (std::abs(d - computed[i]) < best) {
            best = std::abs(d - computed[i]);
            arg = i;
          }
        if (best > 1e-6 * (1.0 + std::abs(d)))
          throw Error(Errc::invalid_input,
                      "declared eigenvalues do not match the matrix entries");
        computed.erase(computed.begin() + arg);
      }
    }
  }
  if (!j.contains("entries") && !j.contains("eigenvalues"))
    throw Error(Errc::io_error, "operator JSON needs entries or eigenvalues");
  out.validate();
  return out;
}

Json operator_to_json(const Operator& a) {
  Json j = Json::object();
  j["dim"] = a.dim();
  Json rows = Json::array();
  for (int i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (int c = 0; c < a.dim(); ++c) row.push_back(complex_to_json(a.entries(i, c)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

PolyMap polymap_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("coords"))
    throw Error(Errc::io_error, "polymap JSON needs dim and coords");
  const int n = j.at("dim").get<int>();
  const Json& coords = j.at("coords");
  if (!coords.is_array() || static_cast<int>(coords.size()) != n)
    throw Error(Errc::io_error, "coords must have one entry per coordinate");

  bool any_exact = false;
  std::vector<std::vector<std::pair<MultiIndex, GaussianRational>>> exact_low(n);
  std::vector<std::vector<Term>> built(n);
  for (int i = 0; i < n; ++i) {
    const Json& terms = coords.at(i).contains("terms") ? coords.at(i).at("terms")
                                                       : Json::array();
    for (const Json& tj : terms) {
      if (!tj.contains("exp"))
        throw Error(Errc::io_error, "polymap term needs an exp array");
      MultiIndex idx;
      for (const Json& e : tj.at("exp")) idx.exponents.push_back(e.get<int>());
      if (static_cast<int>(idx.exponents.size()) != n)
        throw Error(Errc::io_error, "term exponent arity mismatch");
      const Scalar s = scalar_from_json(tj);
      built[i].push_back(Term{idx, s.value});
      if (s.exact) {
        any_exact = true;
        if (idx.degree() <= 1) exact_low[i].push_back({idx, *s.exact});
      }
    }
  }
  PolyMap f(n, std::move(built));
  if (any_exact && j.value("normalized", false)) {
    // Exact-coefficient validation of the normalization contract.
    for (int i = 0; i < n; ++i) {
      for (const auto& [idx, q] : exact_low[i]) {
        if (idx.degree() == 0 && !(q == GaussianRational{}))
          throw Error(Errc::invalid_input, "exact constant term violates normalization");
        if (idx.degree() == 1) {
          int var = 0;
          for (int v = 0; v < n; ++v)
            if (idx.exponents[v] == 1) var = v;
          const GaussianRational expect{Rational(var == i ? 1 : 0), Rational(0)};
          if (!(q == expect))
            throw Error(Errc::invalid_input, "exact linear part violates normalization");
        }
      }
    }
    if (!f.is_normalized())
      throw Error(Errc::invalid_input, "map declared normalized but is not");
  }
  return f;
}

Json polymap_to_json(const PolyMap& f) {
  Json j = Json::object();
  j["dim"] = f.dim();
  Json coords = Json::array();
  for (int i = 0; i < f.dim(); ++i) {
    Json terms = Json::array();
    for (const Term& t : f.coord(i)) {
      Json tj = Json::object();
      tj["exp"] = t.exp.exponents;
      tj["re"] = t.coeff.real();
      tj["im"] = t.coeff.imag();
      terms.push_back(std::move(tj));
    }
    Json c = Json::object();
    c["terms"] = std::move(terms);
    coords.push_back(std::move(c));
  }
  j["coords"] = std::move(coords);
  return j;
}

AutomorphismWord word_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim"))
    throw Error(Errc::io_error, "word JSON needs a dim field");
  AutomorphismWord w;
  w.dim = j.at("dim").get<int>();
  for (const Json& fj : j.value("factors", Json::array())) {
    const std::string kind = fj.at("kind").get<std::string>();
    if (kind == "shear" || kind == "overshear") {
      const int axis = fj.at("axis").get<int>();
      std::vector<Term> poly;
      if (fj.contains("poly"))
        for (const Json& tj : fj.at("poly").value("terms", Json::array())) {
          MultiIndex idx;
          for (const Json& e : tj.at("exp")) idx.exponents.push_back(e.get<int>());
          poly.push_back(Term{idx, scalar_from_json(tj).value});
        }
      if (kind == "shear") {
        w.factors.push_back(ShearFactor::shear(w.dim, axis, std::move(poly)));
      } else {
        const cdouble scale = scalar_from_json(fj.at("scale")).value;
        w.factors.push_back(ShearFactor::overshear(w.dim, axis, scale, std::move(poly)));
      }
    } else if (kind == "linear") {
      const Json& rows = fj.at("matrix");
      CMatrix m(w.dim);
      for (int i = 0; i < w.dim; ++i)
        for (int c = 0; c < w.dim; ++c) m(i, c) = scalar_from_json(rows.at(i).at(c)).value;
      w.factors.push_back(ShearFactor::linear(std::move(m)));
    } else {
      throw Error(Errc::io_error, "unknown factor kind: " + kind);
    }
  }
  w.validate();
  if (j.value("normalized", false)) w = normalize(w);
  return w;
}

Json word_to_json(const AutomorphismWord& w) {
  Json j = Json::object();
  j["dim"] = w.dim;
  Json factors = Json::array();
  for (const ShearFactor& f : w.factors) {
    Json fj = Json::object();
    switch (f.kind) {
      case ShearFactor::Kind::shear:
      case ShearFactor::Kind::overshear: {
        fj["kind"] = f.kind == ShearFactor::Kind::shear ? "shear" : "overshear";
        fj["axis"] = f.axis;
        if (f.kind == ShearFactor::Kind::overshear) fj["scale"] = complex_to_json(f.scale);
        Json terms = Json::array();
        for (const Term& t : f.poly) {
          Json tj = Json::object();
          tj["exp"] = t.exp.exponents;
          tj["re"] = t.coeff.real();
          tj["im"] = t.coeff.imag();
          terms.push_back(std::move(tj));
        }
        Json poly = Json::object();
        poly["terms"] = std::move(terms);
        fj["poly"] = std::move(poly);
        break;
      }
      case ShearFactor::Kind::linear: {
        fj["kind"] = "linear";
        Json rows = Json::array();
        for (int i = 0; i < w.dim; ++i) {
          Json row = Json::array();
          for (int c = 0; c < w.dim; ++c) row.push_back(complex_to_json(f.matrix(i, c)));
          rows.push_back(std::move(row));
        }
        fj["matrix"] = std::move(rows);
        break;
      }
    }
    factors.push_back(std::move(fj));
  }
  j["factors"] = std::move(factors);
  j["normalized"] = w.normalized;
  return j;
}

std::vector<AutomorphismWord> words_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : j.at("words");
  std::vector<AutomorphismWord> out;
  for (const Json& wj : arr) out.push_back(word_from_json(wj));
  return out;
}

HerglotzField field_from_json(const Json& j, const FieldOptions& options) {
  if (!j.is_object() || !j.contains("A") || !j.contains("pieces"))
    throw Error(Errc::io_error, "field JSON needs A and pieces");
  const Operator a = operator_from_json(j.at("A"));
  std::vector<FieldPiece> pieces;
  for (const Json& pj : j.at("pieces")) {
    FieldPiece p;
    p.duration = pj.at("duration").get<double>();
    const std::string kind = pj.at("kind").get<std::string>();
    if (kind == "linear") {
      p.generator = LinearGenerator{};
    } else if (kind == "spirallike") {
      if (pj.contains("map")) {
        p.generator = SpirallikeGenerator{polymap_from_json(pj.at("map"))};
      } else if (pj.contains("word")) {
        AutomorphismWord w = word_from_json(pj.at("word"));
        if (!w.normalized) w = normalize(w);
        p.generator = SpirallikeGenerator{to_polymap(w)};
      } else {
        throw Error(Errc::io_error, "spirallike piece needs a map or a word");
      }
    } else {
      throw Error(Errc::io_error, "unknown piece kind: " + kind);
    }
    pieces.push_back(std::move(p));
  }
  return HerglotzField(a, std::move(pieces), options);
}

namespace {

Json vector_to_json(const CVector& z) {
  Json arr = Json::array();
  for (const cdouble& c : z) arr.push_back(complex_to_json(c));
  return arr;
}

Json witness_to_json(const ResonanceWitness& w) {
  Json j = Json::object();
  j["s"] = w.s;
  j["exponents"] = w.exponents;
  return j;
}

}  // namespace

Json profile_to_json(const OperatorProfile& p) {
  Json j = Json::object();
  j["m"] = p.m;
  j["k"] = p.k;
  j["kminus"] = p.kminus;
  j["kplus"] = p.kplus;
  j["numerical_radius"] = p.vr;
  j["operator_norm"] = p.opnorm;
  Json eigs = Json::array();
  for (const cdouble& l : p.eigenvalues) eigs.push_back(complex_to_json(l));
  j["eigenvalues"] = std::move(eigs);
  return j;
}

Json resonance_to_json(const ResonanceVerdict& v) {
  Json j = Json::object();
  j["kind"] = resonance_kind_name(v.kind);
  j["witness"] = v.witness ? witness_to_json(*v.witness) : Json(nullptr);
  j["real_resonant"] = v.real_resonant;
  j["real_witness"] = v.real_witness ? witness_to_json(*v.real_witness) : Json(nullptr);
  j["search_bound"] = v.search_bound;
  return j;
}

Json report_to_json(const CriterionReport& r) {
  Json j = Json::object();
  j["criterion"] = r.criterion;
  j["verdict"] = verdict_name(r.verdict);
  j["min_margin"] = std::isfinite(r.min_margin) ? Json(r.min_margin) : Json(nullptr);
  j["witness"] = r.witness ? vector_to_json(*r.witness) : Json(nullptr);
  j["witness_tangent"] =
      r.witness_tangent ? vector_to_json(*r.witness_tangent) : Json(nullptr);
  j["sample_count"] = r.sample_count;
  j["radii"] = r.radii;
  j["reason"] = r.reason;
  return j;
}

Json flow_to_json(const FlowResult& fr) {
  Json j = Json::object();
  j["value"] = vector_to_json(fr.value);
  j["steps"] = fr.steps;
  j["max_local_error"] = fr.max_local_error;
  return j;
}

Json parametric_to_json(const ParametricLimit& pl) {
  Json j = Json::object();
  j["value"] = vector_to_json(pl.value);
  j["converged"] = pl.converged;
  j["t_reached"] = pl.t_reached;
  return j;
}

Json approximation_to_json(const ApproximationRun& run) {
  Json j = Json::object();
  j["criterion"] = run.criterion;
  j["schedule"] = run.schedule;
  j["test_radii"] = run.test_radii;
  Json sels = Json::array();
  for (const Selection& s : run.selections) {
    Json sj = Json::object();
    sj["m"] = s.m;
    sj["r"] = s.r;
    sj["index"] = s.index ? Json(*s.index) : Json(nullptr);
    sj["margin"] = std::isfinite(s.margin) ? Json(s.margin) : Json(nullptr);
    sj["note"] = s.note;
    sels.push_back(std::move(sj));
  }
  j["selections"] = std::move(sels);
  Json dists = Json::array();
  for (const auto& row : run.distances) {
    Json rj = Json::array();
    for (double d : row) rj.push_back(std::isfinite(d) ? Json(d) : Json(nullptr));
    dists.push_back(std::move(rj));
  }
  j["distances"] = std::move(dists);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Errc::io_error, "malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ballchain
