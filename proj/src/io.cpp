#include "spectra/io.hpp"

#include <fstream>
#include <sstream>

namespace spectra {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

double double_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw ParseError("expected a number");
}

template <typename T>
T scalar_from_json(const Json& j);

template <>
Rational scalar_from_json<Rational>(const Json& j) {
  return rational_from_json(j);
}

template <>
double scalar_from_json<double>(const Json& j) {
  return double_from_json(j);
}

template <typename T>
Matrix<T> matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  std::vector<std::vector<T>> rows;
  for (const Json& r : j) {
    if (!r.is_array()) throw ParseError("matrix row must be an array");
    std::vector<T> row;
    for (const Json& x : r) row.push_back(scalar_from_json<T>(x));
    rows.push_back(std::move(row));
  }
  try {
    return Matrix<T>::from_rows(rows);
  } catch (const DimensionMismatch& e) {
    throw ParseError(e.what());
  }
}

Json monomial_json(const Monomial& m) {
  Json out = Json::array();
  for (unsigned e : m) out.push_back(e);
  return out;
}

Monomial monomial_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw ParseError("monomial must list " + std::to_string(n) + " exponents");
  Monomial m;
  for (const Json& e : j) {
    if (!e.is_number_unsigned()) throw ParseError("monomial exponents must be non-negative integers");
    m.push_back(e.get<unsigned>());
  }
  return m;
}

template <typename T>
Json poly_json(const MatrixPoly<T>& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(Json{{"monomial", monomial_json(m)}, {"coeff", to_json(c)}});
  return Json{{"rows", p.rows()}, {"cols", p.cols()}, {"terms", terms}};
}

template <typename T>
MatrixPoly<T> poly_from_json(const Json& j, std::size_t n) {
  MatrixPoly<T> p(size_field(j, "rows"), size_field(j, "cols"), n);
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  for (const Json& t : terms) {
    try {
      p.add(monomial_from_json(field(t, "monomial"), n), matrix_from_json<T>(field(t, "coeff")));
    } catch (const DimensionMismatch& e) {
      throw ParseError(e.what());
    }
  }
  return p;
}

Json weight_json(const Rational& w) { return to_json(w); }
Json weight_json(double w) { return w; }

template <typename T>
Json certificate_json(const Certificate<T>& c, const char* mode) {
  auto terms = [](const std::vector<WeightedFactor<T>>& ts) {
    Json out = Json::array();
    for (const auto& t : ts) out.push_back(Json{{"weight", weight_json(t.weight)}, {"factor", poly_json(t.factor)}});
    return out;
  };
  return Json{{"mode", mode},
              {"l1_dim", c.l1_dim},
              {"l2_dim", c.l2_dim},
              {"n", c.n},
              {"sos", terms(c.sos)},
              {"pencil", terms(c.pencil)},
              {"provenance", c.provenance}};
}

template <typename T>
Certificate<T> certificate_from_json(const Json& j) {
  Certificate<T> c(size_field(j, "l1_dim"), size_field(j, "l2_dim"), size_field(j, "n"));
  try {
    for (const Json& t : field(j, "sos"))
      c.add_sos(scalar_from_json<T>(field(t, "weight")), poly_from_json<T>(field(t, "factor"), c.n));
    for (const Json& t : field(j, "pencil"))
      c.add_pencil(scalar_from_json<T>(field(t, "weight")), poly_from_json<T>(field(t, "factor"), c.n));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  if (j.contains("provenance")) {
    for (const Json& p : j.at("provenance")) {
      if (!p.is_string()) throw ParseError("provenance entries must be strings");
      c.provenance.push_back(p.get<std::string>());
    }
  }
  return c;
}

Json functional_json(const CoefficientFunctional& f) {
  Json out = Json::array();
  for (const auto& [m, y] : f) out.push_back(Json{{"monomial", monomial_json(m)}, {"matrix", to_json(y)}});
  return out;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational must be a \"p/q\" string or an integer");
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

QMatrix qmatrix_from_json(const Json& j) { return matrix_from_json<Rational>(j); }

Json to_json(const DMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

DMatrix dmatrix_from_json(const Json& j) { return matrix_from_json<double>(j); }

Json to_json(const LinearPencil& l) {
  Json coeffs = Json::array();
  for (const QMatrix& c : l.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"d", l.d()}, {"n", l.n()}, {"coefficients", coeffs}};
}

LinearPencil pencil_from_json(const Json& j) {
  const Json& cs = field(j, "coefficients");
  if (!cs.is_array()) throw ParseError("'coefficients' must be an array");
  std::vector<QMatrix> coeffs;
  for (const Json& c : cs) coeffs.push_back(qmatrix_from_json(c));
  try {
    LinearPencil l(std::move(coeffs));
    if (j.contains("d") && size_field(j, "d") != l.d()) throw ParseError("pencil 'd' does not match its coefficients");
    if (j.contains("n") && size_field(j, "n") != l.n()) throw ParseError("pencil 'n' does not match its coefficients");
    return l;
  } catch (const DimensionMismatch& e) {
    throw ParseError(std::string("pencil: ") + e.what());
  }
}

Json to_json(const MatrixTuple& x) {
  Json entries = Json::array();
  for (const QMatrix& e : x.entries) entries.push_back(to_json(e));
  return Json{{"m", x.m}, {"entries", entries}};
}

MatrixTuple tuple_from_json(const Json& j) {
  MatrixTuple x;
  x.m = size_field(j, "m");
  for (const Json& e : field(j, "entries")) {
    QMatrix q = qmatrix_from_json(e);
    if (q.rows() != x.m || q.cols() != x.m || !q.is_symmetric()) throw ParseError("tuple entries must be symmetric m x m");
    x.entries.push_back(std::move(q));
  }
  return x;
}

Json to_json(const AffineFunctional& f) {
  Json lin = Json::array();
  for (const Rational& c : f.linear) lin.push_back(to_json(c));
  return Json{{"constant", to_json(f.a0)}, {"linear", lin}, {"text", f.str()}};
}

Json to_json(const PencilPoint& x) {
  Json out = Json::array();
  for (const Rational& c : x) out.push_back(to_json(c));
  return out;
}

Json to_json(const ExactCertificate& c) { return certificate_json(c, "exact"); }
Json to_json(const NumericCertificate& c) { return certificate_json(c, "numeric"); }

bool certificate_is_exact(const Json& j) {
  const Json& m = field(j, "mode");
  if (m == "exact") return true;
  if (m == "numeric") return false;
  throw ParseError("certificate mode must be 'exact' or 'numeric'");
}

ExactCertificate exact_certificate_from_json(const Json& j) { return certificate_from_json<Rational>(j); }
NumericCertificate numeric_certificate_from_json(const Json& j) { return certificate_from_json<double>(j); }

Json to_json(const Signature& s) {
  return Json{{"positive", s.n_plus}, {"negative", s.n_minus}, {"zero", s.n_zero}};
}

Json to_json(const RegionClassification& r) {
  Json dirs = Json::array();
  for (const QVector& v : r.affine_hull.directions) dirs.push_back(to_json(v));
  Json out{{"kind", to_string(r.kind)},
           {"dim", r.dim},
           {"affine_hull", Json{{"base", to_json(r.affine_hull.base)}, {"directions", dirs}}}};
  out["interior_point"] = r.interior_point ? to_json(*r.interior_point) : Json(nullptr);
  out["facets"] = r.facets;
  out["implicit_equalities"] = r.implicit_equalities;
  return out;
}

Json to_json(const FarkasCertificate& f) {
  Json cs = Json::array();
  for (const Rational& c : f.coeffs) cs.push_back(to_json(c));
  return Json{{"constant", to_json(f.c0)}, {"coefficients", cs}};
}

Json to_json(const VerificationReport& r) {
  Json per = Json::array();
  for (const auto& m : r.per_monomial) per.push_back(Json{{"monomial", monomial_json(m.monomial)}, {"residual", m.residual}});
  return Json{{"mode", r.mode == VerifyMode::Exact ? "exact" : "numeric"},
              {"pass", r.pass},
              {"residual", r.residual},
              {"per_monomial", per}};
}

Json to_json(const AmGmChain& c) {
  return Json{{"equations", c.equations},
              {"sum_p_squared", to_json(c.sum_p_squared)},
              {"sum_r_squared", to_json(c.sum_r_squared)},
              {"sum_pr", to_json(c.sum_pr)},
              {"mean", to_json(c.mean)},
              {"det_constant", to_json(c.det_constant)},
              {"det_linear", to_json(c.det_linear)},
              {"det_product", to_json(c.det_product)},
              {"det_identity_holds", c.det_identity_holds}};
}

Json to_json(const RefutationReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.reduction_steps) steps.push_back(functional_json(s));
  Json out{{"degree", r.degree},
           {"status", to_string(r.status)},
           {"exact", r.exact},
           {"witness_value", to_json(r.witness_value)},
           {"witness", functional_json(r.witness)},
           {"reduction_steps", steps},
           {"trace", r.trace}};
  out["chain"] = r.chain ? to_json(*r.chain) : Json(nullptr);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace spectra
