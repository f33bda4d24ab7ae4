#pragma once

#include <json.hpp>

#include <string>

#include "spectra/certificate.hpp"
#include "spectra/engine.hpp"
#include "spectra/lp.hpp"
#include "spectra/pencil.hpp"
#include "spectra/region.hpp"
#include "spectra/sdp.hpp"

namespace spectra {

using Json = nlohmann::ordered_json;

/// Rationals are written as "p/q" (or "p") strings. Readers also accept
/// JSON integers and decimal strings. Every reader throws ParseError.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const QMatrix& m);
QMatrix qmatrix_from_json(const Json& j);
Json to_json(const DMatrix& m);
DMatrix dmatrix_from_json(const Json& j);

/// {"d", "n", "coefficients": [P0, P1, ..., Pn]}.
Json to_json(const LinearPencil& l);
LinearPencil pencil_from_json(const Json& j);

/// {"m", "entries": [X1, ..., Xn]}.
Json to_json(const MatrixTuple& x);
MatrixTuple tuple_from_json(const Json& j);

Json to_json(const AffineFunctional& f);
Json to_json(const PencilPoint& x);

/// {"mode": "exact" | "numeric", "l1_dim", "l2_dim", "n", "sos": [...],
/// "pencil": [...], "provenance": [...]}; each term is {"weight", "factor"}
/// and a factor is {"rows", "cols", "terms": [{"monomial", "coeff"}]}.
Json to_json(const ExactCertificate& c);
Json to_json(const NumericCertificate& c);
bool certificate_is_exact(const Json& j);
ExactCertificate exact_certificate_from_json(const Json& j);
NumericCertificate numeric_certificate_from_json(const Json& j);

Json to_json(const Signature& s);
Json to_json(const RegionClassification& r);
Json to_json(const FarkasCertificate& f);
Json to_json(const VerificationReport& r);
Json to_json(const AmGmChain& c);
Json to_json(const RefutationReport& r);

/// Reads and parses a JSON file; throws ParseError.
Json read_json_file(const std::string& path);

}  // namespace spectra
