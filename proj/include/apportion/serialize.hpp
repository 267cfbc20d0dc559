#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "apportion/certificate.hpp"
#include "apportion/classifier.hpp"
#include "apportion/constant_set.hpp"
#include "apportion/jordan.hpp"
#include "apportion/report.hpp"
#include "apportion/search.hpp"

namespace apportion {

using Json = nlohmann::json;

// Complex numbers are [re, im] pairs; matrices are arrays of rows.
Json to_json(Complex z);
Complex complex_from_json(const Json& j);
Json to_json(const ComplexMatrix& A);
ComplexMatrix matrix_from_json(const Json& j);

// JordanSpec: array of [lambda, size]; lambda is [re, im] or a real number.
// Objects {"lambda": ..., "size": ...} are accepted on input.
Json to_json(const JordanSpec& spec);
JordanSpec jordan_from_json(const Json& j);

// {"order": n, "entries": [...]} or {"jordan": [...]}, exactly one of the two.
struct MatrixDocument {
    std::variant<ComplexMatrix, JordanSpec> content;
    ComplexMatrix matrix() const;  // build_jordan for the spec form
};
MatrixDocument document_from_json(const Json& j);
MatrixDocument parse_document(const std::string& text);  // InvalidInput on malformed JSON
Json to_json(const MatrixDocument& doc);

Json to_json(const ConstantSet& k);
Json to_json(const UniformityReport& r);
Json to_json(const ApportionCertificate& c);
Json to_json(const ClassificationReport& r);
Json to_json(const SearchOutcome& o, bool with_transcript);
Json to_json(const SigmaReport& s, bool with_transcript);

// Certificate JSON back to a struct; B is recomputed from A, M and Minv.
ApportionCertificate certificate_from_json(const Json& j);

}  // namespace apportion
