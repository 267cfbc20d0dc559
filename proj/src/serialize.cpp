#include "apportion/serialize.hpp"

#include <cmath>

#include "apportion/errors.hpp"

namespace apportion {
namespace {

double finite_number(const Json& j, const char* what) {
    if (!j.is_number()) throw InvalidInput(std::string(what) + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InvalidInput(std::string(what) + ": non-finite number");
    return v;
}

// Infinity and NaN have no JSON form; they are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {finite_number(j, "complex"), 0.0};
    if (!j.is_array() || j.size() != 2) throw InvalidInput("complex: expected [re, im]");
    return {finite_number(j[0], "complex"), finite_number(j[1], "complex")};
}

Json to_json(const ComplexMatrix& A) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < A.cols(); ++k) row.push_back(to_json(A(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("matrix: expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array() || j[0].empty()) throw InvalidInput("matrix: rows must be non-empty arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw InvalidInput("matrix: ragged rows");
        for (Eigen::Index k = 0; k < cols; ++k) A(i, k) = complex_from_json(row[static_cast<size_t>(k)]);
    }
    return A;
}

Json to_json(const JordanSpec& spec) {
    Json blocks = Json::array();
    for (const auto& b : spec.blocks) blocks.push_back(Json::array({to_json(b.lambda), b.size}));
    return blocks;
}

JordanSpec jordan_from_json(const Json& j) {
    const Json& list = j.is_object() && j.contains("blocks") ? j["blocks"] : j;
    if (!list.is_array() || list.empty()) throw InvalidInput("jordan: expected a non-empty array of blocks");
    JordanSpec spec;
    for (const Json& b : list) {
        Json lambda, size;
        if (b.is_array() && b.size() == 2) {
            lambda = b[0];
            size = b[1];
        } else if (b.is_object() && b.contains("lambda") && b.contains("size")) {
            lambda = b["lambda"];
            size = b["size"];
        } else {
            throw InvalidInput("jordan: block must be [lambda, size] or {lambda, size}");
        }
        if (!size.is_number_integer()) throw InvalidInput("jordan: block size must be an integer");
        const auto k = size.get<long long>();
        if (k < 1 || k > 4096) throw InvalidInput("jordan: block size out of range");
        spec.blocks.push_back({complex_from_json(lambda), static_cast<int>(k)});
    }
    validate(spec);
    return spec;
}

ComplexMatrix MatrixDocument::matrix() const {
    if (const auto* A = std::get_if<ComplexMatrix>(&content)) return *A;
    return build_jordan(std::get<JordanSpec>(content));
}

MatrixDocument document_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("document: expected an object");
    const bool has_entries = j.contains("entries"), has_jordan = j.contains("jordan");
    if (has_entries == has_jordan) throw InvalidInput("document: exactly one of \"entries\" and \"jordan\" is required");
    if (has_jordan) return {jordan_from_json(j["jordan"])};
    ComplexMatrix A = matrix_from_json(j["entries"]);
    if (A.rows() != A.cols()) throw InvalidInput("document: entries must be square");
    if (j.contains("order")) {
        if (!j["order"].is_number_integer() || j["order"].get<long long>() != A.rows())
            throw InvalidInput("document: order does not match the entries");
    }
    return {std::move(A)};
}

MatrixDocument parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
    return document_from_json(j);
}

Json to_json(const MatrixDocument& doc) {
    if (const auto* spec = std::get_if<JordanSpec>(&doc.content)) return {{"jordan", to_json(*spec)}};
    const auto& A = std::get<ComplexMatrix>(doc.content);
    return {{"order", A.rows()}, {"entries", to_json(A)}};
}

Json to_json(const ConstantSet& k) {
    Json j = {{"kind", k.kind_name()}, {"symbolic", k.symbolic()}, {"exact", k.exact()}};
    switch (k.kind) {
        case ConstantSet::Kind::OpenHalfLine:
        case ConstantSet::Kind::ClosedHalfLine:
        case ConstantSet::Kind::SupersetOfOpenHalfLine:
        case ConstantSet::Kind::SupersetOfClosedHalfLine: j["lo"] = number(k.lo); break;
        case ConstantSet::Kind::FiniteSet:
        case ConstantSet::Kind::SupersetOfFiniteSet: j["values"] = k.values; break;
        default: break;
    }
    if (!k.exact()) j["lower_bound"] = number(k.floor);
    return j;
}

Json to_json(const UniformityReport& r) {
    return {{"is_uniform", r.is_uniform}, {"kappa", number(r.kappa)}, {"defect", number(r.defect)}};
}

Json to_json(const ApportionCertificate& c) {
    return {{"theorem_tag", std::string(to_string(c.tag))},
            {"kappa", number(c.kappa)},
            {"A", to_json(c.A)},
            {"M", to_json(c.M)},
            {"Minv", to_json(c.Minv)},
            {"B", to_json(c.B)}};
}

Json to_json(const ClassificationReport& r) {
    Json j = {{"verdict", std::string(to_string(r.verdict))},
              {"theorem_tag", r.theorem_tag},
              {"constants", to_json(r.constants)},
              {"approximate_eigen", r.approximate_eigen},
              {"bounds", {{"trace", number(r.trace_bound)}, {"hadamard", number(r.hadamard_bound)}}}};
    if (r.jordan) j["jordan"] = to_json(*r.jordan);
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    return j;
}

Json to_json(const SearchOutcome& o, bool with_transcript) {
    Json j = {{"found", o.found}, {"best_defect", number(o.best_defect)}, {"restarts_used", o.restarts_used}};
    if (o.certificate) j["certificate"] = to_json(*o.certificate);
    if (with_transcript) {
        Json t = Json::array();
        for (const double d : o.transcript) t.push_back(number(d));
        j["transcript"] = std::move(t);
    }
    return j;
}

Json to_json(const SigmaReport& s, bool with_transcript) {
    Json steps = Json::array();
    for (const auto& st : s.steps) {
        Json j = {{"m", st.m}, {"verdict", std::string(to_string(st.verdict))}, {"searched", st.searched}};
        if (st.searched) j["search"] = to_json(st.outcome, with_transcript);
        steps.push_back(std::move(j));
    }
    Json j = {{"steps", std::move(steps)}, {"sigma_theory_upper", s.sigma_theory_upper}};
    j["sigma_upper_empirical"] = s.sigma_upper_empirical ? Json(*s.sigma_upper_empirical) : Json(nullptr);
    return j;
}

ApportionCertificate certificate_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("A") || !j.contains("M") || !j.contains("Minv"))
        throw InvalidInput("certificate: A, M and Minv are required");
    const TheoremTag tag = j.contains("theorem_tag") ? tag_from_string(j["theorem_tag"].get<std::string>())
                                                     : TheoremTag::Search;
    ApportionCertificate c;
    c.A = matrix_from_json(j["A"]);
    c.M = matrix_from_json(j["M"]);
    c.Minv = matrix_from_json(j["Minv"]);
    c.tag = tag;
    require_square(c.A, "certificate");
    if (c.M.rows() != c.A.rows() || c.M.cols() != c.A.cols() || c.Minv.rows() != c.A.rows() ||
        c.Minv.cols() != c.A.cols())
        throw InvalidInput("certificate: shape mismatch");
    c.B = similarity_image(c.M, c.Minv, c.A);
    c.kappa = is_uniform(c.B).kappa;
    return c;
}

}  // namespace apportion
