// apportion: classify, construct and verify apportionments of complex matrices.
//
// Exit codes:
//   0 success
//   2 malformed input (JSON, shapes, arguments)
//   3 unsupported order, budget exceeded, or invalid region arguments
//   4 matrix is not apportionable
//   5 apportionability unknown
//   6 requested kappa is not a proven member of K(A)
//   7 singular M

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "apportion/classifier.hpp"
#include "apportion/constructors.hpp"
#include "apportion/errors.hpp"
#include "apportion/search.hpp"
#include "apportion/serialize.hpp"

namespace {

using namespace apportion;

enum Exit { kOk = 0, kInput = 2, kUnsupported = 3, kNot = 4, kUnknown = 5, kKappa = 6, kSingular = 7 };

std::string slurp(const std::string& source) {
    if (!source.empty() && (source.front() == '{' || source.front() == '[')) return source;
    if (source == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(source);
    if (!in) throw InvalidInput("cannot read " + source);
    return {std::istreambuf_iterator<char>(in), {}};
}

Json read_json(const std::string& source) {
    try {
        return Json::parse(slurp(source));
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

ClassificationReport classify_doc(const MatrixDocument& doc) {
    if (const auto* spec = std::get_if<JordanSpec>(&doc.content)) return classify(*spec);
    return classify(std::get<ComplexMatrix>(doc.content));
}

ApportionCertificate certify_doc(const MatrixDocument& doc, std::optional<double> kappa) {
    if (const auto* spec = std::get_if<JordanSpec>(&doc.content)) return certify(*spec, kappa);
    return certify(std::get<ComplexMatrix>(doc.content), kappa);
}

SearchConfig search_config(std::uint64_t seed, int restarts, int max_iters, double target) {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.defect_target = target;
    cfg.validate();
    return cfg;
}

Json demo_entry(const std::string& name, const ApportionCertificate& c) {
    const UniformityReport u = is_uniform(similarity_image(c.M, c.A));
    return {{"name", name},
            {"theorem_tag", std::string(to_string(c.tag))},
            {"kappa", c.kappa},
            {"verification", to_json(u)},
            {"B", to_json(c.B)}};
}

int run(int argc, char** argv) {
    CLI::App app{"Apportionment of complex matrices: classification, construction, verification, search."};
    app.require_subcommand(1);

    std::string input, m_input, certificate_file, format = "csv", output;
    std::optional<double> kappa;
    double rel = 1e-9, abs_tol = 1e-12, target = 1e-8;
    std::uint64_t seed = 0;
    int restarts = 32, max_iters = 2000, m_max = 2, resolution = 0, res_re = 601, res_im = 601;
    bool verbose = false;
    std::vector<double> lambda1{1.0, 0.0}, box{-3.0, 3.0, -3.0, 3.0};

    auto* classify_cmd = app.add_subcommand("classify", "Verdict, constant set and bounds (JSON)");
    classify_cmd->add_option("input", input, "MatrixDocument file, '-' for stdin, or inline JSON")->required();

    auto* apportion_cmd = app.add_subcommand("apportion", "Certificate M, Minv, B at a constant (JSON)");
    apportion_cmd->add_option("input", input, "MatrixDocument")->required();
    apportion_cmd->add_option("--kappa", kappa, "Requested apportionment constant");

    auto* verify_cmd = app.add_subcommand("verify", "Uniformity of M A M^-1 (JSON)");
    verify_cmd->add_option("A", input, "MatrixDocument for A");
    verify_cmd->add_option("M", m_input, "MatrixDocument for M");
    verify_cmd->add_option("--certificate", certificate_file, "Certificate JSON from 'apportion'");
    verify_cmd->add_option("--rel", rel, "Relative tolerance");
    verify_cmd->add_option("--abs", abs_tol, "Absolute tolerance");

    auto* bounds_cmd = app.add_subcommand("bounds", "Trace and determinant lower bounds on kappa (JSON)");
    bounds_cmd->add_option("input", input, "MatrixDocument")->required();

    auto* region_cmd = app.add_subcommand("region", "Admissible second eigenvalues for 2x2 diagonal matrices");
    region_cmd->add_option("--lambda1", lambda1, "First eigenvalue as re im")->expected(2);
    region_cmd->add_option("--box", box, "re_min re_max im_min im_max")->expected(4);
    region_cmd->add_option("--res", resolution, "Grid points per axis (overrides --res-re/--res-im)");
    region_cmd->add_option("--res-re", res_re, "Grid points along the real axis");
    region_cmd->add_option("--res-im", res_im, "Grid points along the imaginary axis");
    region_cmd->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    region_cmd->add_option("-o,--output", output, "Output file (default stdout)");

    auto add_search_flags = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "MatrixDocument")->required();
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--restarts", restarts, "Number of restarts");
        cmd->add_option("--max-iters", max_iters, "Iterations per restart");
        cmd->add_option("--defect-target", target, "Relative max-modulus defect accepted as uniform");
        cmd->add_flag("-v,--verbose", verbose, "Include the per-restart transcript");
    };
    auto* search_cmd = app.add_subcommand("search", "Numerical search for an apportioning M (JSON)");
    add_search_flags(search_cmd);
    auto* sigma_cmd = app.add_subcommand("sigma", "Least m with A ⊕ O_m apportionable, empirically (JSON)");
    add_search_flags(sigma_cmd);
    sigma_cmd->add_option("--m-max", m_max, "Largest padding tried");

    auto* demo_cmd = app.add_subcommand("demo", "Replay the worked constructions and verify them (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    if (classify_cmd->parsed()) {
        emit(to_json(classify_doc(document_from_json(read_json(input)))));
    } else if (apportion_cmd->parsed()) {
        const ApportionCertificate c = certify_doc(document_from_json(read_json(input)), kappa);
        if (!verify_certificate(c)) throw VerificationFailed("certificate failed re-verification");
        emit(to_json(c));
    } else if (verify_cmd->parsed()) {
        Tolerance tol;
        tol.rel = rel;
        tol.abs = abs_tol;
        tol.validate();
        ComplexMatrix A, M;
        if (!certificate_file.empty()) {
            const Json j = read_json(certificate_file);
            if (!j.is_object() || !j.contains("A") || !j.contains("M"))
                throw InvalidInput("certificate: A and M are required");
            A = matrix_from_json(j["A"]);
            M = matrix_from_json(j["M"]);
        } else {
            if (input.empty() || m_input.empty()) throw InvalidInput("verify: A and M, or --certificate, are required");
            A = document_from_json(read_json(input)).matrix();
            M = document_from_json(read_json(m_input)).matrix();
        }
        emit(to_json(is_uniform(similarity_image(M, A), tol)));
    } else if (bounds_cmd->parsed()) {
        const ComplexMatrix A = document_from_json(read_json(input)).matrix();
        require_square(A, "bounds");
        const double t = trace_lower_bound(A), h = hadamard_lower_bound(A);
        emit({{"trace", t}, {"hadamard", h}, {"lower_bound", std::max(t, h)}});
    } else if (region_cmd->parsed()) {
        RegionBox b;
        b.re_min = box[0];
        b.re_max = box[1];
        b.im_min = box[2];
        b.im_max = box[3];
        b.re_steps = resolution ? resolution : res_re;
        b.im_steps = resolution ? resolution : res_im;
        std::vector<RegionSample> samples;
        try {
            samples = admissible_region(Complex(lambda1[0], lambda1[1]), b);
        } catch (const InvalidInput& e) {
            std::cerr << "apportion: error: " << e.what() << '\n';
            return kUnsupported;
        }
        const std::string text = format == "svg" ? region_svg(samples, b) : region_csv(samples);
        if (output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(output);
            if (!(out << text)) throw InvalidInput("cannot write " + output);
        }
    } else if (search_cmd->parsed()) {
        const ComplexMatrix A = document_from_json(read_json(input)).matrix();
        emit(to_json(find_apportioning(A, search_config(seed, restarts, max_iters, target)), verbose));
    } else if (sigma_cmd->parsed()) {
        const MatrixDocument doc = document_from_json(read_json(input));
        const SearchConfig cfg = search_config(seed, restarts, max_iters, target);
        const SigmaReport s = std::holds_alternative<JordanSpec>(doc.content)
                                  ? sigma_estimate(std::get<JordanSpec>(doc.content), m_max, cfg)
                                  : sigma_estimate(std::get<ComplexMatrix>(doc.content), m_max, cfg);
        emit(to_json(s, verbose));
    } else if (demo_cmd->parsed()) {
        const Complex zero(0.0, 0.0), one(1.0, 0.0);
        Json list = Json::array();
        list.push_back(demo_entry("nilpotent J3(0) ⊕ J2(0) at 1/sqrt(3)",
                                  apportion_nilpotent(JordanSpec{{{zero, 3}, {zero, 2}}}, 1.0 / std::sqrt(3.0))));
        list.push_back(demo_entry("I2 ⊕ O2 at 1/2", apportion_I_oplus_O(2, 0.5)));
        list.push_back(demo_entry("J2(1) ⊕ [0] template", apportion_3x3_template(TemplateKind::LambdaJ2PlusZero, one)));
        list.push_back(demo_entry("[1] ⊕ J2(0) template", apportion_3x3_template(TemplateKind::LambdaPlusN2, one)));
        emit(list);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const apportion::ConstantNotAchievable& e) {
        std::cerr << "apportion: " << e.what() << "; K(A) = " << e.constants() << '\n';
        return kKappa;
    } catch (const apportion::NotApportionableError& e) {
        std::cerr << "apportion: " << e.what() << '\n';
        return kNot;
    } catch (const apportion::UnknownVerdictError& e) {
        std::cerr << "apportion: " << e.what() << '\n';
        return kUnknown;
    } catch (const apportion::SingularMatrix& e) {
        std::cerr << "apportion: " << e.what() << " (rcond " << e.rcond() << ")\n";
        return kSingular;
    } catch (const apportion::UnsupportedOrder& e) {
        std::cerr << "apportion: " << e.what() << '\n';
        return kUnsupported;
    } catch (const apportion::BudgetExceeded& e) {
        std::cerr << "apportion: " << e.what() << '\n';
        return kUnsupported;
    } catch (const apportion::OutOfScope& e) {
        std::cerr << "apportion: " << e.what() << '\n';
        return kUnsupported;
    } catch (const apportion::InvalidInput& e) {
        std::cerr << "apportion: error: " << e.what() << '\n';
        return kInput;
    } catch (const apportion::PreconditionViolation& e) {
        std::cerr << "apportion: error: " << e.what() << '\n';
        return kInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "apportion: error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "apportion: internal error: " << e.what() << '\n';
        return 1;
    }
}
