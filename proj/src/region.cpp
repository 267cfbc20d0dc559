#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "apportion/classifier.hpp"
#include "apportion/constructors.hpp"
#include "apportion/errors.hpp"
#include "apportion/parallel.hpp"

namespace apportion {
namespace {

constexpr double kDegenerate = 1e-9;

std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double grid(double lo, double hi, int k, int steps) { return lo + (hi - lo) * k / (steps - 1); }

void validate(const RegionBox& box) {
    if (box.re_steps < 2 || box.im_steps < 2) throw InvalidInput("region: resolution must be >= 2 per axis");
    for (const double v : {box.re_min, box.re_max, box.im_min, box.im_max})
        if (!std::isfinite(v)) throw InvalidInput("region: non-finite box");
    if (!(box.re_min < box.re_max) || !(box.im_min < box.im_max)) throw InvalidInput("region: empty box");
}

}  // namespace

std::vector<RegionSample> admissible_region(Complex lambda1, const RegionBox& box) {
    if (lambda1 == Complex(0.0, 0.0) || !std::isfinite(std::abs(lambda1)))
        throw InvalidInput("region: lambda1 must be nonzero and finite");
    validate(box);
    const auto cols = static_cast<std::size_t>(box.re_steps);
    std::vector<RegionSample> out(cols * static_cast<std::size_t>(box.im_steps));
    parallel_for(static_cast<std::size_t>(box.im_steps), [&](std::size_t row) {
        const double im = grid(box.im_max, box.im_min, static_cast<int>(row), box.im_steps);
        for (std::size_t col = 0; col < cols; ++col) {
            RegionSample& s = out[row * cols + col];
            s.lambda2 = Complex(grid(box.re_min, box.re_max, static_cast<int>(col), box.re_steps), im);
            if (std::abs(s.lambda2) <= kDegenerate || std::abs(s.lambda2 - lambda1) <= kDegenerate) {
                s.mark = RegionMark::Degenerate;
            } else {
                s.mark = polar_condition_2x2(lambda1, s.lambda2) ? RegionMark::Admissible : RegionMark::Inadmissible;
            }
        }
    });
    return out;
}

std::string region_csv(const std::vector<RegionSample>& samples) {
    std::ostringstream os;
    os << "re,im,admissible\n";
    for (const auto& s : samples) {
        os << fmt(s.lambda2.real()) << ',' << fmt(s.lambda2.imag()) << ',';
        switch (s.mark) {
            case RegionMark::Admissible: os << "1\n"; break;
            case RegionMark::Inadmissible: os << "0\n"; break;
            case RegionMark::Degenerate: os << "skip\n"; break;
        }
    }
    return os.str();
}

std::string region_svg(const std::vector<RegionSample>& samples, const RegionBox& box) {
    validate(box);
    const int w = box.re_steps, h = box.im_steps;
    if (samples.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
        throw InvalidInput("region_svg: sample count does not match the box");
    const int cell = std::max(1, 600 / std::max(w, h));
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * cell << "\" height=\"" << h * cell
       << "\" viewBox=\"0 0 " << w * cell << ' ' << h * cell << "\" shape-rendering=\"crispEdges\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    // One rect per horizontal run of admissible cells.
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w;) {
            if (samples[static_cast<std::size_t>(row * w + col)].mark != RegionMark::Admissible) {
                ++col;
                continue;
            }
            int end = col;
            while (end < w && samples[static_cast<std::size_t>(row * w + end)].mark == RegionMark::Admissible) ++end;
            os << "<rect x=\"" << col * cell << "\" y=\"" << row * cell << "\" width=\"" << (end - col) * cell
               << "\" height=\"" << cell << "\" fill=\"#4a7ab5\"/>\n";
            col = end;
        }
    }
    // Axes through re = 0 and im = 0 when they fall inside the box.
    const double px = (0.0 - box.re_min) / (box.re_max - box.re_min) * (w - 1) * cell + cell / 2.0;
    const double py = (box.im_max - 0.0) / (box.im_max - box.im_min) * (h - 1) * cell + cell / 2.0;
    if (box.re_min <= 0.0 && 0.0 <= box.re_max)
        os << "<line x1=\"" << fmt(px) << "\" y1=\"0\" x2=\"" << fmt(px) << "\" y2=\"" << h * cell
           << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    if (box.im_min <= 0.0 && 0.0 <= box.im_max)
        os << "<line x1=\"0\" y1=\"" << fmt(py) << "\" x2=\"" << w * cell << "\" y2=\"" << fmt(py)
           << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace apportion
